#include "elmkit/variables.hpp"

#include <algorithm>
#include <cctype>

namespace elmkit {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

} // namespace

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && is_digit(a[ie]))
        ++ie;
      while (je < b.size() && is_digit(b[je]))
        ++je;
      // compare digit runs numerically without converting: strip leading
      // zeros, then longer is larger, then lexicographic
      std::string_view ra = a.substr(i, ie - i), rb = b.substr(j, je - j);
      auto strip = [](std::string_view s) {
        std::size_t k = 0;
        while (k + 1 < s.size() && s[k] == '0')
          ++k;
        return s.substr(k);
      };
      std::string_view sa = strip(ra), sb = strip(rb);
      if (sa.size() != sb.size())
        return sa.size() < sb.size();
      if (sa != sb)
        return sa < sb;
      if (ra.size() != rb.size())
        return ra.size() < rb.size();
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j])
      return a[i] < b[j];
    ++i;
    ++j;
  }
  return (a.size() - i) < (b.size() - j);
}

VariableTable VariableTable::from_names(std::vector<std::string> names) {
  std::sort(names.begin(), names.end(), [](const auto &x, const auto &y) {
    return natural_less(x, y);
  });
  names.erase(std::unique(names.begin(), names.end()), names.end());
  VariableTable table;
  for (auto &n : names)
    table.intern(n);
  return table;
}

VarIndex VariableTable::intern(std::string_view name) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end())
    return it->second;
  auto index = static_cast<VarIndex>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), index);
  return index;
}

std::optional<VarIndex> VariableTable::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end())
    return it->second;
  return std::nullopt;
}

bool VariableTable::is_naturally_ordered() const {
  for (std::size_t i = 1; i < names_.size(); ++i)
    if (!natural_less(names_[i - 1], names_[i]))
      return false;
  return true;
}

} // namespace elmkit
