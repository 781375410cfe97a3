#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace elmkit {

using VarIndex = std::uint32_t;

/// Natural ordering of identifiers: runs of digits compare numerically,
/// everything else compares character by character ("p2" < "p10" < "q1").
bool natural_less(std::string_view a, std::string_view b);

/// Bidirectional name <-> dense index map for one problem instance.
class VariableTable {
public:
  VariableTable() = default;

  /// Builds a table whose indices follow the natural order of `names`.
  /// Duplicates are collapsed.
  static VariableTable from_names(std::vector<std::string> names);

  /// Returns the index of `name`, appending it if unseen.
  VarIndex intern(std::string_view name);

  std::optional<VarIndex> find(std::string_view name) const;
  const std::string &name(VarIndex index) const { return names_.at(index); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  /// True if indices already follow natural name order.
  bool is_naturally_ordered() const;

  friend bool operator==(const VariableTable &a, const VariableTable &b) {
    return a.names_ == b.names_;
  }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarIndex> index_;
};

} // namespace elmkit
