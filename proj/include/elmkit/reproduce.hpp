#pragma once

#include <string>
#include <vector>

#include "elmkit/spectrum.hpp"

namespace elmkit {

/// One compared value of a published landscape table.
struct TableCell {
  std::string table;    ///< "toy", "841", "551-weights", ...
  std::string row;      ///< Hamiltonian label or equation number
  std::string column;
  std::string published;
  std::string computed;
  bool asserted = true; ///< false: reported only, mismatch is not fatal
  bool match = false;
};

struct ReproductionResult {
  std::vector<TableCell> cells;
  std::vector<std::string> notes;

  /// True iff every asserted cell matches.
  bool ok() const;
  std::size_t mismatches(bool asserted_only) const;
};

struct ReproductionOptions {
  std::string data_dir;
  std::size_t workers = 0;
};

/// Rebuilds the toy, 841 and 551 landscapes and the 551 weight table from
/// the data files in options.data_dir (toy.eqs, 841.eqs, 841.deductions,
/// 551.eqs) and compares them with the published values. Malformed data
/// files propagate as exceptions.
ReproductionResult reproduce_tables(const ReproductionOptions &options);

/// Fixed-width text rendering, one line per cell plus a summary.
std::string format_reproduction(const ReproductionResult &result);

} // namespace elmkit
