#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dpdlogit/model.hpp"

namespace dpdlogit {

struct NamedDataset {
  std::string name;
  Dataset data;
  std::vector<std::string> covariate_names;
  std::string source;
  /// Influential observations, 1-based row numbers of `data`.
  std::vector<long> outlier_indices;
};

/// Names accepted by load_bundled.
std::vector<std::string> bundled_names();

/// vasoconstriction, lymphatic_cancer or leukemia. Throws UnknownDataset.
NamedDataset load_bundled(const std::string& name);

/// Raw text of a bundled source file, checked against its stored checksum.
const std::string& bundled_source(const std::string& name);

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a(const std::string& text);

/// Removes the given 1-based rows. Outlier indices are renumbered and those
/// removed are dropped. Throws IndexOutOfRange.
NamedDataset drop_rows(const NamedDataset& ds, const std::vector<long>& indices);

enum class CsvFormat {
  /// Header y,x1,...,xk.
  kBernoulli,
  /// Header trials,successes,x1,...,xk.
  kGrouped,
  /// Decided by the first header field.
  kAuto,
};

using AnyDataset = std::variant<Dataset, GroupedDataset>;

struct CsvTable {
  std::vector<std::string> header;
  AnyDataset data;
};

/// Parses CSV text; `origin` names the source in error messages. The
/// intercept column is added automatically. Throws ParseError for malformed
/// input and InvariantViolation for values breaking the model constraints.
CsvTable parse_csv(const std::string& text, CsvFormat format,
                   const std::string& origin = "<input>");

/// Reads `path`; throws InvalidArgument naming the path if it cannot be read.
CsvTable load_csv(const std::string& path, CsvFormat format = CsvFormat::kAuto);

/// Writes the CSV form read by load_csv; the intercept column is omitted.
/// Covariate names default to x1..xk.
void write_csv(std::ostream& out, const Dataset& data,
               const std::vector<std::string>& covariate_names = {});
void write_csv(std::ostream& out, const GroupedDataset& data,
               const std::vector<std::string>& covariate_names = {});

}  // namespace dpdlogit
