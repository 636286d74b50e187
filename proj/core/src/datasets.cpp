#include "dpdlogit/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "bundled_data.hpp"

namespace dpdlogit {
namespace {

struct RawRow {
  std::size_t line;
  std::vector<std::string> fields;
};

struct RawTable {
  std::vector<std::string> header;
  std::vector<RawRow> rows;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

RawTable read_table(const std::string& text, const std::string& origin) {
  RawTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split(line);
    if (t.header.empty()) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c].empty()) {
          throw ParseError(origin + ": empty header field", line_no, c + 1);
        }
      }
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError(origin + ": expected " + std::to_string(t.header.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       line_no, std::min(fields.size(), t.header.size()) + 1);
    }
    t.rows.push_back({line_no, std::move(fields)});
  }
  if (t.header.empty()) throw ParseError(origin + ": missing header row", 1, 1);
  if (t.rows.empty()) throw ParseError(origin + ": no data rows", line_no + 1, 1);
  return t;
}

double to_number(const RawRow& row, std::size_t col, const std::string& origin) {
  const std::string& f = row.fields[col];
  double v = 0.0;
  const char* end = f.data() + f.size();
  const auto res = std::from_chars(f.data(), end, v);
  if (f.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError(origin + ": '" + f + "' is not a number", row.line, col + 1);
  }
  if (!std::isfinite(v)) {
    throw ParseError(origin + ": non-finite value '" + f + "'", row.line, col + 1);
  }
  return v;
}

std::string row_label(const std::string& origin, std::size_t data_row,
                      std::size_t line) {
  return origin + ": row " + std::to_string(data_row) + " (line " +
         std::to_string(line) + ")";
}

void require_full_rank(const Matrix& x, const std::string& origin) {
  if (x.rows() >= x.cols() && numeric_rank(x) < x.cols()) {
    throw InvariantViolation(origin + ": design matrix is rank deficient");
  }
  if (x.rows() < x.cols()) {
    throw InvariantViolation(origin + ": fewer rows than coefficients");
  }
}

CsvTable build_bernoulli(const RawTable& t, const std::string& origin) {
  const std::size_t n = t.rows.size();
  const std::size_t k = t.header.size() - 1;
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1));
  Vector y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const RawRow& r = t.rows[i];
    const auto ii = static_cast<Eigen::Index>(i);
    const double yi = to_number(r, 0, origin);
    if (yi != 0.0 && yi != 1.0) {
      throw InvariantViolation(row_label(origin, i + 1, r.line) +
                               ": response must be 0 or 1");
    }
    y(ii) = yi;
    x(ii, 0) = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
      x(ii, static_cast<Eigen::Index>(j)) = to_number(r, j, origin);
    }
  }
  require_full_rank(x, origin);
  return {t.header, Dataset(std::move(x), std::move(y))};
}

CsvTable build_grouped(const RawTable& t, const std::string& origin) {
  constexpr double kMaxCount = 9007199254740992.0;  // 2^53
  const std::size_t n = t.rows.size();
  const std::size_t k = t.header.size() - 2;
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1));
  Vector trials(static_cast<Eigen::Index>(n));
  Vector successes(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const RawRow& r = t.rows[i];
    const auto ii = static_cast<Eigen::Index>(i);
    const double ti = to_number(r, 0, origin);
    const double si = to_number(r, 1, origin);
    const std::string where = row_label(origin, i + 1, r.line);
    if (ti > kMaxCount || si > kMaxCount) {
      throw InvariantViolation(where + ": count exceeds 2^53");
    }
    if (ti < 1.0 || std::floor(ti) != ti) {
      throw InvariantViolation(where + ": trials must be a positive integer");
    }
    if (si < 0.0 || std::floor(si) != si || si > ti) {
      throw InvariantViolation(where + ": successes must be an integer in [0, trials]");
    }
    trials(ii) = ti;
    successes(ii) = si;
    x(ii, 0) = 1.0;
    for (std::size_t j = 2; j < k + 2; ++j) {
      x(ii, static_cast<Eigen::Index>(j - 1)) = to_number(r, j, origin);
    }
  }
  require_full_rank(x, origin);
  return {t.header, GroupedDataset(std::move(x), std::move(trials), std::move(successes))};
}

void write_number(std::ostream& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

void write_covariates(std::ostream& out, const Matrix& x, Eigen::Index i) {
  for (Eigen::Index j = 1; j < x.cols(); ++j) {
    out << ',';
    write_number(out, x(i, j));
  }
}

void write_names(std::ostream& out, Eigen::Index k, const std::vector<std::string>& names) {
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != k) {
    throw DimensionMismatch("need one name per covariate");
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    out << ',' << (names.empty() ? "x" + std::to_string(j + 1) : names[j]);
  }
  out << '\n';
}

// Bundled sources keep the published columns; these turn them into model
// form.
using Builder = std::function<NamedDataset(const RawTable&, const std::string&)>;

Dataset design_from(const std::vector<std::vector<double>>& cols, const Vector& y) {
  Matrix x(y.size(), static_cast<Eigen::Index>(cols.size() + 1));
  x.col(0).setOnes();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    x.col(static_cast<Eigen::Index>(j + 1)) =
        Eigen::Map<const Vector>(cols[j].data(), y.size());
  }
  Dataset d(std::move(x), y);
  d.require_estimable();
  return d;
}

NamedDataset build_vasoconstriction(const RawTable& t, const std::string& origin) {
  std::vector<std::vector<double>> cols(2);
  Vector y(static_cast<Eigen::Index>(t.rows.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    cols[0].push_back(std::log(to_number(t.rows[i], 0, origin)));
    cols[1].push_back(std::log(to_number(t.rows[i], 1, origin)));
    y(static_cast<Eigen::Index>(i)) = to_number(t.rows[i], 2, origin);
  }
  return {"vasoconstriction",
          design_from(cols, y),
          {"log_volume", "log_rate"},
          "Finney (1947), Biometrika 34, 320-334: occurrence of reflex "
          "vasoconstriction in the skin of the digits against inspired air volume "
          "and rate; 39 trials on 3 subjects, in the published order (also "
          "distributed as robustbase::vaso in R).",
          {4, 18}};
}

NamedDataset build_lymphatic(const RawTable& t, const std::string& origin) {
  // Published columns: age, acid, xray, size, grade, nodes. Model order puts
  // the three binary covariates first.
  std::vector<std::vector<double>> cols(5);
  Vector y(static_cast<Eigen::Index>(t.rows.size()));
  const std::size_t order[5] = {2, 3, 4, 0, 1};
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      cols[j].push_back(to_number(t.rows[i], order[j], origin));
    }
    y(static_cast<Eigen::Index>(i)) = to_number(t.rows[i], 5, origin);
  }
  return {"lymphatic_cancer",
          design_from(cols, y),
          {"xray", "size", "grade", "age", "acid"},
          "Brown (1980), in Biostatistics Casebook, Wiley, 3-12: nodal involvement "
          "in 53 prostate cancer patients with X-ray finding, tumour size by "
          "palpation, pathological grade, age at diagnosis and serum acid "
          "phosphatase level (transcribed from the published listing).",
          {24}};
}

NamedDataset build_leukemia(const RawTable& t, const std::string& origin) {
  std::vector<std::vector<double>> cols(2);
  Vector y(static_cast<Eigen::Index>(t.rows.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const RawRow& r = t.rows[i];
    cols[0].push_back(to_number(r, 0, origin));
    const std::string& ag = r.fields[1];
    if (ag != "present" && ag != "absent") {
      throw ParseError(origin + ": ag must be present or absent", r.line, 2);
    }
    cols[1].push_back(ag == "present" ? 1.0 : 0.0);
    y(static_cast<Eigen::Index>(i)) = to_number(r, 2, origin) > 52.0 ? 1.0 : 0.0;
  }
  return {"leukemia",
          design_from(cols, y),
          {"wbc", "ag"},
          "Feigl and Zelen (1965), Biometrics 21, 826-838, as analysed by Cook and "
          "Weisberg (1982): 33 leukaemia patients with white blood cell count and "
          "AG factor (present = 1); response is survival beyond 52 weeks. Row "
          "order follows MASS::leuk in R.",
          {17}};
}

const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> m = {
      {"vasoconstriction", build_vasoconstriction},
      {"lymphatic_cancer", build_lymphatic},
      {"leukemia", build_leukemia},
  };
  return m;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<std::string> bundled_names() {
  std::vector<std::string> out;
  for (const auto& f : detail::bundled_files()) out.emplace_back(f.name);
  return out;
}

const std::string& bundled_source(const std::string& name) {
  static const std::map<std::string, std::string> verified = [] {
    std::map<std::string, std::string> m;
    for (const auto& f : detail::bundled_files()) {
      std::string text(f.text);
      if (fnv1a(text) != f.checksum) {
        throw InvariantViolation(std::string("bundled dataset ") + f.name +
                                 " failed its checksum");
      }
      m.emplace(f.name, std::move(text));
    }
    return m;
  }();
  const auto it = verified.find(name);
  if (it == verified.end()) {
    std::string known;
    for (const auto& n : bundled_names()) known += (known.empty() ? "" : ", ") + n;
    throw UnknownDataset("unknown dataset '" + name + "' (available: " + known + ")");
  }
  return it->second;
}

NamedDataset load_bundled(const std::string& name) {
  const std::string& text = bundled_source(name);
  const std::string origin = "bundled:" + name;
  return builders().at(name)(read_table(text, origin), origin);
}

NamedDataset drop_rows(const NamedDataset& ds, const std::vector<long>& indices) {
  const long n = static_cast<long>(ds.data.n());
  std::set<long> drop;
  for (long idx : indices) {
    if (idx < 1 || idx > n) {
      throw IndexOutOfRange("row " + std::to_string(idx) + " is outside 1.." +
                            std::to_string(n));
    }
    if (!drop.insert(idx).second) {
      throw InvalidArgument("row " + std::to_string(idx) + " listed twice");
    }
  }
  if (drop.empty()) return ds;
  const long kept = n - static_cast<long>(drop.size());
  if (kept < 1) throw InvalidArgument("cannot drop every row");
  Matrix x(kept, ds.data.dim());
  Vector y(kept);
  std::vector<long> new_index(static_cast<std::size_t>(n) + 1, 0);
  long out = 0;
  for (long i = 1; i <= n; ++i) {
    if (drop.count(i)) continue;
    x.row(out) = ds.data.x().row(i - 1);
    y(out) = ds.data.y()(i - 1);
    new_index[static_cast<std::size_t>(i)] = ++out;
  }
  NamedDataset result{ds.name, Dataset(std::move(x), std::move(y)), ds.covariate_names,
                      ds.source, {}};
  for (long o : ds.outlier_indices) {
    if (o >= 1 && o <= n && new_index[static_cast<std::size_t>(o)] > 0) {
      result.outlier_indices.push_back(new_index[static_cast<std::size_t>(o)]);
    }
  }
  return result;
}

CsvTable parse_csv(const std::string& text, CsvFormat format, const std::string& origin) {
  const RawTable t = read_table(text, origin);
  const bool grouped_header =
      t.header.size() >= 2 && t.header[0] == "trials" && t.header[1] == "successes";
  const bool bernoulli_header = !t.header.empty() && t.header[0] == "y";
  if (format == CsvFormat::kAuto) {
    if (grouped_header) return build_grouped(t, origin);
    if (bernoulli_header) return build_bernoulli(t, origin);
    throw ParseError(origin + ": header must start with 'y' or 'trials,successes'", 1, 1);
  }
  if (format == CsvFormat::kGrouped) {
    if (!grouped_header) {
      throw ParseError(origin + ": grouped header must start with 'trials,successes'", 1,
                       1);
    }
    return build_grouped(t, origin);
  }
  if (!bernoulli_header) {
    throw ParseError(origin + ": Bernoulli header must start with 'y'", 1, 1);
  }
  return build_bernoulli(t, origin);
}

CsvTable load_csv(const std::string& path, CsvFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read data file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), format, path);
}

void write_csv(std::ostream& out, const Dataset& data,
               const std::vector<std::string>& covariate_names) {
  out << 'y';
  write_names(out, data.k(), covariate_names);
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    write_number(out, data.y()(i));
    write_covariates(out, data.x(), i);
    out << '\n';
  }
}

void write_csv(std::ostream& out, const GroupedDataset& data,
               const std::vector<std::string>& covariate_names) {
  out << "trials,successes";
  write_names(out, data.k(), covariate_names);
  for (Eigen::Index i = 0; i < data.groups(); ++i) {
    write_number(out, data.trials()(i));
    out << ',';
    write_number(out, data.successes()(i));
    write_covariates(out, data.x(), i);
    out << '\n';
  }
}

}  // namespace dpdlogit
