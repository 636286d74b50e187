#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace dpdlogit::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string render(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  if (const long* l = std::get_if<long>(&c)) return std::to_string(*l);
  return std::get<std::string>(c);
}

}  // namespace

void print_table(std::ostream& out, const Table& t) {
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
  for (const auto& row : t.rows) {
    auto& line = text.emplace_back();
    for (std::size_t j = 0; j < row.size(); ++j) {
      line.push_back(render(row[j]));
      width[j] = std::max(width[j], line.back().size());
    }
  }
  if (!t.title.empty()) out << "# " << t.title << "\n";
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j) out << "  ";
      out << std::string(width[j] - cells[j].size(), ' ') << cells[j];
    }
    out << "\n";
  };
  emit(t.columns);
  for (const auto& line : text) emit(line);
}

void print_report(std::ostream& out, const Report& r, Format format) {
  if (format == Format::kJson) {
    out << r.json.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < r.tables.size(); ++i) {
    if (i) out << "\n";
    print_table(out, r.tables[i]);
  }
}

Json to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace dpdlogit::cli
