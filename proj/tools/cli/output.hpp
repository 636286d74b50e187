#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace dpdlogit::cli {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, long, std::string>;

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { kTable, kJson };

/// What a command produced: the JSON document and the same numbers as tables.
struct Report {
  Json json;
  std::vector<Table> tables;
};

/// Six significant digits, as printed in table mode.
std::string format_number(double v);

void print_table(std::ostream& out, const Table& t);
void print_report(std::ostream& out, const Report& r, Format format);

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::MatrixXd& m);

}  // namespace dpdlogit::cli
