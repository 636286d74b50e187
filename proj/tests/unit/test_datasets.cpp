#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace dpdlogit;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("bundled datasets") {
  struct Expect {
    const char* name;
    Eigen::Index n, k;
    std::vector<long> outliers;
  };
  const std::vector<Expect> expected = {
      {"vasoconstriction", 39, 2, {4, 18}},
      {"lymphatic_cancer", 53, 5, {24}},
      {"leukemia", 33, 2, {17}},
  };
  CHECK(bundled_names().size() == expected.size());
  for (const Expect& e : expected) {
    INFO(e.name);
    const NamedDataset ds = load_bundled(e.name);
    CHECK(ds.name == e.name);
    CHECK(ds.data.n() == e.n);
    CHECK(ds.data.k() == e.k);
    CHECK(static_cast<Eigen::Index>(ds.covariate_names.size()) == e.k);
    CHECK(ds.outlier_indices == e.outliers);
    CHECK_FALSE(ds.source.empty());
    CHECK(ds.data.x().col(0).isOnes());
    CHECK_NOTHROW(ds.data.require_estimable());
  }
  CHECK_THROWS_AS(load_bundled("iris"), UnknownDataset);
  CHECK_THROWS_WITH(load_bundled("iris"), ContainsSubstring("leukemia"));
}

TEST_CASE("bundled text matches the data directory") {
  for (const std::string& name : bundled_names()) {
    INFO(name);
    const std::string disk = read_file(std::string(DPDLOGIT_DATA_DIR) + "/" + name + ".csv");
    REQUIRE_FALSE(disk.empty());
    CHECK(bundled_source(name) == disk);
  }
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("vasoconstriction is on the log scale") {
  const NamedDataset ds = load_bundled("vasoconstriction");
  // First published row: volume 3.7, rate 0.825, response 1.
  CHECK(ds.data.x()(0, 1) == std::log(3.7));
  CHECK(ds.data.x()(0, 2) == std::log(0.825));
  CHECK(ds.data.y()(0) == 1.0);
}

TEST_CASE("dropping rows") {
  const NamedDataset ds = load_bundled("vasoconstriction");
  const NamedDataset same = drop_rows(ds, {});
  CHECK(same.data.x() == ds.data.x());
  CHECK(same.outlier_indices == ds.outlier_indices);

  const NamedDataset less = drop_rows(ds, {4, 18});
  CHECK(less.data.n() == 37);
  CHECK(less.outlier_indices.empty());
  CHECK(less.data.x().row(3) == ds.data.x().row(4));
  CHECK(less.data.x().row(16) == ds.data.x().row(18));

  const NamedDataset one = drop_rows(ds, {1});
  CHECK(one.outlier_indices == std::vector<long>{3, 17});

  CHECK_THROWS_AS(drop_rows(ds, {0}), IndexOutOfRange);
  CHECK_THROWS_AS(drop_rows(ds, {40}), IndexOutOfRange);
  CHECK_THROWS_AS(drop_rows(ds, {3, 3}), InvalidArgument);
}

TEST_CASE("CSV parsing") {
  const CsvTable b = parse_csv("y,a,b\n1,0.5,2\n0,1.5,-1\n1,2,0\n0,3,4\n", CsvFormat::kAuto);
  REQUIRE(std::holds_alternative<Dataset>(b.data));
  const Dataset& d = std::get<Dataset>(b.data);
  CHECK(d.n() == 4);
  CHECK(d.k() == 2);
  CHECK(d.x()(1, 1) == 1.5);
  CHECK(b.header == std::vector<std::string>{"y", "a", "b"});

  const CsvTable g = parse_csv("trials,successes,x\n5,2,0\n4,4,1\n3,0,2\n", CsvFormat::kAuto);
  REQUIRE(std::holds_alternative<GroupedDataset>(g.data));
  CHECK(std::get<GroupedDataset>(g.data).total_trials() == 12.0);

  try {
    parse_csv("y,a\n1,0.5\n0,abc\n", CsvFormat::kAuto, "demo.csv");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 2);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("demo.csv"));
  }
  try {
    parse_csv("y,a\n1,0.5\n0\n", CsvFormat::kAuto);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_csv("", CsvFormat::kAuto), ParseError);
  CHECK_THROWS_AS(parse_csv("z,a\n1,2\n", CsvFormat::kAuto), ParseError);
  CHECK_THROWS_AS(parse_csv("y,a\n1,2\n", CsvFormat::kGrouped), ParseError);
  CHECK_THROWS_AS(parse_csv("y,a\n1,inf\n0,1\n1,2\n", CsvFormat::kAuto), ParseError);
  CHECK_THROWS_AS(parse_csv("y,a\n2,1\n0,2\n1,3\n", CsvFormat::kAuto), InvariantViolation);

  try {
    parse_csv("trials,successes,x\n5,2,0\n4,6,1\n3,0,2\n", CsvFormat::kAuto, "g.csv");
    FAIL("no error");
  } catch (const InvariantViolation& e) {
    CHECK_THAT(std::string(e.what()), ContainsSubstring("g.csv"));
    CHECK_THAT(std::string(e.what()), ContainsSubstring("row 2"));
  }
}

TEST_CASE("CSV round trip") {
  std::mt19937_64 gen(3);
  const Dataset d = testing_support::random_dataset(gen, 25, 3, Vector{{0.2, -1.0, 0.5, 1.0}});
  std::ostringstream out;
  write_csv(out, d);
  const CsvTable back = parse_csv(out.str(), CsvFormat::kBernoulli);
  CHECK(std::get<Dataset>(back.data).x() == d.x());
  CHECK(std::get<Dataset>(back.data).y() == d.y());
  CHECK(back.header[1] == "x1");

  const GroupedDataset g = GroupedDataset::from_bernoulli(d);
  std::ostringstream gout;
  write_csv(gout, g, {"a", "b", "c"});
  const CsvTable gback = parse_csv(gout.str(), CsvFormat::kGrouped);
  const GroupedDataset& g2 = std::get<GroupedDataset>(gback.data);
  CHECK(g2.x() == g.x());
  CHECK(g2.trials() == g.trials());
  CHECK(g2.successes() == g.successes());
  CHECK(gback.header[2] == "a");

  std::ostringstream bad;
  CHECK_THROWS_AS(write_csv(bad, d, {"only"}), DimensionMismatch);
  CHECK_THROWS_WITH(load_csv("/nonexistent/file.csv"), ContainsSubstring("/nonexistent/file.csv"));
}
