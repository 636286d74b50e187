#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "cli/cli.hpp"
#include "json.hpp"
#include "support.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dpdlogit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const Run r = run(args);
  INFO(r.err);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

// Body rows of the table titled `title`.
std::vector<std::vector<std::string>> table_rows(const std::string& text,
                                                 const std::string& title) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool inside = false, header = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      inside = false;
      continue;
    }
    if (line[0] == '#') {
      inside = line == "# " + title;
      header = inside;
      continue;
    }
    if (!inside) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream fields(line);
    std::vector<std::string> row;
    std::string f;
    while (fields >> f) row.push_back(f);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"fit", "--lambda", "abc", "--data", "leukemia"}).code == 2);
  CHECK(run({"fit", "--data", "leukemia", "--csv", "x.csv"}).code == 2);
  CHECK(run({"fit", "--data", "nothing"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const Run missing = run({"fit", "--csv", "/no/such/dir/data.csv"});
  CHECK(missing.code == 2);
  CHECK_THAT(missing.err, ContainsSubstring("/no/such/dir/data.csv"));

  const Run redundant = run({"test", "--data", "leukemia", "--hyp", "b1=0,2*b1=0"});
  CHECK(redundant.code == 2);
  CHECK_THAT(redundant.err, ContainsSubstring("constraint 2"));

  CHECK(run({"power", "--beta0", "0,1,1", "--hyp", "b1=0", "--beta-star", "0,1,1", "--d",
             "0,1,1"})
            .code == 2);
}

TEST_CASE("fit over a grid") {
  const Json j = run_json({"fit", "--data", "vasoconstriction", "--lambda", "0,0.1,0.5,0.8"});
  REQUIRE(j["fits"].size() == 4);
  CHECK(j["sample_size"] == 39);
  CHECK(j["errors"].empty());

  // The lambda = 1 fit has no finite minimizer; the rest of the grid is kept.
  const Run partial =
      run({"--format", "json", "fit", "--data", "vasoconstriction", "--lambda", "0,1,0.5"});
  CHECK(partial.code == 3);
  const Json p = Json::parse(partial.out);
  CHECK(p["fits"].size() == 2);
  CHECK(p["errors"].size() == 1);

  const Run table = run({"fit", "--data", "vasoconstriction", "--lambda", "0,0.1,0.5,0.8"});
  CHECK(table.code == 0);
  CHECK(table_rows(table.out, "coefficients").size() == 12);
  CHECK(table_rows(table.out, "diagnostics").size() == 4);
}

TEST_CASE("fit matches the library") {
  const Json j = run_json({"fit", "--data", "leukemia", "--lambda", "0.5"});
  const dpdlogit::FitResult r =
      dpdlogit::fit_mdpde(dpdlogit::load_bundled("leukemia").data, dpdlogit::TuningParameter(0.5));
  const Json beta = j["fits"][0]["beta"];
  for (int i = 0; i < 3; ++i) CHECK_THAT(beta[i].get<double>(), WithinRel(r.beta_hat(i), 1e-12));
}

TEST_CASE("test command") {
  const Json leuk = run_json({"test", "--data", "leukemia", "--hyp", "b1=0,b2=0"});
  CHECK_THAT(leuk["tests"][0]["p_value"].get<double>(), WithinAbs(0.0226, 5e-4));
  CHECK(leuk["tests"][0]["df"] == 2);

  const Json lymph = run_json({"test", "--data", "lymphatic_cancer", "--drop", "24", "--hyp",
                               "b2=0", "--lambda", "0"});
  CHECK_THAT(lymph["tests"][0]["p_value"].get<double>(), WithinAbs(0.0724, 5e-4));

  // Table and JSON give the same numbers at table precision.
  const Run t = run({"test", "--data", "leukemia", "--hyp", "b1=0,b2=0", "--lambda", "0,1"});
  REQUIRE(t.code == 0);
  const auto rows = table_rows(t.out, "wald tests");
  const Json j =
      run_json({"test", "--data", "leukemia", "--hyp", "b1=0,b2=0", "--lambda", "0,1"});
  REQUIRE(rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const double stat = j["tests"][i]["statistic"].get<double>();
    CHECK_THAT(std::stod(rows[i][1]), WithinRel(stat, 1e-5));
  }
}

TEST_CASE("separation exit code") {
  const Run r = run({"fit", "--data", "vasoconstriction", "--drop", "4,18", "--lambda", "1"});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("influence surfaces") {
  auto max_norm = [](const Json& j, bool corner_only) {
    double best = 0.0;
    for (const Json& p : j["points"]) {
      const bool corner = p["x_t"][1] == 4.0 && p["x_t"][2] == 4.0;
      if (corner_only == corner) best = std::max(best, p["norm"].get<double>());
    }
    return best;
  };
  const std::vector<std::string> grid = {"influence", "--beta0", "0,1,1", "--y-t", "0",
                                         "--x1", "-4:4:9", "--x2", "-4:4:9", "--lambda"};
  std::vector<std::string> a = grid, b = grid;
  a.push_back("0");
  b.push_back("1");
  const Json l0 = run_json(a);
  const Json l1 = run_json(b);
  CHECK(l0["points"].size() == 81);
  CHECK(max_norm(l0, true) > max_norm(l0, false));
  CHECK(max_norm(l1, true) < max_norm(l1, false));

  const Json single = run_json({"influence", "--beta0", "0,1,1", "--x1", "1:1:1", "--x2",
                                "2:2:1"});
  CHECK(single["points"].size() == 1);

  const Json if2 = run_json({"influence", "--quantity", "if2", "--beta0", "0,1,1", "--hyp",
                             "b1=1,b2=1", "--x1", "-2:2:3", "--x2", "0:0:1"});
  for (const Json& p : if2["points"]) CHECK(p["if2"].get<double>() >= 0.0);
}

TEST_CASE("power commands") {
  const Json flat = run_json({"power", "--beta0", "0,1,1", "--hyp", "b1=1,b2=1", "--d", "0,0,0"});
  CHECK_THAT(flat["results"][0]["power"].get<double>(), WithinAbs(0.05, 1e-12));

  auto sweep = [](const char* lambda) {
    return run_json({"power", "--beta0", "0,1,1", "--hyp", "b1=1,b2=1", "--d", "0,1,1",
                     "--epsilon", "0,0.05,0.1", "--x-t", "5,5", "--y-t", "0", "--lambda",
                     lambda});
  };
  const Json s0 = sweep("0"), s1 = sweep("1");
  const double shift0 =
      s0["results"][2]["power"].get<double>() - s0["results"][0]["power"].get<double>();
  const double shift1 =
      s1["results"][2]["power"].get<double>() - s1["results"][0]["power"].get<double>();
  CHECK(std::abs(shift1) < std::abs(shift0));

  const Json fixed = run_json({"power", "--hyp", "b1=1,b2=1",
                               "--beta-star", "0,1.2,1.2", "--n", "50,100,200"});
  double prev = 0.0;
  for (const Json& r : fixed["results"]) {
    CHECK(r["power"].get<double>() > prev);
    prev = r["power"].get<double>();
  }

  const Json ss = run_json({"samplesize", "--hyp", "b1=1,b2=1",
                            "--beta-star", "0,1.2,1.2"});
  CHECK(ss["power_at_n"].get<double>() >= 0.8);
  CHECK(ss["power_at_n_minus_1"].get<double>() < 0.8);
}

TEST_CASE("simulate is reproducible") {
  const std::vector<std::string> args = {"simulate", "--mode", "level", "--n", "40",
                                         "--reps", "40", "--seed", "11"};
  std::vector<std::string> one = args, four = args;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const Json a = run_json(one), b = run_json(four);
  CHECK(a["cells"] == b["cells"]);
  CHECK(a["cells"].size() == 4);

  const Run fail = run({"simulate", "--mode", "level", "--n", "4", "--reps", "30"});
  CHECK(fail.code == 5);
}
