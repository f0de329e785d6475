#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using kgheun::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("kgheun_test_" + name);
}

}  // namespace

TEST_CASE("cli list") {
  const auto all = cli({"list"});
  CHECK(all.code == 0);
  const auto rows = csv_rows(all.out);
  CHECK(rows.size() == 16);
  CHECK(csv_rows(cli({"list", "--canonical"}).out).size() == 10);
  CHECK(all.out.find("conditionally solvable: ₁F₁") != std::string::npos);
  const auto j = json::parse(cli({"list", "--format", "json"}).out);
  CHECK(j.size() == 15);
}

TEST_CASE("cli eval") {
  const auto nine = cli({"eval", "--row", "9", "--V0", "0.1", "--V1", "0.2", "--V2", "0.3", "--grid", "-5", "5", "21"});
  REQUIRE(nine.code == 0);
  const auto rows = csv_rows(nine.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "re_z", "im_z", "re_V", "im_V", "status"});
  REQUIRE(rows.size() == 22);
  double prev = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][3]);
    CHECK(v < prev);
    CHECK(v < 0.6);
    CHECK(v > 0.1);
    prev = v;
  }

  const auto four = cli({"eval", "--row", "4", "--V0", "0.1", "--V1", "0.2", "--x0", "0.5", "--grid", "0", "1", "11"});
  const auto r4 = csv_rows(four.out);
  CHECK(std::abs(std::stod(r4[6][3]) - 0.3) < 1e-15);

  const auto five = cli({"eval", "--row", "5", "--grid", "0.5", "1.5", "5"});
  CHECK(five.code == 0);
  const auto r5 = csv_rows(five.out);
  CHECK(r5[3][0] == "1");
  CHECK(r5[3].back() == "pole");
  CHECK(r5[4].back() == "ok");
}

TEST_CASE("cli solve") {
  const auto free = cli({"solve", "--family", "0", "0", "--E", "0.8", "--branch", "+--", "--x0", "0.3", "--grid", "0.35",
                         "1.25", "10"});
  REQUIRE(free.code == 0);
  const auto rows = csv_rows(free.out);
  CHECK(rows[0] == std::vector<std::string>{"re_x", "im_x", "re_psi", "im_psi"});
  const double x_ref = std::stod(rows[1][0]), psi_ref = std::stod(rows[1][2]);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    CHECK(std::abs(std::stod(rows[i][2]) / psi_ref - std::exp(0.6 * (x - x_ref))) < 1e-10);
    CHECK(std::abs(std::stod(rows[i][3])) < 1e-12);
  }
  const auto j = json::parse(cli({"solve", "--family", "2", "0", "--V0", "0.1", "--V1", "0.2", "--grid", "-2", "-0.1", "10",
                                  "--format", "json"})
                                 .out);
  CHECK(j["command"] == "solve");
  CHECK(j.contains("heun"));
  CHECK(j.contains("prefactor"));

  const auto degenerate =
      cli({"solve", "--family", "2", "0", "--E", "1.2", "--mass", "1.3", "--V1", "0.2", "--branch", "+-+"});
  CHECK(degenerate.code == 3);
  CHECK(degenerate.err.find("degenerate") != std::string::npos);
  CHECK(degenerate.err.find("branch") != std::string::npos);
}

TEST_CASE("cli verify") {
  const auto ok = cli({"verify", "--family", "2", "0", "--V0", "0.1", "--V1", "0.2", "--V2", "0.3"});
  CHECK(ok.code == 0);
  const auto j = json::parse(ok.out);
  CHECK(j["exit"] == 0);
  CHECK(j["checks"].size() == 4);
  for (const auto& c : j["checks"]) CHECK(c["pass"] == true);

  const auto bad = cli({"verify", "--family", "2", "0", "--V0", "0.1", "--V1", "0.2", "--V2", "0.3", "--perturb-q", "0.01"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("kg_residual") != std::string::npos);
  CHECK(json::parse(bad.out)["exit"] == 1);

  CHECK(cli({"verify", "--plane-wave", "0.8", "--E", "1.25"}).code == 1);
  CHECK(cli({"verify", "--plane-wave", "0.75", "--E", "1.25"}).code == 0);

  const auto sweep = cli({"verify", "--sweep"});
  CHECK(sweep.code == 0);
  CHECK(json::parse(sweep.out)["checks"].size() == 60);
}

TEST_CASE("cli reduce") {
  const auto r = cli({"reduce", "--row", "9", "--V0", "0.1", "--V1", "0.2", "--V2", "0"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["reduction"]["kind"] == "gauss");
  CHECK(j["checks"][0]["max_rel_residual"].get<double>() < 1e-9);
  const auto none = json::parse(cli({"reduce", "--row", "9", "--V0", "0.1", "--V1", "0.2", "--V2", "0.3"}).out);
  CHECK(none["reduction"]["kind"] == "none");
}

TEST_CASE("cli fig2") {
  const auto r = cli({"fig2", "--grid", "0.1", "10", "12", "--log"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  CHECK(rows[0] == std::vector<std::string>{"sigma", "x", "z", "re_V", "im_V"});
  CHECK(rows.size() == 1 + 3 * 12);
  const auto two = csv_rows(cli({"fig2", "--sigmas", "1,3", "--grid", "0.1", "10", "12"}).out);
  CHECK(two.size() == 1 + 2 * 12);
}

TEST_CASE("cli configuration errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"eval", "--family", "3", "3"}).code == 2);
  CHECK(cli({"eval", "--row", "12"}).code == 2);
  CHECK(cli({"eval", "--row", "1", "--format", "xml"}).code == 2);
  CHECK(cli({"eval", "--row", "1", "--V0", "abc"}).code == 2);
  CHECK(cli({"verify", "--row", "7", "--grid", "0.1", "0.5", "4"}).code == 2);
  CHECK(cli({"solve", "--row", "7", "--mass", "-1"}).code == 2);
  CHECK(cli({"eval", "--spec", "/nonexistent/spec.json"}).code == 2);
}

TEST_CASE("cli files, spec input and determinism") {
  const auto spec_path = temp_path("spec.json");
  {
    std::ofstream f(spec_path);
    f << R"({"family.m1_x2": 2, "family.m2_x2": 2, "V0": [0.1, 0], "V1": [0.2, 0], "V2": [0.3, 0],
            "x0": [0, 0], "sigma": [1, 0]})";
  }
  const auto a = cli({"eval", "--spec", spec_path.string(), "--grid", "-2", "2", "9"});
  const auto b = cli({"eval", "--row", "9", "--V0", "0.1", "--V1", "0.2", "--V2", "0.3", "--grid", "-2", "2", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = cli({"eval", "--spec", spec_path.string(), "--V0", "0.5", "--grid", "-2", "2", "9"});
  CHECK(c.out != a.out);

  const auto out1 = temp_path("out1.csv"), out2 = temp_path("out2.csv");
  const std::vector<std::string> args{"solve", "--row", "7", "--V0", "0.1", "--V1", "0.2", "--V2", "0.3", "--grid",
                                      "-2", "-0.1", "25"};
  auto with_out = [&](const std::filesystem::path& p) {
    auto v = args;
    v.push_back("--out");
    v.push_back(p.string());
    return cli(v);
  };
  CHECK(with_out(out1).code == 0);
  CHECK(with_out(out2).code == 0);
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  CHECK(!slurp(out1).empty());
  CHECK(slurp(out1) == slurp(out2));
  std::filesystem::remove(out1);
  std::filesystem::remove(out2);
  std::filesystem::remove(spec_path);
}

TEST_CASE("cli selftest") {
  const auto r = cli({"selftest"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["exit"] == 0);
}
