#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rectinv/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rectinv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = rectinv::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden_path(const std::string& name) { return std::string(RECTINV_GOLDEN_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// Header must match exactly; numbers to 1e-12 relative, with an absolute
// floor for the error columns that sit at rounding level.
void check_csv_matches(const std::string& got, const std::string& golden_name) {
  const auto want = split_csv(slurp(golden_path(golden_name)));
  const auto have = split_csv(got);
  REQUIRE(have.size() == want.size());
  REQUIRE(!have.empty());
  CHECK(have[0] == want[0]);
  for (std::size_t r = 1; r < want.size(); ++r) {
    REQUIRE(have[r].size() == want[r].size());
    for (std::size_t c = 0; c < want[r].size(); ++c) {
      const double a = std::stod(have[r][c]);
      const double b = std::stod(want[r][c]);
      INFO(golden_name << " row " << r << " column " << want[0][c]);
      CHECK(std::abs(a - b) <= 1e-12 * std::abs(b) + 1e-14);
    }
  }
}

}  // namespace

TEST_CASE("golden outputs") {
  check_csv_matches(run({"transform", "--func", "mixedexp:g1=1,g2=2", "--kind", "laplace", "--analytic",
                         "--z", "0", "--z", "1+2i"})
                        .out,
                    "transform_mixedexp.csv");
  check_csv_matches(run({"invert", "--poles", "[[-1,0,1,0]]", "--x", "-2", "--x", "0", "--x", "5"}).out,
                    "invert_rect.csv");
  check_csv_matches(
      run({"roundtrip", "--func", "power:gamma=0.5", "--kind", "moment", "--grid", "0.25:4:4"}).out,
      "roundtrip_power.csv");
  check_csv_matches(run({"delta-check", "--func", "exp:gamma=1", "--x", "1"}).out, "delta_check.csv");
  check_csv_matches(run({"cauchy-check", "--func", "mixedexp:g1=1,g2=2", "--z", "1+1i"}).out,
                    "cauchy.csv");
  check_csv_matches(run({"--config", golden_path("roundtrip.json"), "roundtrip"}).out,
                    "roundtrip_config.csv");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == rectinv::kExitUsage);
  CHECK(run({"transform", "--func", "exp:gamma=1"}).code == rectinv::kExitUsage);

  const auto bad = run({"transform", "--func", "exp:gamma=", "--z", "1"});
  CHECK(bad.code == rectinv::kExitUsage);
  CHECK(bad.err.find("column 11") != std::string::npos);
  CHECK(bad.out.empty());

  CHECK(run({"invert", "--func", "exp:gamma=1", "--func", "exp:gamma=2"}).code == rectinv::kExitUsage);
  CHECK(run({"invert", "--poles", "[[-1,0,1,0]]", "--func", "exp:gamma=1", "--x", "0"}).code ==
        rectinv::kExitUsage);

  // A truncated line at x = -1 misses the 5e-2 line tolerance; only --strict turns that into a failure.
  const std::vector<std::string> line = {"roundtrip", "--func", "exp:gamma=1", "--contour", "line",
                                         "--x", "-1"};
  CHECK(run(line).code == rectinv::kExitOk);
  auto strict = line;
  strict.insert(strict.begin(), "--strict");
  CHECK(run(strict).code == rectinv::kExitConvergence);
  // Global flags are also accepted after the subcommand.
  strict = line;
  strict.push_back("--strict");
  CHECK(run(strict).code == rectinv::kExitConvergence);

  CHECK(run({"transform", "--func", "exp:gamma=-1", "--z", "0.5"}).code == rectinv::kExitUsage);
}

TEST_CASE("json summary") {
  const auto r = run({"--json", "transform", "--func", "exp:gamma=1", "--z", "1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("command") == "transform");
  CHECK(j.at("rows").at(0).at("value").at(0).get<double>() == doctest::Approx(0.5).epsilon(1e-12));

  const auto rt = run({"--json", "roundtrip", "--func", "exp:gamma=1", "--x", "0"});
  REQUIRE(rt.code == 0);
  CHECK(nlohmann::json::parse(rt.out).contains("passed"));
}

TEST_CASE("output file and command-line precedence over config") {
  const auto path = std::filesystem::temp_directory_path() / "rectinv_cli_test.csv";
  std::filesystem::remove(path);
  const auto r = run({"--out", path.string(), "--config", golden_path("roundtrip.json"), "roundtrip",
                      "--grid", "0:0:1"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto rows = split_csv(slurp(path.string()));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "0");
  std::filesystem::remove(path);

  const auto missing = run({"--config", "/nonexistent/rectinv.json", "roundtrip"});
  CHECK(missing.code == rectinv::kExitUsage);
}

TEST_CASE("sweep strictness") {
  const auto ok = run({"--strict", "sweep", "--poles", "[[-1,0,1,0]]", "--x", "1"});
  CHECK(ok.code == 0);
  CHECK(split_csv(ok.out).size() == 10);
  const auto rel = run({"sweep", "--func", "mixedexp:g1=1,g2=2", "--x", "1", "--relative"});
  CHECK(rel.code == 0);
}
