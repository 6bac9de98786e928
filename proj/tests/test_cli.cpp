#include "doctest.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "support/run_command.hpp"

using testing_support::read_file;
using testing_support::run_command;

namespace {

const std::string kExe = IMPACTSIM_PATH;
const std::string kGeometry = GEOMETRY_DIR;

testing_support::CommandResult cli(const std::string& args) { return run_command(kExe + " " + args); }

nlohmann::json rows_of(const std::string& json_text) { return nlohmann::json::parse(json_text)["rows"]; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("predict") {
  auto r = cli("predict --model qm --alpha 0 --beta 0 --gamma 0");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.output, "side1: P(+) = 0.166667, P(-) = 0.833333"));
  CHECK(contains(r.output, "side2: P(+) = 0.833333, P(-) = 0.166667"));

  r = cli("predict --model rnl --ordering spacelike --beta 0 --gamma 0");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.output, "side2: P(+) = 0.833333, P(-) = 0.166667"));
  CHECK(contains(r.output, "side1: P(+) = 0.5, P(-) = 0.5"));

  CHECK(cli("predict --model causal --ordering spacelike").exit_code == 2);

  r = cli("predict --model causal --ordering 1");
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.output, "side1: undefined"));

  r = cli("predict --model qm --alpha 90 --degrees");
  CHECK(contains(r.output, "side1: P(+) = 0.5, P(-) = 0.5"));

  r = cli("predict --model qm --subensemble l --format json");
  REQUIRE(r.exit_code == 0);
  CHECK(rows_of(r.output)[0]["side1_plus"].get<double>() == 0.833333);
}

TEST_CASE("argument errors exit with code 2") {
  CHECK(cli("predict --model foo").exit_code == 2);
  CHECK(cli("predict --ordering 3").exit_code == 2);
  CHECK(cli("simulate --events 0").exit_code == 2);
  CHECK(cli("simulate --alpha abc").exit_code == 2);
  CHECK(cli("compare --grid 0:1").exit_code == 2);
  CHECK(cli("").exit_code == 2);
}

TEST_CASE("simulate") {
  auto r = cli("simulate --model qm --events 1000000 --seed 42 --alpha 0 --beta 0 --gamma 0 --format json");
  REQUIRE(r.exit_code == 0);
  const auto row = rows_of(r.output)[0];
  CHECK(std::abs(std::abs(row["E"].get<double>()) - 2.0 / 3) < 0.01);
  CHECK(row["events"] == 1000000);
  CHECK(row["seed"] == 42);

  r = cli("simulate --model rnl --events 1000000 --seed 42 --format json");
  REQUIRE(r.exit_code == 0);
  const auto rnl = rows_of(r.output)[0];
  CHECK(std::abs(rnl["E"].get<double>()) < 4 * rnl["E_std_error"].get<double>());

  CHECK(cli("simulate --model causal --ordering spacelike").exit_code == 2);
}

TEST_CASE("simulate output is byte-identical for identical flags") {
  const std::string flags = "simulate --model qm --events 200000 --seed 9 --alpha 0.3 --beta 1 --gamma 2";
  REQUIRE(cli(flags + " --out cli_a.csv").exit_code == 0);
  REQUIRE(cli(flags + " --out cli_b.csv --workers 3").exit_code == 0);
  const std::string a = read_file("cli_a.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == read_file("cli_b.csv"));
}

TEST_CASE("compare emits QM and RNL fringes") {
  auto r = cli("compare --grid 0:6.283185307179586:13 --beta 0 --gamma 0 --events 20000 --format json");
  REQUIRE(r.exit_code == 0);
  const auto rows = rows_of(r.output);
  REQUIRE(rows.size() == 26);
  double lo = 1, hi = 0, sum = 0;
  int n = 0;
  for (const auto& row : rows) {
    const double s1 = row["side1_plus"].get<double>();
    if (row["model"] == "qm") {
      lo = std::min(lo, s1);
      hi = std::max(hi, s1);
      sum += s1;
      ++n;
    } else {
      CHECK(row["model"] == "rnl");
      CHECK(s1 == 0.5);
    }
  }
  CHECK(n == 13);
  CHECK((hi - lo) / 2 == doctest::Approx(1.0 / 3).epsilon(1e-5));
  // Endpoints repeat, so drop one copy for the mean.
  CHECK((sum - rows[0]["side1_plus"].get<double>()) / 12 == doctest::Approx(0.5).epsilon(1e-5));

  r = cli("compare --grid 0.5:0.5:1 --models qm --events 1000");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.output);
  int count = 0;
  for (std::string line; std::getline(lines, line);) ++count;
  CHECK(count == 2);  // header + one row
}

TEST_CASE("compare rows are reproducible from their provenance") {
  auto r = cli("compare --grid 0:3:4 --axis beta --events 5000 --seed 77 --format json");
  REQUIRE(r.exit_code == 0);
  const auto row = rows_of(r.output)[2];
  std::ostringstream flags;
  flags.precision(17);
  flags << "simulate --model " << row["model"].get<std::string>() << " --alpha "
        << row["alpha"].get<double>() << " --beta " << row["beta"].get<double>() << " --gamma "
        << row["gamma"].get<double>() << " --seed " << row["seed"].get<std::uint64_t>()
        << " --events " << row["events"].get<std::uint64_t>() << " --format json";
  const auto again = cli(flags.str());
  REQUIRE(again.exit_code == 0);
  const auto replay = rows_of(again.output)[0];
  for (const char* key : {"r_pp", "r_pm", "r_mp", "r_mm", "accepted"}) CHECK(replay[key] == row[key]);
}

TEST_CASE("validate-oracle") {
  auto r = cli("validate-oracle");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "oracle: PASS"));

  r = cli("validate-oracle --geometry " + kGeometry + "/default.geom --t 0,0.7071067811865476 --r 0.7071067811865476,0");
  CHECK(r.exit_code == 0);

  r = cli("validate-oracle --geometry " + kGeometry + "/miswired.geom");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "first mismatch"));
  CHECK(contains(r.output, "oracle: FAIL"));

  CHECK(cli("validate-oracle --t 1,0 --r 1,0").exit_code == 2);
  CHECK(cli("validate-oracle --geometry /nonexistent.geom").exit_code == 2);

  r = cli("validate-oracle --print-geometry");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "arm BS20.d BS21.b L beta"));
}
