#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opschur/measure_io.hpp"
#include "opschur/rng.hpp"

using namespace opschur;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "opschur_cli_test";

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  fs::create_directories(kWork);
  const fs::path out = kWork / "stdout.txt";
  const std::string cmd =
      std::string(OPSCHUR_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out)};
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << text;
}

OpMeasure random_discrete(Rng& rng, int atoms, Eigen::Index d) {
  std::vector<double> angles;
  std::vector<Operator> weights;
  for (int i = 0; i < atoms; ++i) {
    angles.push_back(two_pi * (i + 0.4 * rng.uniform()) / atoms);
    weights.push_back(random_operator(rng, d));
  }
  return OpMeasure::discrete(d, std::move(angles), std::move(weights));
}

double csv_value(const std::string& csv, const std::string& metric) {
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind(metric + ",", 0) == 0) return std::stod(line.substr(metric.size() + 1));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

TEST_CASE("measure JSON round trips are bit exact") {
  Rng rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    const OpMeasure mu = random_discrete(rng, 3, 2);
    const std::string text = measure_to_json(mu).dump();
    const OpMeasure back = measure_from_json(nlohmann::json::parse(text));
    REQUIRE(back.is_discrete());
    const auto &a = mu.as_discrete(), &b = back.as_discrete();
    REQUIRE(a.angles.size() == b.angles.size());
    for (std::size_t i = 0; i < a.angles.size(); ++i) {
      CHECK(a.angles[i] == b.angles[i]);
      CHECK((a.weights[i] - b.weights[i]).norm() == 0.0);
    }
    // serializing again reproduces the same bytes
    CHECK(measure_to_json(back).dump() == text);
  }

  TrigPoly<Operator> symbol;
  symbol.set_coeff(-1, random_operator(rng, 2));
  symbol.set_coeff(2, random_operator(rng, 2));
  const OpMeasure dens = OpMeasure::density(2, symbol);
  const std::string text = measure_to_json(dens).dump();
  const OpMeasure back = measure_from_json(nlohmann::json::parse(text));
  REQUIRE(back.is_density());
  for (int k = -3; k <= 3; ++k) CHECK((fourier(back, k) - fourier(dens, k)).norm() == 0.0);
  CHECK(measure_to_json(back).dump() == text);

  const OpMeasure lazy = spectral_lazy_measure(5);
  const OpMeasure lback = measure_from_json(measure_to_json(lazy));
  REQUIRE(lback.is_lazy());
  CHECK(lback.dim() == 5);
  for (int k = 0; k <= 6; ++k) CHECK((fourier(lback, k) - fourier(lazy, k)).norm() == 0.0);
}

TEST_CASE("matrix and toeplitz-spec JSON round trips") {
  Rng rng(2);
  OpMatrix a(3, 2, 2);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 2; ++j) a.set_block(k, j, random_operator(rng, 2));
  const std::string text = matrix_to_json(a).dump();
  const OpMatrix back = matrix_from_json(nlohmann::json::parse(text));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 2);
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 2; ++j) CHECK((back.block(k, j) - a.block(k, j)).norm() == 0.0);
  CHECK(matrix_to_json(back).dump() == text);

  const ToeplitzSpec spec{random_discrete(rng, 2, 2), 5};
  const ToeplitzSpec sback = toeplitz_spec_from_json(toeplitz_spec_to_json(spec));
  CHECK(sback.truncation == 5);
  CHECK((fourier(sback.measure, 1) - fourier(spec.measure, 1)).norm() == 0.0);
}

TEST_CASE("malformed inputs are rejected with parse errors") {
  CHECK_THROWS(measure_from_json(nlohmann::json::parse("{\"type\":\"weird\",\"d\":2}")));
  CHECK_THROWS(measure_from_json(nlohmann::json::parse("{\"type\":\"discrete\"}")));
  CHECK_THROWS(operator_from_json(nlohmann::json::parse("[[1.0]]")));
}

TEST_CASE("cli: norms of an identity-block matrix") {
  const OpMatrix id = OpMatrix::block_identity(4, 2);
  const fs::path mpath = kWork / "identity.json";
  write_file(mpath, matrix_to_json(id).dump());
  const RunResult r = run_cli("norms " + mpath.string());
  REQUIRE(r.exit_code == 0);
  CHECK(csv_value(r.out, "opnorm") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(csv_value(r.out, "diag_sup") == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(csv_value(r.out, "frobenius") == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("cli: exported gallery matrix feeds the norms table") {
  fs::create_directories(kWork);
  const RunResult g =
      run_cli("gallery row_rank_one --export " + kWork.string() + " --out " +
              (kWork / "report.csv").string());
  REQUIRE(g.exit_code == 0);
  const std::string report = slurp(kWork / "report.csv");
  // last tilde partial from the gallery report
  double expected = -1.0;
  {
    std::stringstream ss(report);
    std::string line;
    while (std::getline(ss, line))
      if (line.find("tilde_h2_partial_5") != std::string::npos) {
        std::stringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        std::getline(ls, cell, ',');
        std::getline(ls, cell, ',');
        expected = std::stod(cell);
      }
  }
  REQUIRE(expected > 0.0);
  const RunResult n = run_cli("norms " + (kWork / "row_rank_one_matrix.json").string());
  REQUIRE(n.exit_code == 0);
  CHECK(csv_value(n.out, "tilde_h2") == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("cli: scalar shift symbol gives a ladder of ones") {
  TrigPoly<Operator> symbol;
  symbol.set_coeff(1, Operator::Identity(1, 1));
  const fs::path mpath = kWork / "shift.json";
  write_file(mpath, measure_to_json(OpMeasure::density(1, symbol)).dump());
  const RunResult r = run_cli("toeplitz " + mpath.string() + " --ladder 2,4,8");
  REQUIRE(r.exit_code == 0);
  for (const char* key : {"opnorm_N2", "opnorm_N4", "opnorm_N8", "vinf"})
    CHECK(csv_value(r.out, key) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cli: multiplier bounds for a single atom") {
  Rng rng(3);
  const Operator w = random_operator(rng, 2);
  const fs::path mpath = kWork / "atom.json";
  write_file(mpath, measure_to_json(OpMeasure::discrete(2, {1.0}, {w})).dump());
  const RunResult r = run_cli("multiplier " + mpath.string() + " --N 4 --budget 16");
  REQUIRE(r.exit_code == 0);
  const double ub = csv_value(r.out, "upper_bound_variation");
  CHECK(ub == doctest::Approx(spectral_norm(w)).epsilon(1e-9));
  CHECK(csv_value(r.out, "left_lb_truncation") <= ub + 1e-8);
  CHECK(csv_value(r.out, "right_lb_truncation") <= ub + 1e-8);
}

TEST_CASE("cli: measure functionals for discrete and lazy inputs") {
  Rng rng(4);
  const fs::path dpath = kWork / "disc.json";
  write_file(dpath, measure_to_json(random_discrete(rng, 2, 2)).dump());
  RunResult r = run_cli("measure " + dpath.string() + " --N 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("variation,") != std::string::npos);
  CHECK(r.out.find("poisson_variation,") != std::string::npos);

  const fs::path lpath = kWork / "lazy.json";
  write_file(lpath, measure_to_json(spectral_lazy_measure(3)).dump());
  r = run_cli("measure " + lpath.string() + " --N 3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\nvariation,") == std::string::npos);
  CHECK(csv_value(r.out, "vinf") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli: exit code contract") {
  const fs::path bad = kWork / "broken.json";
  write_file(bad, "{not json");
  CHECK(run_cli("norms " + bad.string()).exit_code == 2);
  CHECK(run_cli("norms " + (kWork / "missing.json").string()).exit_code == 2);
  CHECK(run_cli("gallery nonsense").exit_code == 3);
  CHECK(run_cli("verify nonsense").exit_code == 3);
}

TEST_CASE("cli: verify runs are byte-identical and honor the config file") {
  const fs::path out1 = kWork / "v1.csv", out2 = kWork / "v2.csv";
  const std::string suite = "projection_norms,bilinear_identity,determinism";
  const RunResult r1 = run_cli("verify " + suite + " --seed 7 --out " + out1.string());
  const RunResult r2 = run_cli("verify " + suite + " --seed 7 --out " + out2.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(r1.out == r2.out);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!slurp(out1).empty());

  // a config file carrying the same seed reproduces the same bytes
  const fs::path cfg = kWork / "config.json";
  write_file(cfg, "{\"seed\": 7, \"format\": \"csv\"}");
  const fs::path out3 = kWork / "v3.csv";
  const RunResult r3 =
      run_cli("verify " + suite + " --config " + cfg.string() + " --out " + out3.string());
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp(out3) == slurp(out1));
  CHECK(r3.out == r1.out);
}

TEST_CASE("cli: json format emits parseable reports") {
  const RunResult r = run_cli("gallery no_rn_measure --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j[0]["name"] == "no_rn_measure");
  CHECK(j[0]["pass"] == true);
}
