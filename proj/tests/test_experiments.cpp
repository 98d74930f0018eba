#include "qecsym/experiments.hpp"

#include "qecsym/rng.hpp"

#include <doctest.h>

#include <cstdlib>
#include <string>

using namespace qecsym;

namespace {

ExperimentConfig base_config(const std::string& experiment) {
  Json j;
  j["schema_version"] = 1;
  j["experiment"] = experiment;
  return config_from_json(j);
}

}  // namespace

TEST_CASE("config validation") {
  Json j;
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);  // not an object / empty
  j["experiment"] = "recover";
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);  // schema_version missing
  j["schema_version"] = 2;
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
  j["schema_version"] = 1;
  CHECK_NOTHROW(config_from_json(j));
  j["experiment"] = "plot";
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
  j["experiment"] = "recover";
  j["code"] = "four_qubit";
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
  j["code"] = "five_qubit";
  j["trials"] = 0;
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);
  j["trials"] = 3;
  j["alpha"] = Json::array({1.0, 0.0});
  j["beta"] = Json::array({1.0, 0.0});
  CHECK_THROWS_AS(config_from_json(j), std::invalid_argument);  // not normalized
}

TEST_CASE("pauli sweep over the five-qubit code recovers every row") {
  ExperimentConfig cfg = base_config("recover");
  cfg.code = CodeKind::kFiveQubit;
  cfg.error_type = "pauli_sweep";
  cfg.route = "decode";
  cfg.base_seed = 404;
  Table t = run_recover(cfg);
  REQUIRE(t.rows().size() == 15);
  for (const auto& row : t.rows()) {
    CHECK(std::get<double>(row[5]) >= 1.0 - 1e-10);   // fidelity
    CHECK(std::get<double>(row[6]) <= 1e-10);         // product defect
    CHECK(std::get<std::int64_t>(row[7]) == 1);       // success
  }
}

TEST_CASE("incorrigible single error rows are flagged") {
  ExperimentConfig cfg = base_config("recover");
  cfg.code = CodeKind::kBitflip3;
  cfg.error_type = "single";
  cfg.error_position = 1;
  cfg.error_kind = "phase";
  cfg.trials = 4;
  Table t = run_recover(cfg);
  REQUIRE(t.rows().size() == 4);
  for (const auto& row : t.rows()) {
    CHECK(std::get<double>(row[5]) < 1.0 - 1e-6);
    CHECK(std::get<std::int64_t>(row[7]) == 0);
  }
}

TEST_CASE("environment compare route gives row-by-row agreement") {
  ExperimentConfig cfg = base_config("recover");
  cfg.code = CodeKind::kFiveQubit;
  cfg.error_type = "environment";
  cfg.route = "compare";
  cfg.trials = 6;
  cfg.base_seed = 8;
  Table t = run_recover(cfg);
  for (const auto& row : t.rows()) {
    CHECK(std::get<double>(row[7]) <= 1e-9);  // |measured - fresh|
  }
}

TEST_CASE("zero drift spread flags the ratio undefined") {
  ExperimentConfig cfg = base_config("symmetrize");
  cfg.scenario = "drift";
  cfg.replicas = 2;
  cfg.sigma = 0.0;
  cfg.trials = 20;
  SymmetrizeRun run = run_symmetrize(cfg);
  CHECK_FALSE(run.summary.at("ratio_defined").get<bool>());
  CHECK(run.summary.at("infidelity_ratio").is_null());
  CHECK(run.summary.at("abort_rate").get<double>() == 0.0);
}

TEST_CASE("orthogonal scenario reports the exact projection probability") {
  ExperimentConfig cfg = base_config("symmetrize");
  cfg.scenario = "orthogonal";
  cfg.replicas = 5;
  cfg.trials = 10;
  SymmetrizeRun run = run_symmetrize(cfg);
  CHECK(run.summary.at("success_probability").get<double>() == doctest::Approx(0.2));
}

TEST_CASE("eta zero zeroes the singlet column") {
  ExperimentConfig cfg = base_config("zeno");
  cfg.mu = cfg.nu = 1.5;
  cfg.samples = 100;
  Table t = run_zeno(cfg);
  for (const auto& row : t.rows()) {
    CHECK(std::get<double>(row[4]) < 1e-12);  // |Psi-|
    CHECK(std::get<double>(row[5]) == 0.0);   // reference |Psi-|
  }
}

TEST_CASE("seed stream is a pure function of base seed and index") {
  CHECK(derived_seed(42, 0) == derived_seed(42, 0));
  CHECK(derived_seed(42, 0) != derived_seed(42, 1));
  CHECK(derived_seed(42, 1) != derived_seed(43, 1));
}

TEST_CASE("rerunning an experiment renders byte-identical artifacts") {
  ExperimentConfig cfg = base_config("recover");
  cfg.code = CodeKind::kFiveQubit;
  cfg.error_type = "coherent";
  cfg.route = "fresh";
  cfg.trials = 5;
  cfg.base_seed = 77;
  std::string a = render(run_recover(cfg), "csv");
  std::string b = render(run_recover(cfg), "csv");
  CHECK(a == b);
  CHECK(render(run_recover(cfg), "json") == render(run_recover(cfg), "json"));
  CHECK(a.find('\r') == std::string::npos);
}

TEST_CASE("csv floats survive a text round trip") {
  CHECK(std::strtod(format_double(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
  CHECK(std::strtod(format_double(5e-324).c_str(), nullptr) == 5e-324);
  CHECK(format_double(1.0) == "1");
}
