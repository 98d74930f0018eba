#pragma once

#include "qecsym/codes.hpp"
#include "qecsym/serialize.hpp"

#include <cstdint>
#include <string>

namespace qecsym {

/// One batch experiment, normally parsed from a JSON config document.
/// Invalid configurations throw std::invalid_argument (CLI exit code 2).
struct ExperimentConfig {
  int schema_version = 1;
  std::string experiment;  // verify | recover | symmetrize | zeno | barrier

  CodeKind code = CodeKind::kFiveQubit;

  // recover
  std::string error_type = "pauli_sweep";  // pauli_sweep | single | coherent | mixture | environment
  int error_position = -1;                 // -1: sweep / per-trial choice
  std::string error_kind = "bit";
  std::string route = "decode";  // decode | fresh | measured | compare
  double error_rate = 0.01;      // mixture error weight; barrier drift rate lambda
  Eigen::Index env_dim = 2;

  // symmetrize
  std::string scenario = "drift";  // drift | orthogonal | pairwise
  int replicas = 2;
  double sigma = 0.02;  // drift angles uniform in [-sigma, sigma]
  int rounds = 1;

  // zeno / barrier
  double omega = 100.0;
  double mu = 0.0;
  double nu = 0.0;
  double t_max = -1.0;  // <= 0: default 10*pi/omega
  int samples = 1000;
  Complex alpha{1.0 / 1.4142135623730951, 0.0};
  Complex beta{1.0 / 1.4142135623730951, 0.0};

  int trials = 1;
  std::uint64_t base_seed = 1;

  std::string out_path;        // empty: stdout
  std::string format = "csv";  // csv | json

  double t_max_or_default() const;
};

ExperimentConfig config_from_json(const Json& j);
ExperimentConfig load_config(const std::string& path);

Json run_verify(const ExperimentConfig& cfg);

Table run_recover(const ExperimentConfig& cfg);

struct SymmetrizeRun {
  Table per_trial;
  Json summary;
};

SymmetrizeRun run_symmetrize(const ExperimentConfig& cfg);

Table run_zeno(const ExperimentConfig& cfg);

Table run_barrier(const ExperimentConfig& cfg);

/// Table rendered in the configured format ("csv" or "json", LF endings).
std::string render(const Table& table, const std::string& format);

/// Writes text to cfg.out_path, or stdout when the path is empty.
void write_output(const ExperimentConfig& cfg, const std::string& text);

}  // namespace qecsym
