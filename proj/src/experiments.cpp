#include "qecsym/experiments.hpp"

#include "qecsym/noise.hpp"
#include "qecsym/recovery.hpp"
#include "qecsym/rng.hpp"
#include "qecsym/symmetrization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qecsym {

namespace {

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("config: complex values are [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

PauliKind kind_from_string(const std::string& s) {
  if (s == "bit") return PauliKind::kBit;
  if (s == "phase") return PauliKind::kPhase;
  if (s == "both") return PauliKind::kBoth;
  throw std::invalid_argument("config: unknown error kind '" + s + "'");
}

std::string kind_to_string(PauliKind k) {
  switch (k) {
    case PauliKind::kBit: return "bit";
    case PauliKind::kPhase: return "phase";
    case PauliKind::kBoth: return "both";
  }
  return "?";
}

}  // namespace

double ExperimentConfig::t_max_or_default() const {
  return t_max > 0.0 ? t_max : 10.0 * std::numbers::pi / omega;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig cfg;
  require(j.is_object(), "config: document must be a JSON object");
  require(j.contains("schema_version"), "config: missing schema_version");
  cfg.schema_version = j.at("schema_version").get<int>();
  require(cfg.schema_version == 1, "config: unsupported schema_version");
  require(j.contains("experiment"), "config: missing experiment");
  cfg.experiment = j.at("experiment").get<std::string>();

  static const std::set<std::string> experiments{"verify", "recover", "symmetrize", "zeno",
                                                 "barrier"};
  require(experiments.count(cfg.experiment) != 0, "config: unknown experiment");

  if (j.contains("code")) cfg.code = code_kind_from_string(j.at("code").get<std::string>());
  if (j.contains("error_type")) cfg.error_type = j.at("error_type").get<std::string>();
  if (j.contains("error_position")) cfg.error_position = j.at("error_position").get<int>();
  if (j.contains("error_kind")) cfg.error_kind = j.at("error_kind").get<std::string>();
  if (j.contains("route")) cfg.route = j.at("route").get<std::string>();
  if (j.contains("error_rate")) cfg.error_rate = j.at("error_rate").get<double>();
  if (j.contains("env_dim")) cfg.env_dim = j.at("env_dim").get<Eigen::Index>();
  if (j.contains("scenario")) cfg.scenario = j.at("scenario").get<std::string>();
  if (j.contains("replicas")) cfg.replicas = j.at("replicas").get<int>();
  if (j.contains("sigma")) cfg.sigma = j.at("sigma").get<double>();
  if (j.contains("rounds")) cfg.rounds = j.at("rounds").get<int>();
  if (j.contains("omega")) cfg.omega = j.at("omega").get<double>();
  if (j.contains("mu")) cfg.mu = j.at("mu").get<double>();
  if (j.contains("nu")) cfg.nu = j.at("nu").get<double>();
  if (j.contains("t_max")) cfg.t_max = j.at("t_max").get<double>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("alpha")) cfg.alpha = complex_from_json(j.at("alpha"));
  if (j.contains("beta")) cfg.beta = complex_from_json(j.at("beta"));
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
  if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();

  static const std::set<std::string> error_types{"pauli_sweep", "single", "coherent", "mixture",
                                                 "environment"};
  static const std::set<std::string> routes{"decode", "fresh", "measured", "compare"};
  static const std::set<std::string> scenarios{"drift", "orthogonal", "pairwise"};
  require(error_types.count(cfg.error_type) != 0, "config: unknown error_type");
  require(routes.count(cfg.route) != 0, "config: unknown route");
  require(scenarios.count(cfg.scenario) != 0, "config: unknown scenario");
  require(cfg.format == "csv" || cfg.format == "json", "config: format must be csv or json");
  require(cfg.trials >= 1, "config: trials must be >= 1");
  require(cfg.samples >= 1, "config: samples must be >= 1");
  require(cfg.replicas >= 2, "config: replicas must be >= 2");
  require(cfg.rounds >= 1, "config: rounds must be >= 1");
  require(cfg.omega > 0.0 || cfg.experiment != "zeno", "config: omega must be > 0");
  require(cfg.env_dim >= 2, "config: env_dim must be >= 2");
  if (cfg.experiment == "symmetrize" && cfg.scenario == "pairwise") {
    require(cfg.replicas % 2 == 0, "config: pairwise scenario needs an even replica count");
  }
  double nrm = std::norm(cfg.alpha) + std::norm(cfg.beta);
  require(std::abs(nrm - 1.0) <= kNormTol, "config: |alpha|^2 + |beta|^2 must be 1");
  if (cfg.error_type == "single") {
    require(cfg.error_position >= 0, "config: single error needs error_position");
    kind_from_string(cfg.error_kind);  // validates
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot read '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

Json run_verify(const ExperimentConfig& cfg) {
  return to_json(verify_code(build_code(cfg.code)));
}

namespace {

// Fidelity of the codeword factor of a (possibly extended) joint state
// against the ideal encoded state.
double codeword_fidelity(const StateVector& joint, const QuantumCode& code,
                         const StateVector& ideal) {
  if (joint.dim() == ideal.dim()) return fidelity(ideal, joint.renormalized());
  std::vector<int> keep;
  for (int i = 0; i < code.n_physical(); ++i) keep.push_back(i);
  return fidelity(ideal, partial_trace(joint.renormalized(), keep));
}

int dominant_syndrome(const StateVector& corrupted, const QuantumCode& code) {
  try {
    std::vector<double> p = syndrome_distribution(corrupted, code);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  } catch (const std::invalid_argument&) {
    return -1;  // outside the declared span
  }
}

struct TrialError {
  StateVector corrupted;
  int position = -1;
  std::string kind = "-";
};

}  // namespace

Table run_recover(const ExperimentConfig& cfg) {
  QuantumCode code = build_code(cfg.code);
  const int n = code.n_physical();

  const bool compare = cfg.route == "compare";
  Table table(compare
                  ? std::vector<std::string>{"trial", "seed", "error_position", "error_kind",
                                             "syndrome", "fidelity_measured", "fidelity_fresh",
                                             "abs_difference", "success"}
                  : std::vector<std::string>{"trial", "seed", "error_position", "error_kind",
                                             "syndrome", "fidelity", "product_defect", "success"});

  // Row plan: the error sweep (if any) is the outer loop, trials the inner.
  std::vector<PauliSpec> sweep;
  if (cfg.error_type == "pauli_sweep") {
    for (int pos = 0; pos < n; ++pos) {
      for (PauliKind k : {PauliKind::kBit, PauliKind::kPhase, PauliKind::kBoth}) {
        sweep.push_back(PauliSpec{pos, k});
      }
    }
  } else if (cfg.error_type == "single") {
    sweep.push_back(PauliSpec{cfg.error_position, kind_from_string(cfg.error_kind)});
  }

  const std::size_t n_variants = sweep.empty() ? 1 : sweep.size();
  for (std::size_t v = 0; v < n_variants; ++v) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed =
          derived_seed(cfg.base_seed, v * static_cast<std::size_t>(cfg.trials) +
                                          static_cast<std::size_t>(trial));
      std::mt19937_64 rng(seed);
      auto [alpha, beta] = random_qubit(rng);
      StateVector ideal = encode(alpha, beta, code);

      TrialError err{ideal, -1, "-"};
      if (cfg.error_type == "pauli_sweep" || cfg.error_type == "single") {
        const PauliSpec& spec = sweep[v];
        err = TrialError{apply_pauli(ideal, spec), spec.position, kind_to_string(spec.kind)};
      } else if (cfg.error_type == "coherent") {
        CoherentError ce{random_state(code.n_declared(), rng)};
        err = TrialError{apply_coherent(ideal, ce, code), -1, "coherent"};
      } else if (cfg.error_type == "environment") {
        int pos = cfg.error_position >= 0 ? cfg.error_position : trial % n;
        EnvironmentCoupling c{pos, cfg.env_dim,
                              UnitaryOperator({2, cfg.env_dim}, random_unitary(2 * cfg.env_dim, rng)),
                              StateVector::basis({cfg.env_dim}, 0)};
        err = TrialError{couple_environment(ideal, c), pos, "environment"};
      } else if (cfg.error_type == "mixture") {
        require(cfg.route == "decode", "config: error_type mixture supports route decode only");
        const int m = code.n_declared();
        ErrorMixture mix;
        for (int a = 0; a < m; ++a) {
          Vector c = Vector::Zero(m);
          c(a) = Complex(1.0, 0.0);
          mix.components.push_back(CoherentError{std::move(c)});
          mix.weights.push_back(a == 0 ? 1.0 - cfg.error_rate
                                       : cfg.error_rate / static_cast<double>(m - 1));
        }
        DensityMatrix rho = apply_mixture(DensityMatrix::pure(ideal), mix, code);
        RecoveryOutcome out = recover_mixture(rho, code, alpha, beta);
        table.add_row({static_cast<std::int64_t>(trial), std::to_string(seed),
                       static_cast<std::int64_t>(-1), std::string("mixture"),
                       static_cast<std::int64_t>(-1), out.logical_fidelity, out.product_defect,
                       static_cast<std::int64_t>(out.logical_fidelity >= 1.0 - 1e-9 ? 1 : 0)});
        continue;
      }

      const std::uint64_t measure_seed = rng();
      int syndrome = -1;
      if (compare) {
        SyndromeRecord rec = measure_syndrome(err.corrupted, code, measure_seed);
        syndrome = rec.syndrome;
        StateVector restored_m = apply_pauli_string_inverse(
            rec.collapsed_state, code.error_table()[static_cast<std::size_t>(rec.syndrome)]);
        double fid_m = codeword_fidelity(restored_m, code, ideal);
        double fid_f;
        if (err.corrupted.dim() == ideal.dim()) {
          fid_f = codeword_fidelity(recover_fresh_ancilla(err.corrupted, code).restored, code,
                                    ideal);
        } else {
          fid_f = codeword_fidelity(fresh_ancilla_map(err.corrupted, code), code, ideal);
        }
        double diff = std::abs(fid_m - fid_f);
        table.add_row({static_cast<std::int64_t>(trial), std::to_string(seed),
                       static_cast<std::int64_t>(err.position), err.kind,
                       static_cast<std::int64_t>(syndrome), fid_m, fid_f, diff,
                       static_cast<std::int64_t>(diff <= 1e-9 ? 1 : 0)});
        continue;
      }

      double fid = 0.0;
      double defect = 0.0;
      if (cfg.route == "decode") {
        RecoveryOutcome out = recover_decode(err.corrupted, code, alpha, beta);
        fid = out.logical_fidelity;
        defect = out.product_defect;
        syndrome = dominant_syndrome(err.corrupted, code);
      } else if (cfg.route == "fresh") {
        if (err.corrupted.dim() == ideal.dim()) {
          FreshAncillaResult out = recover_fresh_ancilla(err.corrupted, code);
          fid = codeword_fidelity(out.restored, code, ideal);
          defect = out.product_defect;
        } else {
          StateVector restored = fresh_ancilla_map(err.corrupted, code);
          fid = codeword_fidelity(restored, code, ideal);
          std::vector<int> keep;
          for (int i = 0; i < n; ++i) keep.push_back(i);
          defect = 1.0 - partial_trace(restored.renormalized(), keep).purity();
        }
        syndrome = dominant_syndrome(err.corrupted, code);
      } else {  // measured
        SyndromeRecord rec = measure_syndrome(err.corrupted, code, measure_seed);
        syndrome = rec.syndrome;
        StateVector restored = apply_pauli_string_inverse(
            rec.collapsed_state, code.error_table()[static_cast<std::size_t>(rec.syndrome)]);
        fid = codeword_fidelity(restored, code, ideal);
        std::vector<int> keep;
        for (int i = 0; i < n; ++i) keep.push_back(i);
        defect = restored.dim() == ideal.dim()
                     ? 0.0
                     : 1.0 - partial_trace(restored.renormalized(), keep).purity();
      }
      table.add_row({static_cast<std::int64_t>(trial), std::to_string(seed),
                     static_cast<std::int64_t>(err.position), err.kind,
                     static_cast<std::int64_t>(syndrome), fid, defect,
                     static_cast<std::int64_t>(fid >= 1.0 - 1e-9 ? 1 : 0)});
    }
  }
  return table;
}

SymmetrizeRun run_symmetrize(const ExperimentConfig& cfg) {
  const int R = cfg.replicas;
  const StateVector ideal = StateVector::qubit(cfg.alpha, cfg.beta);
  const StateVector bad = StateVector::qubit(-std::conj(cfg.beta), std::conj(cfg.alpha));

  Json summary;
  summary["experiment"] = "symmetrize";
  summary["scenario"] = cfg.scenario;
  summary["replicas"] = R;
  summary["trials"] = cfg.trials;

  if (cfg.scenario == "drift") {
    Table table({"trial", "seed", "success_probability", "accepted", "unprotected_infidelity",
                 "projected_infidelity"});
    double sum_unprot = 0.0;
    double sum_proj = 0.0;
    int aborts = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed = derived_seed(cfg.base_seed, static_cast<std::uint64_t>(trial));
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> unif(-cfg.sigma, cfg.sigma);
      std::vector<StateVector> copies;
      double unprot = 0.0;
      for (int i = 0; i < R; ++i) {
        double theta = unif(rng);
        StateVector c = StateVector::qubit(cfg.alpha * std::exp(Complex(0.0, -theta)),
                                           cfg.beta * std::exp(Complex(0.0, theta)));
        unprot += 1.0 - fidelity(ideal, c);
        copies.push_back(std::move(c));
      }
      unprot /= R;
      Ensemble ens = Ensemble::from_copies(copies);
      ProjectionResult pr = project_symmetric(ens);
      SymmetrizeOutcome mo = symmetrize_measure(ens, rng());
      if (!mo.accepted) ++aborts;
      double proj = 0.0;
      if (pr.projected) {
        for (int i = 0; i < R; ++i) {
          proj += 1.0 - fidelity(ideal, pr.projected->reduced_copy(i));
        }
        proj /= R;
      }
      sum_unprot += unprot;
      sum_proj += proj;
      table.add_row({static_cast<std::int64_t>(trial), std::to_string(seed),
                     pr.success_probability, static_cast<std::int64_t>(mo.accepted ? 1 : 0),
                     unprot, proj});
    }
    summary["sigma"] = cfg.sigma;
    summary["mean_unprotected_infidelity"] = sum_unprot / cfg.trials;
    summary["mean_projected_infidelity"] = sum_proj / cfg.trials;
    // floor below rounding noise of the fidelity computation
    bool ratio_defined = sum_unprot / cfg.trials > 1e-14;
    summary["ratio_defined"] = ratio_defined;
    if (ratio_defined) {
      summary["infidelity_ratio"] = sum_proj / sum_unprot;
    } else {
      summary["infidelity_ratio"] = nullptr;
    }
    summary["expected_ratio"] = 1.0 / R;
    summary["abort_rate"] = static_cast<double>(aborts) / cfg.trials;
    return SymmetrizeRun{std::move(table), std::move(summary)};
  }

  if (cfg.scenario == "orthogonal") {
    Table table({"trial", "seed", "success_probability", "accepted"});
    std::vector<StateVector> copies(static_cast<std::size_t>(R), ideal);
    copies[0] = bad;
    Ensemble ens = Ensemble::from_copies(copies);
    double exact_prob = project_symmetric(ens).success_probability;
    int accepts = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed = derived_seed(cfg.base_seed, static_cast<std::uint64_t>(trial));
      SymmetrizeOutcome mo = symmetrize_measure(ens, seed);
      if (mo.accepted) ++accepts;
      table.add_row({static_cast<std::int64_t>(trial), std::to_string(seed), exact_prob,
                     static_cast<std::int64_t>(mo.accepted ? 1 : 0)});
    }
    summary["success_probability"] = exact_prob;
    summary["expected_probability"] = 1.0 / R;
    summary["accept_rate"] = static_cast<double>(accepts) / cfg.trials;
    return SymmetrizeRun{std::move(table), std::move(summary)};
  }

  // pairwise: one bad copy (index 0), round-robin pairings for cfg.rounds rounds.
  Table table({"trial", "seed", "survivors", "bad_discarded", "first_round_abort"});
  auto schedule = round_robin_schedule(R);
  long survivor_sum = 0;
  int bad_discards = 0;
  int first_round_aborts = 0;
  int r_minus_2 = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t seed = derived_seed(cfg.base_seed, static_cast<std::uint64_t>(trial));
    std::mt19937_64 rng(seed);
    std::vector<StateVector> copies(static_cast<std::size_t>(R), ideal);
    copies[0] = bad;
    Ensemble ens = Ensemble::from_copies(copies);
    bool first_abort = false;
    for (int round = 0; round < cfg.rounds; ++round) {
      PairwiseLog log =
          pairwise_round(ens, schedule[static_cast<std::size_t>(round) % schedule.size()], rng,
                         round);
      if (round == 0) {
        for (const PairOutcome& o : log.outcomes) {
          if (!o.accepted && (o.first == 0 || o.second == 0)) first_abort = true;
        }
      }
    }
    int survivors = ens.survivor_count();
    bool bad_out = ens.is_discarded(0);
    survivor_sum += survivors;
    if (bad_out) ++bad_discards;
    if (first_abort) ++first_round_aborts;
    if (survivors == R - 2) ++r_minus_2;
    table.add_row({static_cast<std::int64_t>(trial), std::to_string(seed),
                   static_cast<std::int64_t>(survivors),
                   static_cast<std::int64_t>(bad_out ? 1 : 0),
                   static_cast<std::int64_t>(first_abort ? 1 : 0)});
  }
  summary["rounds"] = cfg.rounds;
  summary["mean_survivors"] = static_cast<double>(survivor_sum) / cfg.trials;
  summary["bad_discard_rate"] = static_cast<double>(bad_discards) / cfg.trials;
  summary["first_round_abort_rate"] = static_cast<double>(first_round_aborts) / cfg.trials;
  summary["frac_survivors_r_minus_2"] = static_cast<double>(r_minus_2) / cfg.trials;
  return SymmetrizeRun{std::move(table), std::move(summary)};
}

Table run_zeno(const ExperimentConfig& cfg) {
  ZenoConfig zc;
  zc.omega = cfg.omega;
  zc.mu = cfg.mu;
  zc.nu = cfg.nu;
  zc.t_max = cfg.t_max_or_default();
  zc.samples = cfg.samples;
  zc.alpha = cfg.alpha;
  zc.beta = cfg.beta;

  std::vector<ZenoSample> traj = zeno_evolve(zc);
  ZenoReference ref = zeno_reference(zc);

  Table table({"t", "phi_plus_abs", "phi_minus_abs", "psi_plus_abs", "psi_minus_abs",
               "ref_psi_minus_abs", "deviation"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj[i];
    const auto& r = ref.samples[i];
    double dev = std::max(std::abs(s.bell[2] - r.psi_plus), std::abs(s.bell[3] - r.psi_minus));
    table.add_row({s.t, std::abs(s.bell[0]), std::abs(s.bell[1]), std::abs(s.bell[2]),
                   std::abs(s.bell[3]), std::abs(r.psi_minus), dev});
  }
  return table;
}

Table run_barrier(const ExperimentConfig& cfg) {
  QuantumCode code = build_code(cfg.code);
  int pos = cfg.error_position >= 0 ? cfg.error_position : 0;
  require(pos < code.n_physical(), "config: error_position out of range");
  PauliString drift;
  drift.factors[pos] = PauliKind::kPhase;
  // Spin convention: drift term lambda * Z_p / 2, matching the two-qubit
  // stabilization Hamiltonian.
  Matrix h = 0.5 * cfg.error_rate * pauli_string_matrix(drift, code.n_physical());
  HermitianOperator h_err(code.codeword(0).dims(), std::move(h));
  StateVector initial = encode(cfg.alpha, cfg.beta, code);

  const double tmax = cfg.t_max_or_default();
  Table table({"t", "span_weight", "leakage"});
  for (int i = 0; i <= cfg.samples; ++i) {
    double t = tmax * i / cfg.samples;
    StateVector psi = barrier_evolve(code, h_err, cfg.omega, t, initial);
    double w = std::norm(inner(code.codeword(0), psi)) + std::norm(inner(code.codeword(1), psi));
    table.add_row({t, w, 1.0 - w});
  }
  return table;
}

std::string render(const Table& table, const std::string& format) {
  if (format == "json") return table.to_json().dump(2) + "\n";
  return table.to_csv();
}

void write_output(const ExperimentConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("config: cannot write '" + cfg.out_path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace qecsym
