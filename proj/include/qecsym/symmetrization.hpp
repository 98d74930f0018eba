#pragma once

#include "qecsym/codes.hpp"
#include "qecsym/statekit.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace qecsym {

/// R replicas of one d-dimensional system, carried as a single joint pure
/// state. Copies discarded by pairwise symmetrization stay in the joint
/// state but are excluded from pairings and survivor counts.
class Ensemble {
public:
  Ensemble(int replica_count, Eigen::Index copy_dim, StateVector joint);

  /// Product ensemble from per-copy states (all of equal dimension).
  static Ensemble from_copies(const std::vector<StateVector>& copies);

  int replica_count() const { return replica_count_; }
  Eigen::Index copy_dim() const { return copy_dim_; }
  const StateVector& joint() const { return joint_; }
  const std::vector<bool>& discarded() const { return discarded_; }

  int survivor_count() const;
  std::vector<int> survivors() const;
  bool is_discarded(int copy) const { return discarded_.at(static_cast<std::size_t>(copy)); }

  /// Reduced state of one copy.
  DensityMatrix reduced_copy(int copy) const;

  void set_joint(StateVector joint);
  void discard_pair(int a, int b);

private:
  int replica_count_;
  Eigen::Index copy_dim_;
  StateVector joint_;
  std::vector<bool> discarded_;
};

/// Projector onto the symmetric subspace of R copies of dimension d,
/// (1/R!) Σ_π π. Real symmetric matrix of size d^R; cached per (R, d).
const Eigen::MatrixXd& symmetric_projector(int replica_count, Eigen::Index copy_dim);

struct ProjectionResult {
  std::optional<Ensemble> projected;  // empty when success_probability is 0
  double success_probability = 0.0;
};

/// Projects the joint state onto the symmetric subspace of all copies;
/// success_probability is the squared norm before renormalization.
ProjectionResult project_symmetric(const Ensemble& ens);

struct SymmetrizeOutcome {
  bool accepted = false;
  double success_probability = 0.0;
  std::optional<Ensemble> projected;  // set on accept
};

/// Measurement-based symmetrization: Bernoulli(success_probability).
SymmetrizeOutcome symmetrize_measure(const Ensemble& ens, std::uint64_t rng_seed);

struct PairOutcome {
  int first = 0;
  int second = 0;
  bool accepted = false;
  double accept_probability = 0.0;
};

struct PairwiseLog {
  int round = 0;
  std::vector<PairOutcome> outcomes;
  std::vector<int> survivors;
};

/// One pairwise-symmetrization round: each disjoint pair is projected onto
/// its two-copy symmetric subspace; on abort both copies are discarded.
/// Pairs with an already-discarded member are skipped.
PairwiseLog pairwise_round(Ensemble& ens, const std::vector<std::pair<int, int>>& pairing,
                           std::mt19937_64& rng, int round_index = 0);
PairwiseLog pairwise_round(Ensemble& ens, const std::vector<std::pair<int, int>>& pairing,
                           std::uint64_t rng_seed, int round_index = 0);

/// Round-robin (circle method) pairing schedule for an even number of
/// copies; R-1 rounds, each copy meets every other exactly once.
std::vector<std::vector<std::pair<int, int>>> round_robin_schedule(int replica_count);

/// Continuous-Zeno stabilization of a qubit pair. H = H0 + H1 with
/// H0 = (1 − J²/2)Ω (vanishes on the triplet, Ω on the singlet) and
/// H1 = μ·Z_A/2 + ν·Z_B/2 in the spin-operator convention, so the
/// Psi± block Hamiltonian is [[0, η], [η, Ω]] with η = (μ−ν)/2.
struct ZenoConfig {
  double omega = 100.0;
  double mu = 0.0;
  double nu = 0.0;
  double t_max = 1.0;
  int samples = 100;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  double epsilon() const { return (mu + nu) / 2.0; }
  double eta() const { return (mu - nu) / 2.0; }
};

struct ZenoSample {
  double t = 0.0;
  StateVector state;
  std::array<Complex, 4> bell;  // Phi+, Phi-, Psi+, Psi-
};

std::vector<ZenoSample> zeno_evolve(const ZenoConfig& cfg);

/// First-order prediction: Psi+ coefficient e^{iη²t/Ω}·Psi+(0), Psi-
/// coefficient (η/Ω)(e^{−iΩt}−1)·Psi+(0).
struct ZenoReferenceSample {
  double t = 0.0;
  Complex psi_plus;
  Complex psi_minus;
};

struct ZenoReference {
  std::vector<ZenoReferenceSample> samples;
  bool perturbative_regime = true;  // false when η/Ω > 0.1
};

ZenoReference zeno_reference(const ZenoConfig& cfg);

/// Evolution under h_err plus the codeword barrier
/// Ω(1 − |0_0><0_0| − |1_0><1_0|).
StateVector barrier_evolve(const QuantumCode& code, const HermitianOperator& h_err,
                           double omega, double t, const StateVector& initial);

}  // namespace qecsym
