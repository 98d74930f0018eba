#include "qecsym/symmetrization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qecsym {

namespace {

std::vector<Eigen::Index> replica_dims(int r, Eigen::Index d) {
  return std::vector<Eigen::Index>(static_cast<std::size_t>(r), d);
}

// Basis-index permutation that moves the content of copy perm[k] into copy k.
std::vector<Eigen::Index> copy_permutation_map(int r, Eigen::Index d,
                                               const std::vector<int>& perm) {
  Eigen::Index dim = 1;
  for (int i = 0; i < r; ++i) dim *= d;
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  std::vector<Eigen::Index> digits(static_cast<std::size_t>(r));
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::Index rem = x;
    for (int k = r - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = rem % d;
      rem /= d;
    }
    Eigen::Index y = 0;
    for (int k = 0; k < r; ++k) {
      y = y * d + digits[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    }
    map[static_cast<std::size_t>(x)] = y;
  }
  return map;
}

// Swap the digits of copies a and b in the flat index.
Vector swap_copies(const Vector& amps, int r, Eigen::Index d, int a, int b) {
  Eigen::Index stride_a = 1, stride_b = 1;
  for (int k = r - 1; k > a; --k) stride_a *= d;
  for (int k = r - 1; k > b; --k) stride_b *= d;
  Vector out(amps.size());
  for (Eigen::Index x = 0; x < amps.size(); ++x) {
    Eigen::Index da = (x / stride_a) % d;
    Eigen::Index db = (x / stride_b) % d;
    Eigen::Index y = x + (db - da) * stride_a + (da - db) * stride_b;
    out(y) = amps(x);
  }
  return out;
}

}  // namespace

Ensemble::Ensemble(int replica_count, Eigen::Index copy_dim, StateVector joint)
    : replica_count_(replica_count),
      copy_dim_(copy_dim),
      joint_(std::move(joint)),
      discarded_(static_cast<std::size_t>(replica_count), false) {
  if (replica_count < 1) throw std::invalid_argument("Ensemble: replica_count must be positive");
  if (joint_.dims() != replica_dims(replica_count, copy_dim)) {
    throw std::invalid_argument("Ensemble: joint state must have R subsystems of dimension d");
  }
}

Ensemble Ensemble::from_copies(const std::vector<StateVector>& copies) {
  if (copies.empty()) throw std::invalid_argument("Ensemble: no copies");
  Eigen::Index d = copies[0].dim();
  StateVector joint = copies[0];
  for (std::size_t i = 1; i < copies.size(); ++i) {
    if (copies[i].dim() != d) throw std::invalid_argument("Ensemble: copies must share a dimension");
    joint = tensor(joint, copies[i]);
  }
  return Ensemble(static_cast<int>(copies.size()), d,
                  StateVector(replica_dims(static_cast<int>(copies.size()), d), joint.amps()));
}

int Ensemble::survivor_count() const {
  return static_cast<int>(std::count(discarded_.begin(), discarded_.end(), false));
}

std::vector<int> Ensemble::survivors() const {
  std::vector<int> out;
  for (int i = 0; i < replica_count_; ++i) {
    if (!discarded_[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

DensityMatrix Ensemble::reduced_copy(int copy) const {
  if (copy < 0 || copy >= replica_count_) throw std::invalid_argument("reduced_copy: bad index");
  return partial_trace(joint_, {copy});
}

void Ensemble::set_joint(StateVector joint) {
  if (joint.dims() != joint_.dims()) throw std::invalid_argument("set_joint: dims changed");
  joint_ = std::move(joint);
}

void Ensemble::discard_pair(int a, int b) {
  discarded_.at(static_cast<std::size_t>(a)) = true;
  discarded_.at(static_cast<std::size_t>(b)) = true;
}

const Eigen::MatrixXd& symmetric_projector(int replica_count, Eigen::Index copy_dim) {
  static std::mutex mu;
  static std::map<std::pair<int, Eigen::Index>, Eigen::MatrixXd> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(replica_count, copy_dim);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  Eigen::Index dim = 1;
  for (int i = 0; i < replica_count; ++i) dim *= copy_dim;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<int> perm(static_cast<std::size_t>(replica_count));
  std::iota(perm.begin(), perm.end(), 0);
  double count = 0.0;
  do {
    auto map = copy_permutation_map(replica_count, copy_dim, perm);
    for (Eigen::Index x = 0; x < dim; ++x) p(map[static_cast<std::size_t>(x)], x) += 1.0;
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  p /= count;
  return cache.emplace(key, std::move(p)).first->second;
}

ProjectionResult project_symmetric(const Ensemble& ens) {
  if (ens.replica_count() < 2) throw std::invalid_argument("project_symmetric: R must be >= 2");
  const Eigen::MatrixXd& p = symmetric_projector(ens.replica_count(), ens.copy_dim());
  Vector projected = p * ens.joint().amps();
  double prob = projected.squaredNorm();
  ProjectionResult out;
  out.success_probability = prob;
  if (prob > 1e-300) {
    out.projected = Ensemble(ens.replica_count(), ens.copy_dim(),
                             StateVector(ens.joint().dims(), projected / std::sqrt(prob)));
  }
  return out;
}

SymmetrizeOutcome symmetrize_measure(const Ensemble& ens, std::uint64_t rng_seed) {
  ProjectionResult pr = project_symmetric(ens);
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  bool accept = unif(rng) < pr.success_probability;
  SymmetrizeOutcome out;
  out.accepted = accept;
  out.success_probability = pr.success_probability;
  if (accept) out.projected = std::move(pr.projected);
  return out;
}

PairwiseLog pairwise_round(Ensemble& ens, const std::vector<std::pair<int, int>>& pairing,
                           std::mt19937_64& rng, int round_index) {
  std::set<int> used;
  for (const auto& [a, b] : pairing) {
    if (a == b || !used.insert(a).second || !used.insert(b).second) {
      throw std::invalid_argument("pairwise_round: overlapping pairs");
    }
    if (a < 0 || b < 0 || a >= ens.replica_count() || b >= ens.replica_count()) {
      throw std::invalid_argument("pairwise_round: pair index out of range");
    }
  }

  PairwiseLog log;
  log.round = round_index;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& [a, b] : pairing) {
    if (ens.is_discarded(a) || ens.is_discarded(b)) continue;
    Vector swapped = swap_copies(ens.joint().amps(), ens.replica_count(), ens.copy_dim(), a, b);
    Vector sym = (ens.joint().amps() + swapped) / 2.0;
    double p_accept = sym.squaredNorm();
    bool accept = unif(rng) < p_accept;
    if (accept) {
      ens.set_joint(StateVector(ens.joint().dims(), sym / std::sqrt(p_accept)));
    } else {
      Vector anti = (ens.joint().amps() - swapped) / 2.0;
      ens.set_joint(StateVector(ens.joint().dims(), anti / anti.norm()));
      ens.discard_pair(a, b);
    }
    log.outcomes.push_back({a, b, accept, p_accept});
  }
  log.survivors = ens.survivors();
  return log;
}

PairwiseLog pairwise_round(Ensemble& ens, const std::vector<std::pair<int, int>>& pairing,
                           std::uint64_t rng_seed, int round_index) {
  std::mt19937_64 rng(rng_seed);
  return pairwise_round(ens, pairing, rng, round_index);
}

std::vector<std::vector<std::pair<int, int>>> round_robin_schedule(int replica_count) {
  if (replica_count < 2 || replica_count % 2 != 0) {
    throw std::invalid_argument("round_robin_schedule: even replica count required");
  }
  std::vector<int> idx(static_cast<std::size_t>(replica_count));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::pair<int, int>>> schedule;
  for (int r = 0; r < replica_count - 1; ++r) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < replica_count / 2; ++i) {
      pairs.emplace_back(idx[static_cast<std::size_t>(i)],
                         idx[static_cast<std::size_t>(replica_count - 1 - i)]);
    }
    schedule.push_back(std::move(pairs));
    // rotate all but the first position
    std::rotate(idx.begin() + 1, idx.end() - 1, idx.end());
  }
  return schedule;
}

namespace {

// H0 = (1 − J²/2)Ω on two qubits; zero on the triplet, Ω on the singlet.
Matrix zeno_hamiltonian(const ZenoConfig& cfg) {
  Matrix h = Matrix::Zero(4, 4);
  StateVector singlet = bell_state(BellIndex::kPsiMinus);
  h += cfg.omega * (singlet.amps() * singlet.amps().adjoint());
  // H1 = μ Z_A/2 + ν Z_B/2 (spin-operator convention)
  Eigen::Vector4d za(1, 1, -1, -1), zb(1, -1, 1, -1);
  h.diagonal() += (0.5 * (cfg.mu * za + cfg.nu * zb)).cast<Complex>();
  return h;
}

}  // namespace

std::vector<ZenoSample> zeno_evolve(const ZenoConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("zeno_evolve: samples must be positive");
  if (std::abs(std::norm(cfg.alpha) + std::norm(cfg.beta) - 1.0) > kNormTol) {
    throw std::invalid_argument("zeno_evolve: |alpha|^2+|beta|^2 must be 1");
  }
  StateVector copy = StateVector::qubit(cfg.alpha, cfg.beta);
  StateVector initial(std::vector<Eigen::Index>{2, 2}, tensor(copy, copy).amps());

  Eigen::SelfAdjointEigenSolver<Matrix> es(zeno_hamiltonian(cfg));
  Vector c0 = es.eigenvectors().adjoint() * initial.amps();

  std::vector<ZenoSample> out;
  out.reserve(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) {
    double t = cfg.samples == 1 ? 0.0 : cfg.t_max * i / (cfg.samples - 1);
    Vector c = c0;
    for (Eigen::Index k = 0; k < 4; ++k) {
      c(k) *= std::exp(Complex(0.0, -es.eigenvalues()(k) * t));
    }
    StateVector state({2, 2}, es.eigenvectors() * c);
    auto bell = bell_decompose(state);
    out.push_back(ZenoSample{t, std::move(state), bell});
  }
  return out;
}

ZenoReference zeno_reference(const ZenoConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("zeno_reference: samples must be positive");
  const double eta = cfg.eta();
  const double omega = cfg.omega;
  ZenoReference out;
  out.perturbative_regime = omega > 0.0 && std::abs(eta / omega) <= 0.1;

  Complex psi_plus0 = std::sqrt(2.0) * cfg.alpha * cfg.beta;
  out.samples.reserve(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) {
    double t = cfg.samples == 1 ? 0.0 : cfg.t_max * i / (cfg.samples - 1);
    Complex plus = std::exp(Complex(0.0, eta * eta * t / omega)) * psi_plus0;
    Complex minus = (eta / omega) * (std::exp(Complex(0.0, -omega * t)) - 1.0) * psi_plus0;
    out.samples.push_back(ZenoReferenceSample{t, plus, minus});
  }
  return out;
}

StateVector barrier_evolve(const QuantumCode& code, const HermitianOperator& h_err,
                           double omega, double t, const StateVector& initial) {
  const Eigen::Index dim = Eigen::Index(1) << code.n_physical();
  if (h_err.dim() != dim || initial.dim() != dim) {
    throw std::invalid_argument("barrier_evolve: dimensions must match the code space");
  }
  Matrix h = h_err.entries();
  h += omega * Matrix::Identity(dim, dim);
  h -= omega * (code.codeword(0).amps() * code.codeword(0).amps().adjoint());
  h -= omega * (code.codeword(1).amps() * code.codeword(1).amps().adjoint());
  return evolve(initial, HermitianOperator(initial.dims(), std::move(h)), t);
}

}  // namespace qecsym
