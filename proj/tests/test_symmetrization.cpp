#include "qecsym/symmetrization.hpp"

#include "qecsym/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace qecsym;

namespace {

Ensemble one_bad_copy(int r) {
  StateVector good = StateVector::qubit(1.0, 0.0);
  StateVector bad = StateVector::qubit(0.0, 1.0);
  std::vector<StateVector> copies(static_cast<std::size_t>(r), good);
  copies[0] = bad;
  return Ensemble::from_copies(copies);
}

}  // namespace

TEST_CASE("identical copies are a fixed point of the projection") {
  StateVector c = StateVector::qubit(Complex(0.6, 0.0), Complex(0.0, 0.8));
  Ensemble ens = Ensemble::from_copies({c, c, c});
  ProjectionResult pr = project_symmetric(ens);
  CHECK(pr.success_probability == doctest::Approx(1.0));
  REQUIRE(pr.projected.has_value());
  CHECK((pr.projected->joint().amps() - ens.joint().amps()).norm() < 1e-12);
}

TEST_CASE("one orthogonal copy projects with probability 1/R") {
  for (int r : {2, 3, 5}) {
    CHECK(std::abs(project_symmetric(one_bad_copy(r)).success_probability - 1.0 / r) < 1e-12);
  }
}

TEST_CASE("two-copy |0>|1> spreads the error uniformly") {
  Ensemble ens = Ensemble::from_copies(
      {StateVector::qubit(1.0, 0.0), StateVector::qubit(0.0, 1.0)});
  ProjectionResult pr = project_symmetric(ens);
  CHECK(pr.success_probability == doctest::Approx(0.5));
  Vector expect = Vector::Zero(4);
  expect(0b01) = expect(0b10) = 1.0 / std::sqrt(2.0);
  CHECK((pr.projected->joint().amps() - expect).norm() < 1e-12);
}

TEST_CASE("the singlet projects to nothing") {
  Ensemble ens(2, 2, bell_state(BellIndex::kPsiMinus));
  ProjectionResult pr = project_symmetric(ens);
  CHECK(pr.success_probability == doctest::Approx(0.0));
  CHECK_FALSE(pr.projected.has_value());
  CHECK_FALSE(symmetrize_measure(ens, 1).accepted);
}

TEST_CASE("projector is idempotent, hermitian, and collective-unitary invariant") {
  for (int r : {2, 3}) {
    const Eigen::MatrixXd& p = symmetric_projector(r, 2);
    CHECK((p * p - p).norm() < 1e-10);
    CHECK((p - p.transpose()).norm() < 1e-10);
    std::mt19937_64 rng(13);
    Matrix u1 = random_unitary(2, rng);
    Matrix u = u1;
    for (int k = 1; k < r; ++k) {
      Matrix next(u.rows() * 2, u.cols() * 2);
      next.setZero();
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          next.block(i * u.rows(), j * u.cols(), u.rows(), u.cols()) = u1(i, j) * u;
        }
      }
      u = std::move(next);
    }
    CHECK((u * p.cast<Complex>() - p.cast<Complex>() * u).norm() < 1e-10);
  }
}

TEST_CASE("identical copies always pass the measurement") {
  StateVector c = StateVector::qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  Ensemble ens = Ensemble::from_copies({c, c});
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 99ULL}) {
    CHECK(symmetrize_measure(ens, seed).accepted);
  }
}

TEST_CASE("one-orthogonal accept frequency tracks 1/R") {
  const int r = 2, trials = 4000;
  Ensemble ens = one_bad_copy(r);
  int accepts = 0;
  for (int t = 0; t < trials; ++t) {
    if (symmetrize_measure(ens, derived_seed(77, static_cast<std::uint64_t>(t))).accepted) {
      ++accepts;
    }
  }
  double freq = static_cast<double>(accepts) / trials;
  double sigma3 = 3.0 * std::sqrt(0.5 * 0.5 / trials);
  CHECK(std::abs(freq - 0.5) < sigma3);
}

TEST_CASE("pairwise round keeps identical ensembles intact") {
  StateVector c = StateVector::qubit(Complex(0.6, 0.0), Complex(0.0, 0.8));
  Ensemble ens = Ensemble::from_copies({c, c, c, c});
  PairwiseLog log = pairwise_round(ens, {{0, 3}, {1, 2}}, 5ULL);
  CHECK(ens.survivor_count() == 4);
  for (const PairOutcome& o : log.outcomes) {
    CHECK(o.accepted);
    CHECK(o.accept_probability == doctest::Approx(1.0));
  }
}

TEST_CASE("pairwise abort discards the whole pair and never resurrects it") {
  Ensemble ens = one_bad_copy(4);
  // force an abort eventually; aborted pair must stay out of later rounds
  std::mt19937_64 rng(6);
  auto schedule = round_robin_schedule(4);
  for (int round = 0; round < 6; ++round) {
    PairwiseLog log = pairwise_round(ens, schedule[static_cast<std::size_t>(round) % 3], rng,
                                     round);
    for (const PairOutcome& o : log.outcomes) {
      CHECK_FALSE(ens.is_discarded(o.first) != ens.is_discarded(o.second));
    }
  }
  CHECK((ens.survivor_count() == 4 || ens.survivor_count() == 2));
}

TEST_CASE("pairwise round rejects overlapping pairs") {
  Ensemble ens = one_bad_copy(4);
  CHECK_THROWS_AS(pairwise_round(ens, {{0, 1}, {1, 2}}, 1ULL), std::invalid_argument);
}

TEST_CASE("round robin schedule pairs everyone exactly once") {
  const int r = 8;
  auto schedule = round_robin_schedule(r);
  REQUIRE(schedule.size() == r - 1);
  std::set<std::pair<int, int>> seen;
  for (const auto& round : schedule) {
    REQUIRE(round.size() == r / 2);
    std::set<int> used;
    for (auto [a, b] : round) {
      CHECK(used.insert(a).second);
      CHECK(used.insert(b).second);
      auto key = std::minmax(a, b);
      CHECK(seen.insert({key.first, key.second}).second);
    }
  }
  CHECK(seen.size() == r * (r - 1) / 2);
}

TEST_CASE("equal drift rates never populate the singlet") {
  ZenoConfig cfg;
  cfg.omega = 50.0;
  cfg.mu = cfg.nu = 2.0;
  cfg.t_max = 1.0;
  cfg.samples = 200;
  cfg.alpha = cfg.beta = 1.0 / std::sqrt(2.0);
  for (const ZenoSample& s : zeno_evolve(cfg)) {
    CHECK(std::abs(s.bell[3]) < 1e-12);
  }
}

TEST_CASE("zero drift freezes all Bell coefficients but the singlet phase") {
  ZenoConfig cfg;
  cfg.omega = 10.0;
  cfg.mu = cfg.nu = 0.0;
  cfg.t_max = 2.0;
  cfg.samples = 50;
  cfg.alpha = Complex(0.6, 0.0);
  cfg.beta = Complex(0.0, 0.8);
  auto traj = zeno_evolve(cfg);
  for (const ZenoSample& s : traj) {
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(s.bell[static_cast<std::size_t>(k)] -
                     traj.front().bell[static_cast<std::size_t>(k)]) < 1e-10);
    }
  }
}

TEST_CASE("stabilized pair matches the two-level closed form") {
  // Psi± block Hamiltonian [[0, g], [g, W]] with g = (mu-nu)/2, W = omega.
  ZenoConfig cfg;
  cfg.omega = 100.0;
  cfg.mu = 1.0;
  cfg.nu = -1.0;
  cfg.t_max = 10.0 * std::numbers::pi / cfg.omega;
  cfg.samples = 101;
  cfg.alpha = cfg.beta = 1.0 / std::sqrt(2.0);
  const double g = cfg.eta(), w = cfg.omega;
  const double wr = std::sqrt(w * w + 4.0 * g * g);
  const Complex i01{0.0, 1.0};
  Complex psip0 = std::sqrt(2.0) * cfg.alpha * cfg.beta;
  for (const ZenoSample& s : zeno_evolve(cfg)) {
    Complex phase = std::exp(-i01 * w * s.t / 2.0);
    Complex c1 = phase * (std::cos(wr * s.t / 2.0) + i01 * (w / wr) * std::sin(wr * s.t / 2.0));
    Complex c2 = -i01 * (2.0 * g / wr) * phase * std::sin(wr * s.t / 2.0);
    CHECK(std::abs(s.bell[2] - c1 * psip0) < 1e-10);
    CHECK(std::abs(s.bell[3] - c2 * psip0) < 1e-10);
  }
}

TEST_CASE("reference trajectory basics") {
  ZenoConfig cfg;
  cfg.omega = 100.0;
  cfg.mu = cfg.nu = 1.0;  // eta = 0
  cfg.t_max = 0.5;
  cfg.samples = 20;
  cfg.alpha = cfg.beta = 1.0 / std::sqrt(2.0);
  ZenoReference ref = zeno_reference(cfg);
  CHECK(ref.perturbative_regime);
  for (const auto& s : ref.samples) {
    CHECK(std::abs(s.psi_minus) == 0.0);
    CHECK(std::abs(s.psi_plus - std::sqrt(2.0) * cfg.alpha * cfg.beta) < 1e-14);
  }
  cfg.mu = 30.0;
  cfg.nu = -30.0;  // eta/omega > 0.1
  CHECK_FALSE(zeno_reference(cfg).perturbative_regime);
}

TEST_CASE("reference singlet peaks at twice the drift ratio") {
  ZenoConfig cfg;
  cfg.omega = 100.0;
  cfg.mu = 1.0;
  cfg.nu = -1.0;
  cfg.t_max = 2.0 * std::numbers::pi / cfg.omega;
  cfg.samples = 2001;
  cfg.alpha = cfg.beta = 1.0 / std::sqrt(2.0);
  double peak = 0.0;
  double t_peak = 0.0;
  for (const auto& s : zeno_reference(cfg).samples) {
    if (std::abs(s.psi_minus) > peak) {
      peak = std::abs(s.psi_minus);
      t_peak = s.t;
    }
  }
  double psip0 = std::sqrt(2.0) * 0.5;
  CHECK(peak == doctest::Approx(2.0 * (cfg.eta() / cfg.omega) * psip0).epsilon(1e-6));
  CHECK(t_peak == doctest::Approx(std::numbers::pi / cfg.omega).epsilon(1e-3));
}

TEST_CASE("symmetric drift on two copies is projection-invariant") {
  const double theta = 0.015;
  Complex a = std::exp(Complex(0.0, -theta)) / std::sqrt(2.0);
  Complex b = std::exp(Complex(0.0, theta)) / std::sqrt(2.0);
  StateVector drifted = StateVector::qubit(a, b);
  Ensemble ens = Ensemble::from_copies({drifted, drifted});
  ProjectionResult pr = project_symmetric(ens);
  CHECK(std::abs(pr.success_probability - 1.0) < 1e-10);
  CHECK((pr.projected->joint().amps() - ens.joint().amps()).norm() < 1e-10);
}

TEST_CASE("barrier leaves codewords alone and vanishes with omega") {
  QuantumCode code = build_code(CodeKind::kFiveQubit);
  HermitianOperator zero = HermitianOperator::zero(code.codeword(0).dims());
  StateVector out = barrier_evolve(code, zero, 40.0, 0.7, code.codeword(0));
  CHECK(fidelity(code.codeword(0), out) == doctest::Approx(1.0));

  std::mt19937_64 rng(21);
  Matrix g = random_unitary(32, rng);
  Matrix h = g + g.adjoint();
  HermitianOperator h_err(code.codeword(0).dims(), h);
  StateVector psi = encode(Complex(0.6, 0.0), Complex(0.8, 0.0), code);
  StateVector a = barrier_evolve(code, h_err, 0.0, 0.3, psi);
  StateVector b = evolve(psi, h_err, 0.3);
  CHECK((a.amps() - b.amps()).norm() < 1e-10);
}
