#include "qecsym/statekit.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace qecsym;

namespace {
const Complex kI{0.0, 1.0};
}

TEST_CASE("basis index ordering is most-significant-first") {
  // |0>|1>|0>|0>|1> -> binary 01001 -> index 9
  StateVector s = StateVector::basis({2, 2, 2, 2, 2}, 9);
  CHECK(s.amps()(9) == Complex(1.0, 0.0));
  StateVector q0 = StateVector::qubit(1.0, 0.0);
  StateVector q1 = StateVector::qubit(0.0, 1.0);
  StateVector t = tensor(tensor(tensor(tensor(q0, q1), q0), q0), q1);
  CHECK((t.amps() - s.amps()).norm() == doctest::Approx(0.0));
}

TEST_CASE("state vector validates norm") {
  Vector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector({2}, v), std::invalid_argument);
  StateVector ok({2}, v, false);
  CHECK(ok.renormalized().norm() == doctest::Approx(1.0));
}

TEST_CASE("inner product is conjugate-linear in the first slot") {
  StateVector a = StateVector::qubit(kI / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  StateVector b = StateVector::qubit(1.0, 0.0);
  CHECK(inner(a, b) == Complex(-kI / std::sqrt(2.0)));
  CHECK(fidelity(a, b) == doctest::Approx(0.5));
}

TEST_CASE("apply_unitary acts on the addressed subsystem only") {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  UnitaryOperator flip({2}, x);
  StateVector s = StateVector::basis({2, 2, 2}, 0b000);
  StateVector out = apply_unitary(s, flip, {1});
  CHECK(out.amps()(0b010) == Complex(1.0, 0.0));
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  DensityMatrix rho = partial_trace(bell_state(BellIndex::kPhiPlus), {0});
  CHECK((rho.entries() - 0.5 * Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
  CHECK(rho.purity() == doctest::Approx(0.5));
}

TEST_CASE("partial trace agrees between pure and mixed entry points") {
  StateVector s({2, 2}, (Vector(4) << 0.5, 0.5, 0.5, -0.5).finished());
  DensityMatrix a = partial_trace(s, {1});
  DensityMatrix b = partial_trace(DensityMatrix::pure(s), {1});
  CHECK((a.entries() - b.entries()).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("evolve matches the closed-form two-level solution") {
  // H = [[0, g], [g, W]] starting from (1, 0); Rabi frequency sqrt(W^2+4g^2).
  const double g = 1.0, w = 100.0;
  const double wr = std::sqrt(w * w + 4.0 * g * g);
  Matrix h(2, 2);
  h << 0.0, g, g, w;
  HermitianOperator ham({2}, h);
  StateVector s0 = StateVector::qubit(1.0, 0.0);
  for (double t : {0.01, 0.05, 0.1, 0.31}) {
    StateVector st = evolve(s0, ham, t);
    Complex phase = std::exp(-kI * w * t / 2.0);
    Complex c1 = phase * (std::cos(wr * t / 2.0) + kI * (w / wr) * std::sin(wr * t / 2.0));
    Complex c2 = -kI * (2.0 * g / wr) * phase * std::sin(wr * t / 2.0);
    CHECK(std::abs(st.amps()(0) - c1) < 1e-10);
    CHECK(std::abs(st.amps()(1) - c2) < 1e-10);
  }
}

TEST_CASE("bell basis is orthonormal and decompose inverts it") {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex ip = inner(bell_state(BellIndex(i)), bell_state(BellIndex(j)));
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  }
  StateVector s({2, 2}, (Vector(4) << 0.5, 0.5 * kI, -0.5, 0.5).finished());
  auto c = bell_decompose(s);
  Vector rebuilt = Vector::Zero(4);
  for (int i = 0; i < 4; ++i) rebuilt += c[static_cast<std::size_t>(i)] * bell_state(BellIndex(i)).amps();
  CHECK((rebuilt - s.amps()).norm() < 1e-14);
}

TEST_CASE("unitary construction rejects non-unitary entries") {
  Matrix m(2, 2);
  m << 1, 1, 0, 1;
  CHECK_THROWS_AS(UnitaryOperator({2}, m), std::invalid_argument);
}
