#include "qecsym/noise.hpp"

#include "qecsym/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace qecsym;

TEST_CASE("single-qubit fault actions") {
  StateVector s = StateVector::qubit(0.6, 0.8);
  StateVector bit = apply_pauli(s, PauliSpec{0, PauliKind::kBit});
  CHECK(bit.amps()(0) == Complex(0.8, 0.0));
  CHECK(bit.amps()(1) == Complex(0.6, 0.0));
  StateVector phase = apply_pauli(s, PauliSpec{0, PauliKind::kPhase});
  CHECK(phase.amps()(1) == Complex(-0.8, 0.0));
  // combined fault: |0> -> |1>, |1> -> -|0>
  StateVector both = apply_pauli(s, PauliSpec{0, PauliKind::kBoth});
  CHECK(both.amps()(0) == Complex(-0.8, 0.0));
  CHECK(both.amps()(1) == Complex(0.6, 0.0));
}

TEST_CASE("coherent error is linear over the syndrome basis") {
  QuantumCode code = build_code(CodeKind::kFiveQubit);
  std::mt19937_64 rng(41);
  CoherentError err{random_state(code.n_declared(), rng)};
  auto [alpha, beta] = random_qubit(rng);
  StateVector direct = apply_coherent(encode(alpha, beta, code), err, code);
  Vector expect = Vector::Zero(32);
  for (int a = 0; a < code.n_declared(); ++a) {
    expect += err.coeffs(a) * (alpha * code.syndrome_vector(0, a).amps() +
                               beta * code.syndrome_vector(1, a).amps());
  }
  CHECK((direct.amps() - expect).norm() < 1e-12);
  CHECK(direct.norm() == doctest::Approx(1.0));
}

TEST_CASE("coherent error rejects states outside the spanned space") {
  // the three-qubit and perfect codes span the whole physical space, so the
  // negative case needs a code with undeclared room: a double bit flip on
  // the nine-qubit code
  QuantumCode code = build_code(CodeKind::kShor9);
  Vector c = Vector::Zero(code.n_declared());
  c(0) = 1.0;
  StateVector corrupted = apply_pauli(
      apply_pauli(code.codeword(0), PauliSpec{0, PauliKind::kBit}), PauliSpec{3, PauliKind::kBit});
  CHECK_THROWS_AS(apply_coherent(corrupted, CoherentError{c}, code), std::invalid_argument);
}

TEST_CASE("coherent operator agrees with the state-level action") {
  QuantumCode code = build_code(CodeKind::kBitflip3);
  std::mt19937_64 rng(7);
  CoherentError err{random_state(code.n_declared(), rng)};
  StateVector psi = encode(Complex(0.8, 0.0), Complex(0.0, 0.6), code);
  Matrix op = coherent_operator(err, code);
  CHECK(((op * psi.amps()) - apply_coherent(psi, err, code).amps()).norm() < 1e-12);
}

TEST_CASE("mixture preserves trace and hermiticity") {
  QuantumCode code = build_code(CodeKind::kBitflip3);
  ErrorMixture mix;
  for (int a = 0; a < 4; ++a) {
    Vector c = Vector::Zero(4);
    c(a) = 1.0;
    mix.components.push_back(CoherentError{c});
    mix.weights.push_back(a == 0 ? 0.91 : 0.03);
  }
  DensityMatrix rho = DensityMatrix::pure(encode(1.0, 0.0, code));
  DensityMatrix out = apply_mixture(rho, mix, code);
  CHECK(std::abs(out.entries().trace() - Complex(1.0, 0.0)) < 1e-12);
  CHECK((out.entries() - out.entries().adjoint()).norm() < 1e-12);
}

TEST_CASE("mixture weights must sum to one") {
  QuantumCode code = build_code(CodeKind::kBitflip3);
  ErrorMixture mix;
  Vector c = Vector::Zero(4);
  c(0) = 1.0;
  mix.components.push_back(CoherentError{c});
  mix.weights.push_back(0.5);
  DensityMatrix rho = DensityMatrix::pure(encode(1.0, 0.0, code));
  CHECK_THROWS_AS(apply_mixture(rho, mix, code), std::invalid_argument);
}

TEST_CASE("environment coupling appends a subsystem and entangles one qubit") {
  QuantumCode code = build_code(CodeKind::kFiveQubit);
  std::mt19937_64 rng(11);
  EnvironmentCoupling c{2, 2, UnitaryOperator({2, 2}, random_unitary(4, rng)),
                        StateVector::basis({2}, 0)};
  StateVector joint = couple_environment(encode(0.6, 0.8, code), c);
  CHECK(joint.subsystems() == 6);
  CHECK(joint.dims().back() == 2);
  CHECK(joint.norm() == doctest::Approx(1.0));
}

TEST_CASE("error expansion splits a coupled basis codeword into four branches") {
  QuantumCode code = build_code(CodeKind::kFiveQubit);
  std::mt19937_64 rng(23);
  const int pos = 3;
  EnvironmentCoupling c{pos, 2, UnitaryOperator({2, 2}, random_unitary(4, rng)),
                        StateVector::basis({2}, 0)};
  for (int z = 0; z < 2; ++z) {
    StateVector joint = couple_environment(code.codeword(z), c);
    ErrorExpansion ex = error_expand(joint, code, pos);
    CHECK(ex.residual < 1e-10);
    // rebuild: Z_0⊗v_correct + Z_r⊗v_phase + Z_s⊗v_bit + Z_t⊗v_both
    PauliString phase, bit, both;
    phase.factors[pos] = PauliKind::kPhase;
    bit.factors[pos] = PauliKind::kBit;
    both.factors[pos] = PauliKind::kBoth;
    Vector rebuilt = Vector::Zero(64);
    auto addpart = [&](const PauliString& p, const Vector& env) {
      StateVector corrupted = apply_pauli_string(code.codeword(z), p);
      for (Eigen::Index i = 0; i < 32; ++i) {
        for (Eigen::Index e = 0; e < 2; ++e) rebuilt(i * 2 + e) += corrupted.amps()(i) * env(e);
      }
    };
    addpart(PauliString{}, ex.v_correct);
    addpart(phase, ex.v_phase);
    addpart(bit, ex.v_bit);
    addpart(both, ex.v_both);
    CHECK((rebuilt - joint.amps()).norm() < 1e-10);
  }
}
