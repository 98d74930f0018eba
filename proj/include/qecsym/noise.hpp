#pragma once

#include "qecsym/codes.hpp"
#include "qecsym/statekit.hpp"

#include <vector>

namespace qecsym {

/// Coherent superposition of table errors: |Z_0> -> Σ_a c_a |Z_a>.
/// coeffs has one entry per declared syndrome and unit norm.
struct CoherentError {
  Vector coeffs;
};

/// Probabilistic mixture of coherent errors.
struct ErrorMixture {
  std::vector<double> weights;
  std::vector<CoherentError> components;
};

/// Unitary entanglement of one physical qubit with an environment of
/// dimension env_dim, initially in env_initial.
struct EnvironmentCoupling {
  int position = 0;
  Eigen::Index env_dim = 2;
  UnitaryOperator interaction;  // acts on qubit ⊗ environment
  StateVector env_initial;
};

StateVector apply_pauli(const StateVector& state, const PauliSpec& e);

/// Σ_a c_a · (table operator a) · state, linear over logical superpositions.
/// The input must lie in the span of the code's syndrome basis.
StateVector apply_coherent(const StateVector& codeword_state, const CoherentError& err,
                           const QuantumCode& code);

/// Σ_j p_j U_j ρ U_j† with U_j the coherent operator of component j.
DensityMatrix apply_mixture(const DensityMatrix& rho, const ErrorMixture& mix,
                            const QuantumCode& code);

/// Appends the environment as the last subsystem and applies the
/// interaction to (target qubit, environment).
StateVector couple_environment(const StateVector& codeword_state,
                               const EnvironmentCoupling& c);

/// Environment-space coefficients of the four single-position error
/// branches of a basis-codeword ⊗ environment state:
/// joint = Z_0⊗v_correct + Z_r⊗v_phase + Z_s⊗v_bit + Z_t⊗v_both.
struct ErrorExpansion {
  Vector v_correct;  // (μ+τ)/2
  Vector v_phase;    // (μ−τ)/2
  Vector v_bit;      // (ν+σ)/2
  Vector v_both;     // (ν−σ)/2
  double residual = 0.0;  // norm of the part outside the spanned subspace
};

ErrorExpansion error_expand(const StateVector& joint, const QuantumCode& code, int position);

/// Dense full-space operator of a coherent error (for density-matrix work).
Matrix coherent_operator(const CoherentError& err, const QuantumCode& code);

}  // namespace qecsym
