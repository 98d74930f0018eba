#include "qecsym/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace qecsym {

namespace {

void check_coherent(const CoherentError& err, const QuantumCode& code) {
  if (err.coeffs.size() != code.n_declared()) {
    throw std::invalid_argument("CoherentError: one coefficient per declared syndrome expected");
  }
  if (std::abs(err.coeffs.squaredNorm() - 1.0) > kNormTol) {
    throw std::invalid_argument("CoherentError: coefficients must have unit norm");
  }
}

// Residual of the input outside span{|Z_a>} of the declared table.
double span_residual(const StateVector& state, const QuantumCode& code) {
  Vector rem = state.amps();
  for (int z = 0; z < 2; ++z) {
    for (int a = 0; a < code.n_declared(); ++a) {
      Vector b = code.syndrome_vector(z, a).amps();
      rem -= b.dot(rem) * b;
    }
  }
  return rem.norm();
}

}  // namespace

StateVector apply_pauli(const StateVector& state, const PauliSpec& e) {
  if (e.position < 0 || e.position >= state.subsystems() ||
      state.dims()[static_cast<std::size_t>(e.position)] != 2) {
    throw std::invalid_argument("apply_pauli: invalid position");
  }
  PauliString p;
  p.factors[e.position] = e.kind;
  return apply_pauli_string(state, p);
}

StateVector apply_coherent(const StateVector& codeword_state, const CoherentError& err,
                           const QuantumCode& code) {
  check_coherent(err, code);
  if (codeword_state.dim() != code.codeword(0).dim()) {
    throw std::invalid_argument("apply_coherent: state does not live on the code space");
  }
  if (span_residual(codeword_state, code) > 1e-9) {
    throw std::invalid_argument("apply_coherent: input outside the code-reachable space");
  }
  Vector out = Vector::Zero(codeword_state.dim());
  for (int a = 0; a < code.n_declared(); ++a) {
    out += err.coeffs(a) *
           apply_pauli_string(codeword_state, code.error_table()[static_cast<std::size_t>(a)]).amps();
  }
  return StateVector(codeword_state.dims(), std::move(out), codeword_state.normalized());
}

Matrix coherent_operator(const CoherentError& err, const QuantumCode& code) {
  check_coherent(err, code);
  const Eigen::Index dim = Eigen::Index(1) << code.n_physical();
  Matrix u = Matrix::Zero(dim, dim);
  for (int a = 0; a < code.n_declared(); ++a) {
    u += err.coeffs(a) *
         pauli_string_matrix(code.error_table()[static_cast<std::size_t>(a)], code.n_physical());
  }
  return u;
}

DensityMatrix apply_mixture(const DensityMatrix& rho, const ErrorMixture& mix,
                            const QuantumCode& code) {
  if (mix.weights.size() != mix.components.size() || mix.weights.empty()) {
    throw std::invalid_argument("apply_mixture: weights and components must match");
  }
  double total = 0.0;
  for (double p : mix.weights) {
    if (p <= 0.0) throw std::invalid_argument("apply_mixture: weights must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol) {
    throw std::invalid_argument("apply_mixture: weights must sum to 1");
  }
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (std::size_t j = 0; j < mix.components.size(); ++j) {
    Matrix u = coherent_operator(mix.components[j], code);
    out += mix.weights[j] * (u * rho.entries() * u.adjoint());
  }
  return DensityMatrix(rho.dims(), std::move(out), false);
}

StateVector couple_environment(const StateVector& codeword_state, const EnvironmentCoupling& c) {
  if (c.position < 0 || c.position >= codeword_state.subsystems()) {
    throw std::invalid_argument("couple_environment: invalid position");
  }
  if (c.interaction.dim() != 2 * c.env_dim) {
    throw std::invalid_argument("couple_environment: interaction must act on qubit ⊗ environment");
  }
  if (std::abs(c.env_initial.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("couple_environment: env_initial must be normalized");
  }
  StateVector joint = tensor(codeword_state, c.env_initial);
  int env_index = codeword_state.subsystems();
  return apply_unitary(joint, c.interaction, {c.position, env_index});
}

ErrorExpansion error_expand(const StateVector& joint, const QuantumCode& code, int position) {
  const Eigen::Index code_dim = Eigen::Index(1) << code.n_physical();
  if (joint.dim() % code_dim != 0) {
    throw std::invalid_argument("error_expand: joint must be codeword space ⊗ environment");
  }
  const Eigen::Index env_dim = joint.dim() / code_dim;

  // Branch vectors in the original qubit order: Z_0, Z_r, Z_s, Z_t are the
  // codeword and its phase / bit / combined corruptions at the position.
  ErrorExpansion out;
  Vector* slots[4] = {&out.v_correct, &out.v_phase, &out.v_bit, &out.v_both};
  const PauliKind kinds[3] = {PauliKind::kPhase, PauliKind::kBit, PauliKind::kBoth};

  Vector remainder = joint.amps();
  for (int k = 0; k < 4; ++k) {
    *slots[k] = Vector::Zero(env_dim);
    for (int z = 0; z < 2; ++z) {
      StateVector branch = code.codeword(z);
      if (k > 0) branch = apply_pauli(branch, {position, kinds[k - 1]});
      Vector env(env_dim);
      for (Eigen::Index e = 0; e < env_dim; ++e) {
        Complex acc = 0.0;
        for (Eigen::Index i = 0; i < code_dim; ++i) {
          acc += std::conj(branch.amps()(i)) * joint.amps()(i * env_dim + e);
        }
        env(e) = acc;
      }
      for (Eigen::Index e = 0; e < env_dim; ++e) {
        for (Eigen::Index i = 0; i < code_dim; ++i) {
          remainder(i * env_dim + e) -= branch.amps()(i) * env(e);
        }
      }
      *slots[k] += env;
    }
  }
  out.residual = remainder.norm();
  return out;
}

}  // namespace qecsym
