#include "qecsym/recovery.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qecsym {

namespace {

RecoveryOutcome detach(const StateVector& decoded, Complex ref_alpha, Complex ref_beta) {
  std::vector<int> residual_subsystems;
  for (int i = 1; i < decoded.subsystems(); ++i) residual_subsystems.push_back(i);
  DensityMatrix logical = partial_trace(decoded, {0});
  DensityMatrix residual = partial_trace(decoded, residual_subsystems);
  StateVector ref = StateVector::qubit(ref_alpha, ref_beta);
  double fid = fidelity(ref, logical);
  double defect = 1.0 - logical.purity();
  return RecoveryOutcome{std::move(logical), std::move(residual), fid, defect};
}

}  // namespace

RecoveryOutcome recover_decode(const StateVector& joint, const QuantumCode& code,
                               Complex ref_alpha, Complex ref_beta) {
  return detach(decode(joint, code), ref_alpha, ref_beta);
}

RecoveryOutcome recover_mixture(const DensityMatrix& rho, const QuantumCode& code,
                                Complex ref_alpha, Complex ref_beta) {
  const Eigen::Index code_dim = Eigen::Index(1) << code.n_physical();
  if (rho.dim() != code_dim) {
    throw std::invalid_argument("recover_mixture: density matrix must live on the code space");
  }
  const Matrix& e = code.encoder().entries();
  Matrix decoded = e.adjoint() * rho.entries() * e;
  DensityMatrix decoded_dm({2, code.n_syndromes()}, std::move(decoded), false);
  DensityMatrix logical = partial_trace(decoded_dm, {0});
  DensityMatrix residual = partial_trace(decoded_dm, {1});
  StateVector ref = StateVector::qubit(ref_alpha, ref_beta);
  double fid = fidelity(ref, logical);
  double defect = 1.0 - logical.purity();
  return RecoveryOutcome{std::move(logical), std::move(residual), fid, defect};
}

FreshAncillaResult recover_fresh_ancilla(const StateVector& corrupted, const QuantumCode& code) {
  const Eigen::Index code_dim = Eigen::Index(1) << code.n_physical();
  if (corrupted.dim() != code_dim) {
    throw std::invalid_argument("recover_fresh_ancilla: input must live on the code space");
  }
  const int m = code.n_declared();
  Matrix coeffs(2, m);  // d_{z,a} = <Z_a | corrupted>
  double captured = 0.0;
  for (int z = 0; z < 2; ++z) {
    for (int a = 0; a < m; ++a) {
      coeffs(z, a) = inner(code.syndrome_vector(z, a), corrupted);
      captured += std::norm(coeffs(z, a));
    }
  }
  if (corrupted.amps().squaredNorm() - captured > 1e-9) {
    throw std::invalid_argument("recover_fresh_ancilla: input outside the spanned space");
  }

  // |Z_a>⊗|b=0> → |Z_0>⊗|b=a>: for a corrigible input the coefficient matrix
  // is rank one and the output is restored ⊗ ancilla; read both factors off
  // the leading singular pair.
  Eigen::JacobiSVD<Matrix> svd(coeffs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  double total = svd.singularValues().squaredNorm();
  double defect = total > 0.0 ? 1.0 - svd.singularValues()(0) * svd.singularValues()(0) / total
                              : 1.0;

  Vector logical = svd.matrixU().col(0);
  Vector restored = logical(0) * code.codeword(0).amps() + logical(1) * code.codeword(1).amps();
  Vector ancilla = Vector::Zero(code.n_syndromes());
  ancilla.head(m) = svd.matrixV().col(0).conjugate();
  return FreshAncillaResult{StateVector(code.codeword(0).dims(), std::move(restored)),
                            StateVector({code.n_syndromes()}, std::move(ancilla)), defect};
}

StateVector fresh_ancilla_map(const StateVector& joint, const QuantumCode& code) {
  StateVector decoded = decode(joint, code);  // dims: {2, n_syn, extras...}
  const Eigen::Index n_syn = code.n_syndromes();
  const Eigen::Index extra = decoded.dim() / (2 * n_syn);
  const int m = code.n_declared();

  double outside = 0.0;
  for (int z = 0; z < 2; ++z) {
    for (Eigen::Index a = m; a < n_syn; ++a) {
      outside += decoded.amps().segment((z * n_syn + a) * extra, extra).squaredNorm();
    }
  }
  if (outside > 1e-9) {
    throw std::invalid_argument("fresh_ancilla_map: input outside the spanned space");
  }

  // Σ_{z,a,e} d_{z,a,e} |Z_{z,a}>⊗|e>⊗|0>  →  Σ d_{z,a,e} |Z_{z,0}>⊗|e>⊗|a>
  const Eigen::Index code_dim = Eigen::Index(1) << code.n_physical();
  Vector out = Vector::Zero(code_dim * extra * n_syn);
  for (int z = 0; z < 2; ++z) {
    const Vector& cw = code.codeword(z).amps();
    for (int a = 0; a < m; ++a) {
      for (Eigen::Index e = 0; e < extra; ++e) {
        Complex d = decoded.amps()((z * n_syn + a) * extra + e);
        if (d == Complex(0.0, 0.0)) continue;
        for (Eigen::Index c = 0; c < code_dim; ++c) {
          if (cw(c) != Complex(0.0, 0.0)) out((c * extra + e) * n_syn + a) += d * cw(c);
        }
      }
    }
  }
  std::vector<Eigen::Index> dims = joint.dims();
  dims.push_back(n_syn);
  return StateVector(std::move(dims), std::move(out), joint.normalized());
}

std::vector<double> syndrome_distribution(const StateVector& corrupted, const QuantumCode& code) {
  StateVector decoded = decode(corrupted, code);
  const Eigen::Index n_syn = code.n_syndromes();
  const Eigen::Index extra = decoded.dim() / (2 * n_syn);
  std::vector<double> p(static_cast<std::size_t>(code.n_declared()), 0.0);
  double covered = 0.0;
  for (int z = 0; z < 2; ++z) {
    for (int a = 0; a < code.n_declared(); ++a) {
      Eigen::Index base = (z * n_syn + a) * extra;
      double w = decoded.amps().segment(base, extra).squaredNorm();
      p[static_cast<std::size_t>(a)] += w;
      covered += w;
    }
  }
  if (1.0 - covered > 1e-9) {
    throw std::invalid_argument("syndrome_distribution: input outside the declared span");
  }
  return p;
}

SyndromeRecord measure_syndrome(const StateVector& corrupted, const QuantumCode& code,
                                std::uint64_t rng_seed) {
  std::vector<double> p = syndrome_distribution(corrupted, code);
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  int sampled = -1;
  double acc = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    acc += p[a];
    if (u < acc) {
      sampled = static_cast<int>(a);
      break;
    }
  }
  if (sampled < 0) {  // accumulated rounding: fall back to the last nonzero bucket
    for (int a = static_cast<int>(p.size()) - 1; a >= 0; --a) {
      if (p[static_cast<std::size_t>(a)] > 0.0) {
        sampled = a;
        break;
      }
    }
  }

  // Collapse: zero every other ancilla label in the decoded frame, re-encode.
  StateVector decoded = decode(corrupted, code);
  const Eigen::Index n_syn = code.n_syndromes();
  const Eigen::Index extra = decoded.dim() / (2 * n_syn);
  Vector amps = decoded.amps();
  for (int z = 0; z < 2; ++z) {
    for (Eigen::Index a = 0; a < n_syn; ++a) {
      if (a == sampled) continue;
      amps.segment((z * n_syn + a) * extra, extra).setZero();
    }
  }
  amps /= amps.norm();
  // decoded frame: logical, ancilla, extras; re-encode the first two.
  StateVector projected(decoded.dims(), std::move(amps), true);
  StateVector reencoded = apply_matrix(projected, code.encoder().entries(), {0, 1});
  StateVector collapsed(corrupted.dims(), reencoded.amps(), true);
  return SyndromeRecord{sampled, p[static_cast<std::size_t>(sampled)], std::move(collapsed)};
}

UnitaryOperator correction_unitary(const QuantumCode& code, int syndrome) {
  if (syndrome < 0 || syndrome >= code.n_declared()) {
    throw std::invalid_argument("correction_unitary: unknown syndrome");
  }
  Matrix m =
      pauli_string_matrix(code.error_table()[static_cast<std::size_t>(syndrome)], code.n_physical())
          .adjoint();
  return UnitaryOperator(code.codeword(0).dims(), std::move(m));
}

}  // namespace qecsym
