#pragma once

#include "qecsym/codes.hpp"
#include "qecsym/statekit.hpp"

#include <cstdint>
#include <vector>

namespace qecsym {

/// Result of decode-and-detach recovery. product_defect is
/// 1 − purity of the reduced logical state; zero exactly when the joint
/// post-decode state factorizes as logical ⊗ residual.
struct RecoveryOutcome {
  DensityMatrix logical_state;
  DensityMatrix residual_state;
  double logical_fidelity = 0.0;
  double product_defect = 0.0;
};

/// E† on the codeword factor, then detach: reduced logical state, the
/// discarded ancilla (⊗ environment) factor, fidelity against the
/// reference logical amplitudes. Incorrigible inputs yield fidelity < 1,
/// never an error.
RecoveryOutcome recover_decode(const StateVector& joint, const QuantumCode& code,
                               Complex ref_alpha, Complex ref_beta);

/// Mixed-state variant: E†ρE, then detach.
RecoveryOutcome recover_mixture(const DensityMatrix& rho, const QuantumCode& code,
                                Complex ref_alpha, Complex ref_beta);

/// Fresh-ancilla automatic correction, |Z_a>⊗|b=0> → |Z_0>⊗|b=a> extended
/// linearly. Applied as a coefficient map; the 2^(2n+1)-dimensional unitary
/// is never materialized.
struct FreshAncillaResult {
  StateVector restored;      // codeword-space state
  StateVector used_ancilla;  // the second ancilla, one subsystem of dim 2^n
  double product_defect = 0.0;
};

FreshAncillaResult recover_fresh_ancilla(const StateVector& corrupted, const QuantumCode& code);

/// Same coefficient map for a corrupted codeword carrying extra subsystems
/// (e.g. an entangled environment): returns the joint state over
/// codeword ⊗ extras ⊗ second ancilla.
StateVector fresh_ancilla_map(const StateVector& joint, const QuantumCode& code);

/// One projective syndrome measurement, Born-sampled with the given seed.
struct SyndromeRecord {
  int syndrome = 0;
  double probability = 0.0;
  StateVector collapsed_state;
};

SyndromeRecord measure_syndrome(const StateVector& corrupted, const QuantumCode& code,
                                std::uint64_t rng_seed);

/// Born probabilities per declared syndrome (deterministic part of
/// measure_syndrome; extra subsystems beyond the code space are summed over).
std::vector<double> syndrome_distribution(const StateVector& corrupted, const QuantumCode& code);

/// U_a with U_a·|Z_a> = |Z_0>: the inverse of the table operator.
UnitaryOperator correction_unitary(const QuantumCode& code, int syndrome);

}  // namespace qecsym
