#pragma once

#include "qecsym/statekit.hpp"

#include <map>
#include <string>
#include <vector>

namespace qecsym {

/// Single-qubit fault kinds. Bit swaps |0>/|1>, Phase negates the |1>
/// amplitude, Both is the combination whose action on a codeword is
/// X_{Z0}⊗|1> − X_{Z1}⊗|0>.
enum class PauliKind { kBit, kPhase, kBoth };

struct PauliSpec {
  int position = 0;
  PauliKind kind = PauliKind::kBit;
};

/// Product of single-qubit fault factors, identity elsewhere.
struct PauliString {
  std::map<int, PauliKind> factors;  // position -> kind

  bool identity() const { return factors.empty(); }
};

/// 2x2 matrix of one fault factor.
Matrix pauli_kind_matrix(PauliKind kind);

/// Dense 2^n x 2^n matrix of a fault product.
Matrix pauli_string_matrix(const PauliString& p, int n_qubits);

/// Apply a fault product to a multi-qubit state.
StateVector apply_pauli_string(const StateVector& state, const PauliString& p);
/// Inverse fault product (each factor conjugate-transposed).
StateVector apply_pauli_string_inverse(const StateVector& state, const PauliString& p);

enum class CodeKind { kBitflip3, kPhase3, kFiveQubit, kSteane7, kShor9 };

CodeKind code_kind_from_string(const std::string& name);
std::string to_string(CodeKind kind);

/// A quantum code: codewords, correctable-error table indexed by syndrome,
/// and the encoding unitary E with E(|z>⊗|a>) = |Z_a>.
class QuantumCode {
public:
  QuantumCode(CodeKind kind, int n_physical, StateVector codeword_zero,
              StateVector codeword_one, std::vector<PauliString> error_table);

  CodeKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }
  int n_physical() const { return n_physical_; }
  int n_ancilla() const { return n_physical_ - 1; }
  /// 2^n_ancilla, including syndromes with no declared error.
  Eigen::Index n_syndromes() const { return Eigen::Index(1) << n_ancilla(); }
  /// Number of declared table entries (identity at syndrome 0 included).
  int n_declared() const { return static_cast<int>(error_table_.size()); }

  const StateVector& codeword(int z) const;
  const std::vector<PauliString>& error_table() const { return error_table_; }
  const UnitaryOperator& encoder() const { return encoder_; }

  /// |Z_a> = error_table[a] · |Z_0>. Requires a < n_declared().
  StateVector syndrome_vector(int z, int a) const;

private:
  CodeKind kind_;
  int n_physical_;
  StateVector codeword_zero_;
  StateVector codeword_one_;
  std::vector<PauliString> error_table_;
  UnitaryOperator encoder_;
};

QuantumCode build_code(CodeKind kind);

/// alpha|0_0> + beta|1_0>; requires |alpha|^2+|beta|^2 = 1 within 1e-10.
StateVector encode(Complex alpha, Complex beta, const QuantumCode& code);

/// (E† ⊗ identity on extras)·joint, reinterpreted as
/// logical qubit ⊗ ancilla ⊗ extras. The joint state's leading subsystems
/// must multiply out to the code's physical dimension.
StateVector decode(const StateVector& joint, const QuantumCode& code);

/// All 2^n_physical vectors |Z_a> in (z, a) lexical order.
std::vector<StateVector> syndrome_basis(const QuantumCode& code);

/// Codeword split by one physical qubit: |Z_0> = X_{Z0}⊗|0> + X_{Z1}⊗|1>
/// with the singled-out qubit moved to the last slot.
struct CodewordComponents {
  int position = 0;
  // x[z][y] = X_{Zy}, a vector over the remaining n-1 qubits.
  StateVector x00, x01, x10, x11;

  const StateVector& component(int z, int y) const;
};

CodewordComponents x_components(const QuantumCode& code, int position);

/// Numerical check of the code's correctability conditions.
struct ScalarProductCondition {
  int position;
  int z1, y1, z2, y2;
  Complex value;
  double deviation;  // |value - (1/2) δ_ZZ' δ_yy'|
};

struct VerificationReport {
  std::string code;
  int n_physical = 0;
  int n_declared = 0;
  Eigen::Index n_syndromes = 0;
  std::vector<ScalarProductCondition> conditions;
  double max_condition_deviation = 0.0;
  double basis_gram_residual = 0.0;
  double encoder_unitarity_residual = 0.0;
  bool pass = false;

  std::vector<ScalarProductCondition> violated(double tol = 1e-10) const;
};

VerificationReport verify_code(const QuantumCode& code);

}  // namespace qecsym
