#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qecsym {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-10;

/// Product of subsystem dimensions.
Eigen::Index total_dim(const std::vector<Eigen::Index>& dims);

/// Complex amplitude vector over a tensor product of labeled subsystems.
/// The leftmost subsystem is the most significant digit of the basis index,
/// so |0>|1>|0>|0>|1> sits at index 9 of 32.
class StateVector {
public:
  StateVector(std::vector<Eigen::Index> dims, Vector amps, bool normalized = true);

  /// Single qubit alpha|0> + beta|1>.
  static StateVector qubit(Complex alpha, Complex beta);
  /// Computational basis state |index> over the given subsystems.
  static StateVector basis(std::vector<Eigen::Index> dims, Eigen::Index index);

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  const Vector& amps() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }
  int subsystems() const { return static_cast<int>(dims_.size()); }
  bool normalized() const { return normalized_; }

  double norm() const { return amps_.norm(); }
  StateVector renormalized() const;

private:
  std::vector<Eigen::Index> dims_;
  Vector amps_;
  bool normalized_;
};

/// Hermitian unit-trace operator for mixed states and reduced states.
class DensityMatrix {
public:
  DensityMatrix(std::vector<Eigen::Index> dims, Matrix entries, bool validate = true);

  /// |psi><psi|.
  static DensityMatrix pure(const StateVector& psi);

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  const Matrix& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  double purity() const { return (entries_ * entries_).trace().real(); }

private:
  std::vector<Eigen::Index> dims_;
  Matrix entries_;
};

/// Hermitian operator (units of energy, hbar = 1).
class HermitianOperator {
public:
  HermitianOperator(std::vector<Eigen::Index> dims, Matrix entries);

  static HermitianOperator zero(std::vector<Eigen::Index> dims);

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  const Matrix& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

private:
  std::vector<Eigen::Index> dims_;
  Matrix entries_;
};

/// Unitary operator; U†U = 1 checked within kNormTol at construction.
class UnitaryOperator {
public:
  UnitaryOperator(std::vector<Eigen::Index> dims, Matrix entries);

  static UnitaryOperator identity(std::vector<Eigen::Index> dims);

  const std::vector<Eigen::Index>& dims() const { return dims_; }
  const Matrix& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

  UnitaryOperator adjoint() const;

private:
  std::vector<Eigen::Index> dims_;
  Matrix entries_;
};

/// Kronecker product; subsystem lists concatenate.
StateVector tensor(const StateVector& a, const StateVector& b);

/// (u on targets ⊗ identity elsewhere) · state. Targets are subsystem
/// indices in most-significant-first order; u's dimension must equal the
/// product of the target dimensions.
StateVector apply_unitary(const StateVector& state, const UnitaryOperator& u,
                          const std::vector<int>& targets);

/// Same contraction for a bare matrix (callers that already validated u).
StateVector apply_matrix(const StateVector& state, const Matrix& m,
                         const std::vector<int>& targets);

/// <a|b>, conjugate-linear in a.
Complex inner(const StateVector& a, const StateVector& b);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// <psi|rho|psi>.
double fidelity(const StateVector& psi, const DensityMatrix& rho);

/// Reduced density matrix on the kept subsystems (in the order given).
DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// exp(-iHt)·state by exact Hermitian eigendecomposition.
StateVector evolve(const StateVector& state, const HermitianOperator& h, double t);

/// Bell basis, in the fixed order Phi+, Phi-, Psi+, Psi-.
/// Phi± = (|00>±|11>)/√2, Psi± = (|01>±|10>)/√2.
enum class BellIndex { kPhiPlus = 0, kPhiMinus = 1, kPsiPlus = 2, kPsiMinus = 3 };

StateVector bell_state(BellIndex which);

/// Coefficients of a two-qubit state on {Phi+, Phi-, Psi+, Psi-}.
std::array<Complex, 4> bell_decompose(const StateVector& state);

}  // namespace qecsym
