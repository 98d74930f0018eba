#include "qecsym/statekit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <utility>

namespace qecsym {

namespace {

void check_dims(const std::vector<Eigen::Index>& dims, Eigen::Index size,
                const char* what) {
  for (Eigen::Index d : dims) {
    if (d <= 0) throw std::invalid_argument(std::string(what) + ": nonpositive subsystem dimension");
  }
  if (total_dim(dims) != size) {
    throw std::invalid_argument(std::string(what) + ": dims do not match entry count");
  }
}

// Strides of each subsystem in the flat index, most significant first.
std::vector<Eigen::Index> strides_of(const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> s(dims.size());
  Eigen::Index acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

}  // namespace

Eigen::Index total_dim(const std::vector<Eigen::Index>& dims) {
  Eigen::Index n = 1;
  for (Eigen::Index d : dims) n *= d;
  return n;
}

StateVector::StateVector(std::vector<Eigen::Index> dims, Vector amps, bool normalized)
    : dims_(std::move(dims)), amps_(std::move(amps)), normalized_(normalized) {
  check_dims(dims_, amps_.size(), "StateVector");
  if (normalized_ && std::abs(amps_.squaredNorm() - 1.0) > kNormTol) {
    throw std::invalid_argument("StateVector: squared norm deviates from 1 beyond 1e-10");
  }
}

StateVector StateVector::qubit(Complex alpha, Complex beta) {
  Vector v(2);
  v << alpha, beta;
  return StateVector({2}, std::move(v));
}

StateVector StateVector::basis(std::vector<Eigen::Index> dims, Eigen::Index index) {
  Vector v = Vector::Zero(total_dim(dims));
  if (index < 0 || index >= v.size()) throw std::invalid_argument("basis: index out of range");
  v(index) = 1.0;
  return StateVector(std::move(dims), std::move(v));
}

StateVector StateVector::renormalized() const {
  double n = amps_.norm();
  if (n == 0.0) throw std::invalid_argument("renormalized: zero vector");
  return StateVector(dims_, amps_ / n, true);
}

DensityMatrix::DensityMatrix(std::vector<Eigen::Index> dims, Matrix entries, bool validate)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("DensityMatrix: not square");
  check_dims(dims_, entries_.rows(), "DensityMatrix");
  if (validate) {
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kNormTol) {
      throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    if (std::abs(entries_.trace().real() - 1.0) > kNormTol ||
        std::abs(entries_.trace().imag()) > kNormTol) {
      throw std::invalid_argument("DensityMatrix: trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kNormTol) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond 1e-10");
    }
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.dims(), psi.amps() * psi.amps().adjoint(), false);
}

HermitianOperator::HermitianOperator(std::vector<Eigen::Index> dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("HermitianOperator: not square");
  check_dims(dims_, entries_.rows(), "HermitianOperator");
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kNormTol) {
    throw std::invalid_argument("HermitianOperator: not Hermitian within 1e-10");
  }
}

HermitianOperator HermitianOperator::zero(std::vector<Eigen::Index> dims) {
  Eigen::Index n = total_dim(dims);
  return HermitianOperator(std::move(dims), Matrix::Zero(n, n));
}

UnitaryOperator::UnitaryOperator(std::vector<Eigen::Index> dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("UnitaryOperator: not square");
  check_dims(dims_, entries_.rows(), "UnitaryOperator");
  Matrix g = entries_.adjoint() * entries_;
  g.diagonal().array() -= 1.0;
  if (g.cwiseAbs().maxCoeff() > kNormTol) {
    throw std::invalid_argument("UnitaryOperator: U†U deviates from identity beyond 1e-10");
  }
}

UnitaryOperator UnitaryOperator::identity(std::vector<Eigen::Index> dims) {
  Eigen::Index n = total_dim(dims);
  return UnitaryOperator(std::move(dims), Matrix::Identity(n, n));
}

UnitaryOperator UnitaryOperator::adjoint() const {
  return UnitaryOperator(dims_, entries_.adjoint());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Eigen::Index> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Vector out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a.amps()(i) * b.amps();
  }
  return StateVector(std::move(dims), std::move(out), a.normalized() && b.normalized());
}

StateVector apply_matrix(const StateVector& state, const Matrix& m,
                         const std::vector<int>& targets) {
  const auto& dims = state.dims();
  std::set<int> seen;
  Eigen::Index tdim = 1;
  for (int t : targets) {
    if (t < 0 || t >= state.subsystems()) throw std::invalid_argument("apply: target out of range");
    if (!seen.insert(t).second) throw std::invalid_argument("apply: repeated target index");
    tdim *= dims[t];
  }
  if (m.rows() != tdim || m.cols() != tdim) {
    throw std::invalid_argument("apply: operator dimension does not match targets");
  }

  std::vector<Eigen::Index> strides(dims.size());
  {
    Eigen::Index acc = 1;
    for (int i = state.subsystems() - 1; i >= 0; --i) {
      strides[i] = acc;
      acc *= dims[i];
    }
  }

  // Flat offsets of every target configuration (targets in the given order).
  std::vector<Eigen::Index> toffsets(tdim, 0);
  {
    Eigen::Index block = tdim;
    for (int t : targets) {
      block /= dims[t];
      for (Eigen::Index i = 0; i < tdim; ++i) {
        Eigen::Index digit = (i / block) % dims[t];
        toffsets[i] += digit * strides[t];
      }
    }
  }

  // Flat offsets of every non-target configuration.
  std::vector<int> rest;
  for (int i = 0; i < state.subsystems(); ++i) {
    if (!seen.count(i)) rest.push_back(i);
  }
  Eigen::Index rdim = state.dim() / tdim;
  std::vector<Eigen::Index> roffsets(rdim, 0);
  {
    Eigen::Index block = rdim;
    for (int r : rest) {
      block /= dims[r];
      for (Eigen::Index i = 0; i < rdim; ++i) {
        Eigen::Index digit = (i / block) % dims[r];
        roffsets[i] += digit * strides[r];
      }
    }
  }

  Vector out(state.dim());
  Vector scratch(tdim);
  for (Eigen::Index r = 0; r < rdim; ++r) {
    for (Eigen::Index i = 0; i < tdim; ++i) scratch(i) = state.amps()(roffsets[r] + toffsets[i]);
    scratch = (m * scratch).eval();
    for (Eigen::Index i = 0; i < tdim; ++i) out(roffsets[r] + toffsets[i]) = scratch(i);
  }
  return StateVector(dims, std::move(out), false);
}

StateVector apply_unitary(const StateVector& state, const UnitaryOperator& u,
                          const std::vector<int>& targets) {
  StateVector out = apply_matrix(state, u.entries(), targets);
  return StateVector(out.dims(), out.amps(), state.normalized());
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  return a.amps().dot(b.amps());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

double fidelity(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return (psi.amps().adjoint() * rho.entries() * psi.amps())(0).real();
}

namespace {

DensityMatrix partial_trace_impl(const std::vector<Eigen::Index>& dims,
                                 const std::vector<int>& keep,
                                 const std::function<Complex(Eigen::Index, Eigen::Index)>& entry) {
  int n = static_cast<int>(dims.size());
  std::set<int> kept;
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: invalid index");
    if (!kept.insert(k).second) throw std::invalid_argument("partial_trace: repeated index");
  }
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (!kept.count(i)) rest.push_back(i);
  }

  std::vector<Eigen::Index> strides(n);
  {
    Eigen::Index acc = 1;
    for (int i = n - 1; i >= 0; --i) {
      strides[i] = acc;
      acc *= dims[i];
    }
  }
  auto offsets = [&](const std::vector<int>& subs) {
    Eigen::Index sub_dim = 1;
    for (int s : subs) sub_dim *= dims[s];
    std::vector<Eigen::Index> off(sub_dim, 0);
    Eigen::Index block = sub_dim;
    for (int s : subs) {
      block /= dims[s];
      for (Eigen::Index i = 0; i < sub_dim; ++i) off[i] += ((i / block) % dims[s]) * strides[s];
    }
    return off;
  };
  auto koff = offsets(keep);
  auto roff = offsets(rest);

  Eigen::Index kd = static_cast<Eigen::Index>(koff.size());
  Matrix out = Matrix::Zero(kd, kd);
  for (Eigen::Index i = 0; i < kd; ++i) {
    for (Eigen::Index j = 0; j < kd; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index r : roff) acc += entry(koff[i] + r, koff[j] + r);
      out(i, j) = acc;
    }
  }
  std::vector<Eigen::Index> out_dims;
  for (int k : keep) out_dims.push_back(dims[k]);
  return DensityMatrix(std::move(out_dims), std::move(out), false);
}

}  // namespace

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep) {
  const Vector& a = psi.amps();
  return partial_trace_impl(psi.dims(), keep,
                            [&a](Eigen::Index i, Eigen::Index j) { return a(i) * std::conj(a(j)); });
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const Matrix& m = rho.entries();
  return partial_trace_impl(rho.dims(), keep,
                            [&m](Eigen::Index i, Eigen::Index j) { return m(i, j); });
}

StateVector evolve(const StateVector& state, const HermitianOperator& h, double t) {
  if (h.dim() != state.dim()) throw std::invalid_argument("evolve: dimension mismatch");
  if (!std::isfinite(t)) throw std::invalid_argument("evolve: nonfinite time");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries());
  Vector c = es.eigenvectors().adjoint() * state.amps();
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    c(i) *= std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
  }
  return StateVector(state.dims(), es.eigenvectors() * c, state.normalized());
}

StateVector bell_state(BellIndex which) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (which) {
    case BellIndex::kPhiPlus:  v(0) = s; v(3) = s; break;
    case BellIndex::kPhiMinus: v(0) = s; v(3) = -s; break;
    case BellIndex::kPsiPlus:  v(1) = s; v(2) = s; break;
    case BellIndex::kPsiMinus: v(1) = s; v(2) = -s; break;
  }
  return StateVector({2, 2}, std::move(v));
}

std::array<Complex, 4> bell_decompose(const StateVector& state) {
  if (state.dims() != std::vector<Eigen::Index>{2, 2}) {
    throw std::invalid_argument("bell_decompose: expects a two-qubit state");
  }
  std::array<Complex, 4> c;
  for (int k = 0; k < 4; ++k) {
    c[k] = inner(bell_state(static_cast<BellIndex>(k)), state);
  }
  return c;
}

}  // namespace qecsym
