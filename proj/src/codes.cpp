#include "qecsym/codes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qecsym {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Dense operator with the given 2x2 factors at the given qubits of an
// n-qubit register, identity elsewhere.
Matrix op_at(int n, const std::map<int, Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    auto it = factors.find(q);
    out = kron(out, it == factors.end() ? Matrix::Identity(2, 2) : it->second);
  }
  return out;
}

std::vector<Eigen::Index> qubit_dims(int n) {
  return std::vector<Eigen::Index>(static_cast<std::size_t>(n), 2);
}

StateVector five_qubit_codeword_zero() {
  // Cyclic stabilizer generators XZZXI and shifts; |0_0> is the
  // normalized projection of |00000>.
  const int n = 5;
  const char base[5] = {'X', 'Z', 'Z', 'X', 'I'};
  Matrix proj = Matrix::Identity(32, 32);
  for (int s = 0; s < 4; ++s) {
    std::map<int, Matrix> f;
    for (int q = 0; q < n; ++q) {
      char c = base[((q - s) % n + n) % n];
      if (c == 'X') f[q] = pauli_x();
      if (c == 'Z') f[q] = pauli_z();
    }
    proj = proj * (Matrix::Identity(32, 32) + op_at(n, f)) / 2.0;
  }
  Vector v = proj.col(0);
  return StateVector(qubit_dims(5), v / v.norm());
}

StateVector steane_codeword_zero() {
  // Equal superposition over the [7,3] simplex code (dual of Hamming [7,4]).
  const int rows[3] = {0b1010101, 0b0110011, 0b0001111};
  Vector v = Vector::Zero(128);
  for (int m = 0; m < 8; ++m) {
    int w = 0;
    for (int b = 0; b < 3; ++b) {
      if ((m >> b) & 1) w ^= rows[b];
    }
    v(w) = 1.0 / std::sqrt(8.0);
  }
  return StateVector(qubit_dims(7), std::move(v));
}

StateVector shor_codeword(int z) {
  Vector blk = Vector::Zero(8);
  blk(0) = 1.0 / std::sqrt(2.0);
  blk(7) = (z == 0 ? 1.0 : -1.0) / std::sqrt(2.0);
  StateVector b({2, 2, 2}, blk);
  StateVector out = tensor(tensor(b, b), b);
  return StateVector(qubit_dims(9), out.amps());
}

PauliString flip_all(int n) {
  PauliString p;
  for (int q = 0; q < n; ++q) p.factors[q] = PauliKind::kBit;
  return p;
}

UnitaryOperator build_encoder(int n, const StateVector& cw0, const StateVector& cw1,
                              const std::vector<PauliString>& table) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Eigen::Index half = dim / 2;
  const Eigen::Index declared = static_cast<Eigen::Index>(table.size());
  Matrix e = Matrix::Zero(dim, dim);
  std::vector<Eigen::Index> undefined;
  for (int z = 0; z < 2; ++z) {
    const StateVector& cw = (z == 0) ? cw0 : cw1;
    for (Eigen::Index a = 0; a < half; ++a) {
      Eigen::Index col = z * half + a;
      if (a < declared) {
        e.col(col) = apply_pauli_string(cw, table[static_cast<std::size_t>(a)]).amps();
      } else {
        undefined.push_back(col);
      }
    }
  }
  // Complete the remaining columns by Gram-Schmidt against the defined set,
  // drawing candidates from the computational basis in order.
  if (!undefined.empty()) {
    std::vector<Eigen::Index> defined;
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (e.col(c).norm() > 0.5) defined.push_back(c);
    }
    std::size_t next = 0;
    for (Eigen::Index cand = 0; cand < dim && next < undefined.size(); ++cand) {
      Vector v = Vector::Zero(dim);
      v(cand) = 1.0;
      for (Eigen::Index c : defined) v -= e.col(c).dot(v) * e.col(c);
      double nrm = v.norm();
      if (nrm > 1e-6) {
        e.col(undefined[next]) = v / nrm;
        defined.push_back(undefined[next]);
        ++next;
      }
    }
    if (next != undefined.size()) {
      throw std::logic_error("build_encoder: orthogonal completion failed");
    }
  }
  return UnitaryOperator(qubit_dims(n), std::move(e));
}

}  // namespace

Matrix pauli_kind_matrix(PauliKind kind) {
  Matrix m(2, 2);
  switch (kind) {
    case PauliKind::kBit:   m << 0, 1, 1, 0; break;
    case PauliKind::kPhase: m << 1, 0, 0, -1; break;
    case PauliKind::kBoth:  m << 0, -1, 1, 0; break;
  }
  return m;
}

Matrix pauli_string_matrix(const PauliString& p, int n_qubits) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    auto it = p.factors.find(q);
    out = kron(out, it == p.factors.end() ? Matrix::Identity(2, 2)
                                          : pauli_kind_matrix(it->second));
  }
  return out;
}

StateVector apply_pauli_string(const StateVector& state, const PauliString& p) {
  StateVector out = state;
  for (const auto& [pos, kind] : p.factors) {
    StateVector next = apply_matrix(out, pauli_kind_matrix(kind), {pos});
    out = StateVector(next.dims(), next.amps(), state.normalized());
  }
  return out;
}

StateVector apply_pauli_string_inverse(const StateVector& state, const PauliString& p) {
  StateVector out = state;
  for (const auto& [pos, kind] : p.factors) {
    StateVector next = apply_matrix(out, pauli_kind_matrix(kind).adjoint(), {pos});
    out = StateVector(next.dims(), next.amps(), state.normalized());
  }
  return out;
}

CodeKind code_kind_from_string(const std::string& name) {
  if (name == "bitflip3") return CodeKind::kBitflip3;
  if (name == "phase3") return CodeKind::kPhase3;
  if (name == "five_qubit") return CodeKind::kFiveQubit;
  if (name == "steane7") return CodeKind::kSteane7;
  if (name == "shor9") return CodeKind::kShor9;
  throw std::invalid_argument("unknown code kind: " + name);
}

std::string to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::kBitflip3: return "bitflip3";
    case CodeKind::kPhase3: return "phase3";
    case CodeKind::kFiveQubit: return "five_qubit";
    case CodeKind::kSteane7: return "steane7";
    case CodeKind::kShor9: return "shor9";
  }
  throw std::invalid_argument("unknown code kind");
}

QuantumCode::QuantumCode(CodeKind kind, int n_physical, StateVector codeword_zero,
                         StateVector codeword_one, std::vector<PauliString> error_table)
    : kind_(kind),
      n_physical_(n_physical),
      codeword_zero_(std::move(codeword_zero)),
      codeword_one_(std::move(codeword_one)),
      error_table_(std::move(error_table)),
      encoder_(build_encoder(n_physical, codeword_zero_, codeword_one_, error_table_)) {
  if (std::abs(inner(codeword_zero_, codeword_one_)) > kNormTol) {
    throw std::invalid_argument("QuantumCode: codewords not orthogonal");
  }
  if (error_table_.empty() || !error_table_[0].identity()) {
    throw std::invalid_argument("QuantumCode: syndrome 0 must be the identity");
  }
}

const StateVector& QuantumCode::codeword(int z) const {
  if (z != 0 && z != 1) throw std::invalid_argument("codeword: z must be 0 or 1");
  return z == 0 ? codeword_zero_ : codeword_one_;
}

StateVector QuantumCode::syndrome_vector(int z, int a) const {
  if (a < 0 || a >= n_declared()) throw std::invalid_argument("syndrome_vector: unknown syndrome");
  return apply_pauli_string(codeword(z), error_table_[static_cast<std::size_t>(a)]);
}

QuantumCode build_code(CodeKind kind) {
  switch (kind) {
    case CodeKind::kBitflip3: {
      StateVector cw0 = StateVector::basis(qubit_dims(3), 0);
      StateVector cw1 = StateVector::basis(qubit_dims(3), 7);
      std::vector<PauliString> table(1);
      for (int p = 0; p < 3; ++p) table.push_back({{{p, PauliKind::kBit}}});
      return QuantumCode(kind, 3, std::move(cw0), std::move(cw1), std::move(table));
    }
    case CodeKind::kPhase3: {
      Vector plus = Vector::Constant(8, 1.0 / std::sqrt(8.0));
      Vector minus(8);
      for (int i = 0; i < 8; ++i) {
        int ones = __builtin_popcount(static_cast<unsigned>(i));
        minus(i) = ((ones % 2) ? -1.0 : 1.0) / std::sqrt(8.0);
      }
      std::vector<PauliString> table(1);
      for (int p = 0; p < 3; ++p) table.push_back({{{p, PauliKind::kPhase}}});
      return QuantumCode(kind, 3, StateVector(qubit_dims(3), plus),
                         StateVector(qubit_dims(3), minus), std::move(table));
    }
    case CodeKind::kFiveQubit: {
      StateVector cw0 = five_qubit_codeword_zero();
      StateVector cw1 = apply_pauli_string(cw0, flip_all(5));
      std::vector<PauliString> table(1);
      for (int p = 0; p < 5; ++p) {
        for (PauliKind k : {PauliKind::kBit, PauliKind::kPhase, PauliKind::kBoth}) {
          table.push_back({{{p, k}}});
        }
      }
      return QuantumCode(kind, 5, std::move(cw0), std::move(cw1), std::move(table));
    }
    case CodeKind::kSteane7: {
      StateVector cw0 = steane_codeword_zero();
      StateVector cw1 = apply_pauli_string(cw0, flip_all(7));
      std::vector<PauliString> table(1);
      for (int p = 0; p < 7; ++p) {
        for (PauliKind k : {PauliKind::kBit, PauliKind::kPhase, PauliKind::kBoth}) {
          table.push_back({{{p, k}}});
        }
      }
      // Phase on qubit i plus bit on qubit j, all ordered pairs i != j.
      for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
          if (i == j) continue;
          PauliString p;
          p.factors[i] = PauliKind::kPhase;
          p.factors[j] = PauliKind::kBit;
          table.push_back(std::move(p));
        }
      }
      return QuantumCode(kind, 7, std::move(cw0), std::move(cw1), std::move(table));
    }
    case CodeKind::kShor9: {
      StateVector cw0 = shor_codeword(0);
      StateVector cw1 = shor_codeword(1);
      // Phase errors are degenerate within a block; one representative per
      // distinguishable coset: 9 bit + 3 block-phase + 27 combined.
      std::vector<PauliString> table(1);
      for (int p = 0; p < 9; ++p) table.push_back({{{p, PauliKind::kBit}}});
      for (int b = 0; b < 3; ++b) table.push_back({{{3 * b, PauliKind::kPhase}}});
      for (int p = 0; p < 9; ++p) {
        for (int b = 0; b < 3; ++b) {
          PauliString s;
          s.factors[p] = PauliKind::kBit;
          if (3 * b == p) {
            s.factors[p] = PauliKind::kBoth;
          } else {
            s.factors[3 * b] = PauliKind::kPhase;
          }
          table.push_back(std::move(s));
        }
      }
      return QuantumCode(kind, 9, std::move(cw0), std::move(cw1), std::move(table));
    }
  }
  throw std::invalid_argument("build_code: unknown kind");
}

StateVector encode(Complex alpha, Complex beta, const QuantumCode& code) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol) {
    throw std::invalid_argument("encode: |alpha|^2+|beta|^2 must be 1 within 1e-10");
  }
  Vector v = alpha * code.codeword(0).amps() + beta * code.codeword(1).amps();
  return StateVector(code.codeword(0).dims(), std::move(v));
}

StateVector decode(const StateVector& joint, const QuantumCode& code) {
  const Eigen::Index code_dim = Eigen::Index(1) << code.n_physical();
  Eigen::Index acc = 1;
  int prefix = 0;
  while (prefix < joint.subsystems() && acc < code_dim) {
    acc *= joint.dims()[static_cast<std::size_t>(prefix)];
    ++prefix;
  }
  if (acc != code_dim) {
    throw std::invalid_argument("decode: leading subsystems do not match the code space");
  }
  std::vector<int> targets(static_cast<std::size_t>(prefix));
  for (int i = 0; i < prefix; ++i) targets[static_cast<std::size_t>(i)] = i;
  StateVector rotated = apply_matrix(joint, code.encoder().entries().adjoint(), targets);
  std::vector<Eigen::Index> dims{2, code.n_syndromes()};
  for (int i = prefix; i < joint.subsystems(); ++i) {
    dims.push_back(joint.dims()[static_cast<std::size_t>(i)]);
  }
  return StateVector(std::move(dims), rotated.amps(), joint.normalized());
}

std::vector<StateVector> syndrome_basis(const QuantumCode& code) {
  std::vector<StateVector> out;
  const Matrix& e = code.encoder().entries();
  out.reserve(static_cast<std::size_t>(e.cols()));
  for (Eigen::Index c = 0; c < e.cols(); ++c) {
    out.emplace_back(code.codeword(0).dims(), e.col(c));
  }
  return out;
}

const StateVector& CodewordComponents::component(int z, int y) const {
  if (z == 0) return y == 0 ? x00 : x01;
  return y == 0 ? x10 : x11;
}

CodewordComponents x_components(const QuantumCode& code, int position) {
  const int n = code.n_physical();
  if (position < 0 || position >= n) throw std::invalid_argument("x_components: invalid position");
  const Eigen::Index half = Eigen::Index(1) << (n - 1);
  const int bit = n - 1 - position;  // bit index from the LSB

  auto split = [&](const StateVector& cw, int y) {
    Vector out(half);
    for (Eigen::Index r = 0; r < half; ++r) {
      Eigen::Index low = r & ((Eigen::Index(1) << bit) - 1);
      Eigen::Index high = r >> bit;
      Eigen::Index idx = (high << (bit + 1)) | (Eigen::Index(y) << bit) | low;
      out(r) = cw.amps()(idx);
    }
    return StateVector(qubit_dims(n - 1), std::move(out), false);
  };

  return CodewordComponents{position, split(code.codeword(0), 0), split(code.codeword(0), 1),
                            split(code.codeword(1), 0), split(code.codeword(1), 1)};
}

std::vector<ScalarProductCondition> VerificationReport::violated(double tol) const {
  std::vector<ScalarProductCondition> out;
  for (const auto& c : conditions) {
    if (c.deviation > tol) out.push_back(c);
  }
  return out;
}

VerificationReport verify_code(const QuantumCode& code) {
  VerificationReport report;
  report.code = code.name();
  report.n_physical = code.n_physical();
  report.n_declared = code.n_declared();
  report.n_syndromes = code.n_syndromes();

  for (int pos = 0; pos < code.n_physical(); ++pos) {
    CodewordComponents comps = x_components(code, pos);
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        int z1 = i / 2, y1 = i % 2, z2 = j / 2, y2 = j % 2;
        Complex v = inner(comps.component(z1, y1), comps.component(z2, y2));
        double target = (i == j) ? 0.5 : 0.0;
        double dev = std::abs(v - Complex(target, 0.0));
        report.conditions.push_back({pos, z1, y1, z2, y2, v, dev});
        report.max_condition_deviation = std::max(report.max_condition_deviation, dev);
      }
    }
  }

  // Gram residual over the declared |Z_a> images.
  const Eigen::Index m = 2 * code.n_declared();
  Matrix b(code.codeword(0).dim(), m);
  Eigen::Index col = 0;
  for (int z = 0; z < 2; ++z) {
    for (int a = 0; a < code.n_declared(); ++a) b.col(col++) = code.syndrome_vector(z, a).amps();
  }
  Matrix gram = b.adjoint() * b;
  gram.diagonal().array() -= 1.0;
  report.basis_gram_residual = gram.cwiseAbs().maxCoeff();

  Matrix u = code.encoder().entries().adjoint() * code.encoder().entries();
  u.diagonal().array() -= 1.0;
  report.encoder_unitarity_residual = u.cwiseAbs().maxCoeff();

  report.pass = report.max_condition_deviation < 1e-10 &&
                report.basis_gram_residual < 1e-10 &&
                report.encoder_unitarity_residual < 1e-10;
  return report;
}

}  // namespace qecsym
