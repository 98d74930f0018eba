#include "qecsym/serialize.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qecsym {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const StateVector& s) {
  Json out;
  out["subsystem_dims"] = s.dims();
  out["amps"] = to_json(s.amps());
  return out;
}

namespace {

std::string kind_name(PauliKind k) {
  switch (k) {
    case PauliKind::kBit: return "bit";
    case PauliKind::kPhase: return "phase";
    case PauliKind::kBoth: return "both";
  }
  return "?";
}

}  // namespace

Json to_json(const QuantumCode& code) {
  Json out;
  out["code"] = code.name();
  out["n_physical"] = code.n_physical();
  out["n_ancilla"] = code.n_ancilla();
  out["n_syndromes"] = code.n_syndromes();
  out["codeword_zero"] = to_json(code.codeword(0).amps());
  out["codeword_one"] = to_json(code.codeword(1).amps());
  Json table = Json::array();
  for (int a = 0; a < code.n_declared(); ++a) {
    Json entry;
    entry["syndrome"] = a;
    Json factors = Json::array();
    for (const auto& [pos, kind] : code.error_table()[static_cast<std::size_t>(a)].factors) {
      factors.push_back({{"position", pos}, {"kind", kind_name(kind)}});
    }
    entry["factors"] = factors;
    table.push_back(entry);
  }
  out["error_table"] = table;
  return out;
}

Json to_json(const VerificationReport& report) {
  Json out;
  out["code"] = report.code;
  out["n_physical"] = report.n_physical;
  out["n_declared"] = report.n_declared;
  out["n_syndromes"] = report.n_syndromes;
  out["max_condition_deviation"] = report.max_condition_deviation;
  out["basis_gram_residual"] = report.basis_gram_residual;
  out["encoder_unitarity_residual"] = report.encoder_unitarity_residual;
  out["pass"] = report.pass;
  Json conds = Json::array();
  for (const auto& c : report.conditions) {
    conds.push_back({{"position", c.position},
                     {"z1", c.z1},
                     {"y1", c.y1},
                     {"z2", c.z2},
                     {"y2", c.y2},
                     {"value", to_json(c.value)},
                     {"deviation", c.deviation}});
  }
  out["conditions"] = conds;
  Json violated = Json::array();
  for (const auto& c : report.violated()) {
    violated.push_back({{"position", c.position},
                        {"z1", c.z1},
                        {"y1", c.y1},
                        {"z2", c.z2},
                        {"y2", c.y2},
                        {"deviation", c.deviation}});
  }
  out["violated"] = violated;
  return out;
}

Json to_json(const EnvironmentCoupling& c) {
  Json out;
  out["position"] = c.position;
  out["env_dim"] = c.env_dim;
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < c.interaction.dim(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < c.interaction.dim(); ++j) {
      row.push_back(to_json(c.interaction.entries()(i, j)));
    }
    rows.push_back(row);
  }
  out["interaction"] = rows;
  out["env_initial"] = to_json(c.env_initial.amps());
  return out;
}

EnvironmentCoupling environment_coupling_from_json(const Json& j) {
  int position = j.at("position").get<int>();
  Eigen::Index env_dim = j.at("env_dim").get<Eigen::Index>();
  Eigen::Index dim = 2 * env_dim;
  Matrix m(dim, dim);
  const Json& rows = j.at("interaction");
  if (static_cast<Eigen::Index>(rows.size()) != dim) {
    throw std::invalid_argument("environment coupling: interaction size mismatch");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index jj = 0; jj < dim; ++jj) {
      const Json& cell = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
      m(i, jj) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  const Json& env = j.at("env_initial");
  Vector e(env_dim);
  for (Eigen::Index i = 0; i < env_dim; ++i) {
    e(i) = Complex(env[static_cast<std::size_t>(i)][0].get<double>(),
                   env[static_cast<std::size_t>(i)][1].get<double>());
  }
  return EnvironmentCoupling{position, env_dim, UnitaryOperator({2, env_dim}, std::move(m)),
                             StateVector({env_dim}, std::move(e))};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("Table: row width mismatch");
  rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out << ',';
    out << header_[i];
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(v);
            } else {
              out << v;
            }
          },
          row[i]);
    }
    out << '\n';
  }
  return out.str();
}

Json Table::to_json() const {
  Json out = Json::array();
  for (const auto& row : rows_) {
    Json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[header_[i]] = v; }, row[i]);
    }
    out.push_back(obj);
  }
  return out;
}

}  // namespace qecsym
