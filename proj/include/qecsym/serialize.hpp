#pragma once

#include "qecsym/codes.hpp"
#include "qecsym/noise.hpp"
#include "qecsym/statekit.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace qecsym {

using Json = nlohmann::ordered_json;

/// Complex numbers serialize as [re, im] pairs.
Json to_json(Complex z);
Json to_json(const Vector& v);
Json to_json(const StateVector& s);
Json to_json(const QuantumCode& code);
Json to_json(const VerificationReport& report);
Json to_json(const EnvironmentCoupling& c);

EnvironmentCoupling environment_coupling_from_json(const Json& j);

/// Decimal float with 17 significant digits (round-trip exact).
std::string format_double(double x);

/// Row-oriented table with a fixed column order; the CLI's regression
/// surface. CSV output uses LF line endings.
class Table {
public:
  using Cell = std::variant<std::int64_t, double, std::string>;

  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::string to_csv() const;
  Json to_json() const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace qecsym
