#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "steer/channels.hpp"
#include "steer/ellipsoid.hpp"
#include "steer/experiments.hpp"
#include "steer/monogamy.hpp"
#include "steer/qcore.hpp"

namespace steer::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 12;

// Text form shared by CSV and JSON output: 12 significant digits.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
  return buf;
}

// x rounded to 12 significant digits; JSON then prints the short form.
// Non-finite values become null.
inline Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_double(x).c_str(), nullptr);
}

inline Json vec3(const Vec3& v) { return Json::array({number(v(0)), number(v(1)), number(v(2))}); }

inline Json mat3(const Mat3& m) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(Json::array({number(m(i, 0)), number(m(i, 1)), number(m(i, 2))}));
  return rows;
}

inline Json complex_value(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

namespace detail {

inline Complex parse_complex(const Json& j) {
  steer::detail::require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
                         "format: complex entries must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

// {"n_qubits": n, "kind": "pure"|"mixed", "data": [[re, im], ...]}
inline QuantumState parse_state(const Json& j, double tol = kValidationTol) {
  steer::detail::require(j.is_object(), "format: state file must be a JSON object");
  steer::detail::require(j.contains("n_qubits") && j["n_qubits"].is_number_integer(),
                         "format: missing integer field n_qubits");
  steer::detail::require(j.contains("kind") && j["kind"].is_string(), "format: missing string field kind");
  steer::detail::require(j.contains("data") && j["data"].is_array(), "format: missing array field data");
  const int n = j["n_qubits"].get<int>();
  steer::detail::require(n >= 1 && n <= 10, "n_qubits: must lie in [1, 10]");
  const auto dim = static_cast<Eigen::Index>(steer::detail::pow2(n));
  const std::string kind = j["kind"].get<std::string>();
  const Json& data = j["data"];
  if (kind == "pure") {
    steer::detail::require(static_cast<Eigen::Index>(data.size()) == dim,
                           "dimension: pure state needs 2^n amplitudes, got " + std::to_string(data.size()));
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = detail::parse_complex(data[static_cast<std::size_t>(i)]);
    return QuantumState::pure(std::move(v), tol);
  }
  if (kind == "mixed") {
    steer::detail::require(static_cast<Eigen::Index>(data.size()) == dim * dim,
                           "dimension: mixed state needs 4^n matrix entries, got " + std::to_string(data.size()));
    CMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = detail::parse_complex(data[static_cast<std::size_t>(r * dim + c)]);
    }
    return QuantumState::mixed(std::move(m), tol);
  }
  throw ValidationError("format: kind must be \"pure\" or \"mixed\", got \"" + kind + "\"");
}

inline QuantumState parse_state(const std::string& text, double tol = kValidationTol) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("format: invalid JSON: ") + e.what());
  }
  return parse_state(j, tol);
}

inline QuantumState read_state_file(const std::string& path, double tol = kValidationTol) {
  std::ifstream in(path);
  if (!in) throw ValidationError("input: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str(), tol);
}

inline Json to_json(const QuantumState& state) {
  Json data = Json::array();
  if (state.kind() == QuantumState::Kind::Pure) {
    for (Eigen::Index i = 0; i < state.dim(); ++i) data.push_back(complex_value(state.amplitudes()(i)));
  } else {
    for (Eigen::Index r = 0; r < state.dim(); ++r) {
      for (Eigen::Index c = 0; c < state.dim(); ++c) data.push_back(complex_value(state.matrix()(r, c)));
    }
  }
  return {{"n_qubits", state.n_qubits()},
          {"kind", state.kind() == QuantumState::Kind::Pure ? "pure" : "mixed"},
          {"data", data}};
}

inline Json to_json(const SteeringEllipsoid& e) {
  return {{"center", vec3(e.center)},
          {"Q", mat3(e.orientation)},
          {"semiaxes", vec3(e.semiaxes)},
          {"volume", number(e.normalized_volume)},
          {"degenerate", e.degenerate}};
}

inline Json to_json(const MonogamyReport& r) {
  Json volumes = Json::array();
  for (double v : r.volumes) volumes.push_back(number(v));
  return {{"hub", r.hub},
          {"volumes", volumes},
          {"sqrt_lhs", number(r.sqrt_lhs)},
          {"two_thirds_lhs", number(r.two_thirds_lhs)},
          {"n_bound", number(r.n_bound)},
          {"mean_volume", number(r.mean_volume)}};
}

// {"kraus": [[[re, im] x 4], ...]}, each operator a row-major 2x2 block.
inline Json to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& k : ch.operators()) {
    ops.push_back(Json::array({complex_value(k(0, 0)), complex_value(k(0, 1)), complex_value(k(1, 0)),
                               complex_value(k(1, 1))}));
  }
  return {{"kraus", ops}};
}

inline KrausChannel parse_channel(const Json& j, double tol = kCompletenessTol) {
  steer::detail::require(j.is_object() && j.contains("kraus") && j["kraus"].is_array(),
                         "format: channel needs a kraus array");
  std::vector<Mat2c> ops;
  for (const auto& op : j["kraus"]) {
    steer::detail::require(op.is_array() && op.size() == 4, "format: Kraus operator needs 4 entries");
    Mat2c k;
    k << detail::parse_complex(op[0]), detail::parse_complex(op[1]), detail::parse_complex(op[2]),
        detail::parse_complex(op[3]);
    ops.push_back(k);
  }
  return KrausChannel(std::move(ops), tol);
}

inline Json to_json(const ConjectureResult& r) {
  Json near = Json::array();
  for (const auto& [idx, lhs] : r.near_misses) near.push_back({{"seed", idx}, {"lhs", number(lhs)}});
  return {{"samples", r.samples},       {"violations", r.violations},
          {"max_lhs", number(r.max_lhs)}, {"worst_state_seed", r.worst_state_seed},
          {"bound", number(r.bound)},     {"near_misses", near}};
}

inline Json to_json(const InvariantResult& r) {
  return {{"name", r.name},
          {"samples", r.samples},
          {"failures", r.failures},
          {"worst_margin", number(r.worst_margin)},
          {"passed", r.passed()},
          {"first_failure", r.first_failure}};
}

inline Json to_json(const SuiteReport& r) {
  Json inv = Json::array();
  for (const auto& x : r.invariants) inv.push_back(to_json(x));
  return {{"passed", r.passed()}, {"invariants", inv}};
}

// Rows with static columns() and values() as a JSON array of objects.
template <class Row>
Json rows_to_json(const std::vector<Row>& rows) {
  const auto cols = Row::columns();
  Json out = Json::array();
  for (const auto& row : rows) {
    Json obj = Json::object();
    const auto vals = row.values();
    for (std::size_t i = 0; i < cols.size(); ++i) obj[cols[i]] = number(vals[i]);
    out.push_back(obj);
  }
  return out;
}

inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

template <class Row>
void rows_to_csv(std::ostream& os, const std::vector<Row>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::string> c;
    for (double v : row.values()) c.push_back(format_double(v));
    cells.push_back(std::move(c));
  }
  write_csv(os, Row::columns(), cells);
}

}  // namespace steer::io
