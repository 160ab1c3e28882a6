#pragma once

// JSON schema for states and channels, preset strings, and number formatting.
//
//   complex  : number | [re, im]
//   matrix   : [[complex, ...], ...]                  (row-major)
//   state    : {"matrix": m} | {"bloch": [r1, r2, r3]} | {"amplitudes": [complex, ...]}
//            | {"preset": name, ...}
//   channel  : {"kraus": [m, ...]} | {"preset": name, ...}
//
// A source string is either a path to a JSON file or "preset:NAME[:k=v,...]",
// which is shorthand for {"preset": NAME, "k": v, ...}.

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chanvar/channels.hpp"
#include "chanvar/errors.hpp"
#include "chanvar/infotheory.hpp"
#include "chanvar/states.hpp"
#include "chanvar/uncertainty.hpp"

namespace chanvar::io {

using json = nlohmann::json;

// Shortest decimal string that reads back to the same double.
inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(std::string_view text, std::string_view what) {
  double out = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw Error(ErrorKind::Schema, std::string(what) + ": not a number: '" + std::string(text) + "'");
  }
  return out;
}

namespace detail {

inline std::string normalized_name(std::string name) {
  for (char& c : name) {
    if (c == '_') c = '-';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return name;
}

inline double number_field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::Schema, std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorKind::Schema, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

inline double number_field(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number_field(j, key) : fallback;
}

inline Eigen::Index dim_field(const json& j, const char* key, Eigen::Index fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(ErrorKind::Schema, std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

inline std::uint64_t seed_field(const json& j) {
  if (!j.contains("seed")) return 0;
  const json& v = j.at("seed");
  if (!v.is_number_integer() || v.get<long long>() < 0) throw Error(ErrorKind::Schema, "seed must be a non-negative integer");
  return v.get<std::uint64_t>();
}

inline std::string preset_name(const json& j) {
  const json& v = j.at("preset");
  if (!v.is_string()) throw Error(ErrorKind::Schema, "preset must be a string");
  return normalized_name(v.get<std::string>());
}

}  // namespace detail

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorKind::Schema, "complex entry must be a number or [re, im]");
}

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Schema, "matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorKind::Schema, "matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorKind::Schema, "matrix rows must all have length " + std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline PureState pure_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Schema, "amplitudes must be a non-empty array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return PureState::normalized(v);
}

// Presets: werner(p), isotropic(F), maximally-mixed(d), basis(d, index),
// singlet, phi-plus, random(d, rank, seed). {"amplitudes": [...]} is a pure
// state given by its (normalized) state vector.
inline DensityMatrix state_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "state must be a JSON object");
  if (j.contains("matrix")) return DensityMatrix(matrix_from_json(j.at("matrix")));
  if (j.contains("bloch")) {
    const json& b = j.at("bloch");
    if (!b.is_array() || b.size() != 3 || !b[0].is_number() || !b[1].is_number() || !b[2].is_number()) {
      throw Error(ErrorKind::Schema, "bloch must be [r1, r2, r3]");
    }
    return from_bloch(BlochQubit(b[0].get<double>(), b[1].get<double>(), b[2].get<double>()));
  }
  if (j.contains("amplitudes")) return pure_from_json(j.at("amplitudes")).density();
  if (!j.contains("preset")) throw Error(ErrorKind::Schema, "state needs one of matrix, bloch, amplitudes, preset");

  const std::string name = detail::preset_name(j);
  if (name == "werner") return werner(detail::number_field(j, "p"));
  if (name == "isotropic") {
    return isotropic(j.contains("F") ? detail::number_field(j, "F") : detail::number_field(j, "f"));
  }
  if (name == "maximally-mixed") return maximally_mixed(detail::dim_field(j, "d", 2));
  if (name == "basis") {
    const Eigen::Index d = detail::dim_field(j, "d", 2);
    const Eigen::Index index = detail::dim_field(j, "index", 1) - 1;
    if (index >= d) throw Error(ErrorKind::Schema, "basis index exceeds dimension");
    ComplexVector v = ComplexVector::Zero(d);
    v(index) = 1.0;
    return PureState(v).density();
  }
  if (name == "singlet" || name == "phi-plus") {
    const double h = 1.0 / std::sqrt(2.0);
    ComplexVector v = ComplexVector::Zero(4);
    if (name == "singlet") {
      v(1) = h;
      v(2) = -h;
    } else {
      v(0) = h;
      v(3) = h;
    }
    return PureState::normalized(v).density();
  }
  if (name == "random") {
    const Eigen::Index d = detail::dim_field(j, "d", 2);
    return random_density(d, detail::dim_field(j, "rank", d), detail::seed_field(j));
  }
  throw Error(ErrorKind::Schema, "unknown state preset '" + name + "'");
}

// Presets: identity(d), amplitude-damping(p), phase-damping(p),
// depolarizing(p), hadamard-decoherence(theta), basis-channel(d),
// measurement(d), random(d, k, seed).
inline KrausChannel channel_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Schema, "channel must be a JSON object");
  if (j.contains("kraus")) {
    const json& ks = j.at("kraus");
    if (!ks.is_array() || ks.empty()) throw Error(ErrorKind::Schema, "kraus must be a non-empty array of matrices");
    std::vector<ComplexMatrix> ops;
    ops.reserve(ks.size());
    for (const json& k : ks) ops.push_back(matrix_from_json(k));
    return KrausChannel(std::move(ops));
  }
  if (!j.contains("preset")) throw Error(ErrorKind::Schema, "channel needs kraus or preset");

  const std::string name = detail::preset_name(j);
  if (name == "identity") return identity_channel(detail::dim_field(j, "d", 2));
  if (name == "amplitude-damping") return amplitude_damping(detail::number_field(j, "p"));
  if (name == "phase-damping") return phase_damping(detail::number_field(j, "p"));
  if (name == "depolarizing") return depolarizing(detail::number_field(j, "p"));
  if (name == "hadamard-decoherence" || name == "hadamard") {
    return hadamard_decoherence(detail::number_field(j, "theta"));
  }
  if (name == "basis-channel") return basis_channel(detail::dim_field(j, "d", 2));
  if (name == "measurement") return computational_measurement(detail::dim_field(j, "d", 2));
  if (name == "random") {
    std::mt19937_64 rng(detail::seed_field(j));
    const Eigen::Index d = detail::dim_field(j, "d", 2);
    return random_channel(d, static_cast<std::size_t>(detail::dim_field(j, "k", d)), rng);
  }
  throw Error(ErrorKind::Schema, "unknown channel preset '" + name + "'");
}

inline json channel_to_json(const KrausChannel& phi) {
  json ks = json::array();
  for (const auto& k : phi.kraus()) ks.push_back(matrix_to_json(k));
  return json{{"kraus", std::move(ks)}};
}

inline json state_to_json(const DensityMatrix& rho) { return json{{"matrix", matrix_to_json(rho.matrix())}}; }

// "preset:werner:p=0.5" -> {"preset": "werner", "p": 0.5}. Values that parse
// as integers stay integers so that d, rank and seed keep their type.
inline json parse_preset(std::string_view text) {
  constexpr std::string_view prefix = "preset:";
  if (text.substr(0, prefix.size()) != prefix) throw Error(ErrorKind::Schema, "preset strings start with 'preset:'");
  text.remove_prefix(prefix.size());
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  if (name.empty()) throw Error(ErrorKind::Schema, "preset name is empty");
  json j{{"preset", std::string(name)}};
  if (colon == std::string_view::npos) return j;

  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorKind::Schema, "preset parameter '" + std::string(item) + "' is not key=value");
    }
    const std::string key(item.substr(0, eq));
    const std::string_view value = item.substr(eq + 1);
    long long as_int = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), as_int);
    if (res.ec == std::errc{} && res.ptr == value.data() + value.size()) {
      j[key] = as_int;
    } else {
      j[key] = parse_double(value, key);
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::Io, "read failed for '" + path + "'");
  return text;
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, origin + ": " + e.what());
  }
}

// A source is a preset string or a path to a JSON file.
inline json load_source(const std::string& source) {
  if (source.rfind("preset:", 0) == 0) return parse_preset(source);
  return parse_json(read_file(source), source);
}

inline DensityMatrix load_state(const std::string& source) { return state_from_json(load_source(source)); }
inline KrausChannel load_channel(const std::string& source) { return channel_from_json(load_source(source)); }

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

inline json to_json(const UncertaintyTriple& t) {
  return json{{"V", t.total_v}, {"Q", t.quantum_q}, {"C", t.classical_c}, {"residual", t.decomposition_residual()}};
}

inline json to_json(const BoundReport& b) {
  return json{{"lhs", b.lhs}, {"rhs", b.rhs}, {"slack", b.slack}, {"satisfied", b.satisfied}};
}

}  // namespace chanvar::io
