#pragma once

// Parameter sweeps over a one-parameter state family, a fixed channel and an
// (alpha, beta) grid. Rows come out in lexicographic order of
// (param, alpha, beta) grid indices no matter how many workers ran.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "chanvar/channels.hpp"
#include "chanvar/infotheory.hpp"
#include "chanvar/io.hpp"
#include "chanvar/states.hpp"
#include "chanvar/uncertainty.hpp"

namespace chanvar::sweep {

using io::json;

// Inclusive grid start, start + step, ..., up to stop.
struct GridRange {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.01;

  std::vector<double> values() const {
    if (!(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step)) || step <= 0.0) {
      throw Error(ErrorKind::Schema, "grid step must be positive and bounds finite");
    }
    std::vector<double> out;
    if (stop < start) return out;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::min(start + static_cast<double>(i) * step, stop));
    return out;
  }

  // "start:stop:step", "start:stop" (step 0.01) or a single value.
  static GridRange parse(std::string_view text) {
    std::array<double, 3> parts{0.0, 0.0, 0.01};
    std::size_t count = 0;
    while (true) {
      const auto colon = text.find(':');
      if (count == 3) throw Error(ErrorKind::Schema, "grid has more than three fields");
      parts[count++] = io::parse_double(text.substr(0, colon), "grid");
      if (colon == std::string_view::npos) break;
      text.remove_prefix(colon + 1);
    }
    if (count == 1) return {parts[0], parts[0], 1.0};
    return {parts[0], parts[1], parts[2]};
  }

  static GridRange from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), j.get<double>(), 1.0};
    if (j.is_string()) return parse(j.get<std::string>());
    throw Error(ErrorKind::Schema, "grid must be a number or a \"start:stop:step\" string");
  }
};

enum class Family { Werner, Isotropic, BlochGrid };

inline Family parse_family(std::string_view name) {
  if (name == "werner") return Family::Werner;
  if (name == "isotropic") return Family::Isotropic;
  if (name == "bloch-grid" || name == "bloch_grid") return Family::BlochGrid;
  throw Error(ErrorKind::Schema, "unknown family '" + std::string(name) + "' (werner, isotropic, bloch-grid)");
}

enum class Output { V, Q, C, Fe, Se, Ic, Bounds };

inline Output parse_output(std::string_view name) {
  if (name == "V") return Output::V;
  if (name == "Q") return Output::Q;
  if (name == "C") return Output::C;
  if (name == "Fe") return Output::Fe;
  if (name == "Se") return Output::Se;
  if (name == "Ic") return Output::Ic;
  if (name == "bounds") return Output::Bounds;
  throw Error(ErrorKind::Schema, "unknown output '" + std::string(name) + "' (V, Q, C, Fe, Se, Ic, bounds)");
}

inline std::vector<std::string> column_names(Output o) {
  switch (o) {
    case Output::V: return {"V"};
    case Output::Q: return {"Q"};
    case Output::C: return {"C"};
    case Output::Fe: return {"Fe"};
    case Output::Se: return {"Se"};
    case Output::Ic: return {"Ic"};
    case Output::Bounds:
      return {"tradeoff_lhs", "tradeoff_rhs", "exchange_lhs", "exchange_rhs", "coherent_lhs", "coherent_rhs", "fano_rhs"};
  }
  return {};
}

struct SweepSpec {
  Family family = Family::Werner;
  json channel = json{{"preset", "basis-channel"}, {"d", 4}};
  GridRange alpha_grid{0.0, 1.0, 0.01};
  GridRange beta_grid{0.0, 1.0, 0.01};
  GridRange param_grid{0.0, 1.0, 0.01};
  std::vector<Output> outputs{Output::V, Output::Q, Output::C};
  std::array<double, 3> direction{0.0, 0.0, 1.0};  // bloch-grid: r * direction

  static SweepSpec from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Schema, "sweep spec must be a JSON object");
    SweepSpec s;
    if (j.contains("family")) {
      if (!j.at("family").is_string()) throw Error(ErrorKind::Schema, "family must be a string");
      s.family = parse_family(j.at("family").get<std::string>());
    }
    if (j.contains("channel")) {
      const json& c = j.at("channel");
      s.channel = c.is_string() ? io::load_source(c.get<std::string>()) : c;
    } else if (s.family == Family::BlochGrid) {
      throw Error(ErrorKind::Schema, "bloch-grid sweeps need an explicit channel");
    }
    if (j.contains("alpha")) s.alpha_grid = GridRange::from_json(j.at("alpha"));
    if (j.contains("beta")) s.beta_grid = GridRange::from_json(j.at("beta"));
    if (j.contains("param")) s.param_grid = GridRange::from_json(j.at("param"));
    if (j.contains("outputs")) {
      const json& o = j.at("outputs");
      if (!o.is_array() || o.empty()) throw Error(ErrorKind::Schema, "outputs must be a non-empty array");
      s.outputs.clear();
      for (const json& name : o) {
        if (!name.is_string()) throw Error(ErrorKind::Schema, "output names are strings");
        s.outputs.push_back(parse_output(name.get<std::string>()));
      }
    }
    if (j.contains("direction")) {
      const json& d = j.at("direction");
      if (!d.is_array() || d.size() != 3) throw Error(ErrorKind::Schema, "direction must be [n1, n2, n3]");
      for (std::size_t i = 0; i < 3; ++i) {
        if (!d[i].is_number()) throw Error(ErrorKind::Schema, "direction must be numeric");
        s.direction[i] = d[i].get<double>();
      }
    }
    return s;
  }
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::size_t skipped_pairs = 0;  // (alpha, beta) with alpha + beta > 1
};

namespace detail {

inline DensityMatrix family_state(const SweepSpec& spec, double x) {
  switch (spec.family) {
    case Family::Werner: return werner(x);
    case Family::Isotropic: return isotropic(x);
    case Family::BlochGrid: {
      const auto& n = spec.direction;
      const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
      if (norm == 0.0) throw Error(ErrorKind::Schema, "bloch-grid direction must be nonzero");
      return from_bloch(BlochQubit(x * n[0] / norm, x * n[1] / norm, x * n[2] / norm));
    }
  }
  throw Error(ErrorKind::Schema, "unknown family");
}

inline Eigen::Index family_dim(Family f) { return f == Family::BlochGrid ? 2 : 4; }

struct Pair {
  double alpha;
  double beta;
};

// All rows for one family parameter value.
inline std::vector<std::vector<double>> rows_for(const SweepSpec& spec, const KrausChannel& phi, double x,
                                                 const std::vector<Pair>& pairs) {
  const DensityMatrix rho = family_state(spec, x);
  const PsdSpectrum spectrum = rho.spectrum();
  const bool wants_entropy = std::any_of(spec.outputs.begin(), spec.outputs.end(), [](Output o) {
    return o == Output::Se || o == Output::Ic || o == Output::Bounds;
  });
  double s_e = 0.0;
  double i_c = 0.0;
  double s_rho = 0.0;
  BoundReport fano{};
  if (wants_entropy) {
    s_e = entropy_exchange(rho, phi);
    i_c = coherent_information(rho, phi);
    s_rho = von_neumann_entropy(rho.matrix());
    fano = quantum_fano_check(rho, phi);
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(pairs.size());
  for (const Pair& pr : pairs) {
    const AlphaBeta ab(pr.alpha, pr.beta);
    const ChannelTerms t = channel_terms(rho, spectrum, phi, ab);
    const UncertaintyTriple u = uncertainty_from_terms(t);
    std::vector<double> row{x, pr.alpha, pr.beta};
    for (Output o : spec.outputs) {
      switch (o) {
        case Output::V: row.push_back(u.total_v); break;
        case Output::Q: row.push_back(u.quantum_q); break;
        case Output::C: row.push_back(u.classical_c); break;
        case Output::Fe: row.push_back(t.fidelity); break;
        case Output::Se: row.push_back(s_e); break;
        case Output::Ic: row.push_back(i_c); break;
        case Output::Bounds: {
          const BoundReport b18 = fidelity_tradeoff(t);
          const BoundReport b19 = entropy_exchange_bound(t, s_e, phi.dim());
          const BoundReport b20 = coherent_info_bound(t, s_rho, i_c, phi.dim());
          row.insert(row.end(), {b18.lhs, b18.rhs, b19.lhs, b19.rhs, b20.lhs, b20.rhs, fano.rhs});
          break;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

// threads == 0 picks the hardware concurrency.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1) {
  const KrausChannel phi = io::channel_from_json(spec.channel);
  const Eigen::Index d = detail::family_dim(spec.family);
  if (phi.dim() != d) {
    throw Error(ErrorKind::DimMismatch,
                "channel acts on dimension " + std::to_string(phi.dim()) + ", family needs " + std::to_string(d));
  }

  const std::vector<double> params = spec.param_grid.values();
  const std::vector<double> alphas = spec.alpha_grid.values();
  const std::vector<double> betas = spec.beta_grid.values();
  if (params.empty() || alphas.empty() || betas.empty()) throw Error(ErrorKind::Schema, "sweep grid is empty");

  SweepResult result;
  result.columns = {"family_param", "alpha", "beta"};
  for (Output o : spec.outputs) {
    for (auto& c : column_names(o)) result.columns.push_back(std::move(c));
  }

  std::vector<detail::Pair> pairs;
  for (double a : alphas) {
    for (double b : betas) {
      if (AlphaBeta::admissible(a, b)) {
        pairs.push_back({a, b});
      } else {
        ++result.skipped_pairs;
      }
    }
  }
  if (pairs.empty()) throw Error(ErrorKind::Schema, "no (alpha, beta) pair on the grid satisfies alpha + beta <= 1");

  std::vector<std::vector<std::vector<double>>> blocks(params.size());
  std::vector<std::exception_ptr> errors(params.size());
  const auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < params.size(); i += stride) {
      try {
        blocks[i] = detail::rows_for(spec, phi, params[i], pairs);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, params.size()));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.rows.reserve(params.size() * pairs.size());
  for (auto& block : blocks) {
    for (auto& row : block) result.rows.push_back(std::move(row));
  }
  return result;
}

inline void write_csv(std::ostream& out, const SweepResult& r) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << io::format_double(row[i]);
    out << '\n';
  }
}

inline json to_json(const SweepResult& r) {
  return json{{"columns", r.columns}, {"rows", r.rows}, {"skipped_pairs", r.skipped_pairs}};
}

}  // namespace chanvar::sweep
