#pragma once

// The four chanvar subcommands as plain functions over streams, so that the
// executable stays a thin argument parser and tests can drive them directly.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad input (schema, ranges,
// dimensions), 3 invariant violation in a supplied state or channel, 4 I/O.

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chanvar/channels.hpp"
#include "chanvar/errors.hpp"
#include "chanvar/infotheory.hpp"
#include "chanvar/io.hpp"
#include "chanvar/states.hpp"
#include "chanvar/sweep.hpp"
#include "chanvar/uncertainty.hpp"
#include "chanvar/verify.hpp"

namespace chanvar::cli {

using io::json;

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadInput = 2,
  kInvariant = 3,
  kIo = 4,
};

struct PointArgs {
  std::string state;
  std::string channel;
  double alpha = 0.5;
  double beta = 0.5;
  bool json = false;
  std::string out;  // empty: write to the output stream
};

struct SweepArgs {
  std::optional<std::string> spec;  // JSON file; the flags below override it
  std::optional<std::string> family;
  std::optional<std::string> channel;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<std::string> param;
  std::optional<std::string> outputs;    // comma separated
  std::optional<std::string> direction;  // "n1,n2,n3"
  unsigned threads = 1;
  bool json = false;
  std::string out;
};

struct VerifyArgs {
  std::uint64_t seed = 20240229;
  std::size_t samples = 500;
  std::string dims = "2-4";
  std::optional<std::string> channel;
  bool json = false;
  std::string out;
};

namespace detail {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) {
      err << "error: " << e.what() << '\n';
      return kIo;
    }
    if (e.is_invariant_violation()) {
      err << "invariant violation: " << e.what() << '\n';
      return kInvariant;
    }
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const json::exception& e) {
    err << "error: Schema: " << e.what() << '\n';
    return kBadInput;
  }
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

inline std::string fmt(double x) { return io::format_double(x); }

inline void bound_row(std::ostream& os, const std::string& name, const BoundReport& b) {
  os << std::left << std::setw(24) << name << std::setw(24) << fmt(b.lhs) << std::setw(24) << fmt(b.rhs)
     << std::setw(24) << fmt(b.slack) << (b.satisfied ? "yes" : "NO") << '\n';
}

}  // namespace detail

inline int cmd_uncertainty(const PointArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const DensityMatrix rho = io::load_state(args.state);
    const KrausChannel phi = io::load_channel(args.channel);
    const AlphaBeta ab(args.alpha, args.beta);
    const UncertaintyTriple u = channel_uncertainty(rho, phi, ab);

    std::ostringstream os;
    if (args.json) {
      json j = io::to_json(u);
      j["alpha"] = args.alpha;
      j["beta"] = args.beta;
      os << j.dump(2) << '\n';
    } else {
      os << "alpha     " << detail::fmt(args.alpha) << '\n'
         << "beta      " << detail::fmt(args.beta) << '\n'
         << "V         " << detail::fmt(u.total_v) << '\n'
         << "Q         " << detail::fmt(u.quantum_q) << '\n'
         << "C         " << detail::fmt(u.classical_c) << '\n'
         << "residual  " << detail::fmt(u.decomposition_residual()) << '\n';
    }
    detail::emit(args.out, os.str(), out);
    return static_cast<int>(kOk);
  });
}

// Unsatisfied bounds are reported, never turned into a failing exit code.
inline int cmd_bounds(const PointArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const DensityMatrix rho = io::load_state(args.state);
    const KrausChannel phi = io::load_channel(args.channel);
    const AlphaBeta ab(args.alpha, args.beta);

    std::vector<std::pair<std::string, BoundReport>> reports;
    reports.emplace_back("fidelity-tradeoff", fidelity_tradeoff(rho, phi, ab));
    reports.emplace_back("entropy-exchange-bound", entropy_exchange_bound(rho, phi, ab));
    reports.emplace_back("coherent-info-bound", coherent_info_bound(rho, phi, ab));
    reports.emplace_back("quantum-fano", quantum_fano_check(rho, phi));
    if (rho.spectrum().rank() == 1) {
      const UncertaintyTriple u = channel_uncertainty(rho, phi, ab);
      reports.emplace_back("pure-state-tradeoff", equality_report(2.0 * u.total_v + entanglement_fidelity(rho, phi), 1.0));
    }
    if (is_unital(phi) && std::abs(args.alpha + args.beta - 1.0) <= 1e-12) {
      reports.emplace_back("unital-conservation", unital_conservation(rho, phi, ab));
    }

    std::ostringstream os;
    if (args.json) {
      json j = json::object();
      j["alpha"] = args.alpha;
      j["beta"] = args.beta;
      for (const auto& [name, b] : reports) j[name] = io::to_json(b);
      os << j.dump(2) << '\n';
    } else {
      os << std::left << std::setw(24) << "bound" << std::setw(24) << "lhs" << std::setw(24) << "rhs" << std::setw(24)
         << "slack"
         << "satisfied\n";
      for (const auto& [name, b] : reports) detail::bound_row(os, name, b);
    }
    detail::emit(args.out, os.str(), out);
    return static_cast<int>(kOk);
  });
}

inline sweep::SweepSpec build_sweep_spec(const SweepArgs& args) {
  json j = args.spec ? io::parse_json(io::read_file(*args.spec), *args.spec) : json::object();
  if (!j.is_object()) throw Error(ErrorKind::Schema, "sweep spec must be a JSON object");
  if (args.family) j["family"] = *args.family;
  if (args.channel) j["channel"] = io::load_source(*args.channel);
  if (args.alpha) j["alpha"] = *args.alpha;
  if (args.beta) j["beta"] = *args.beta;
  if (args.param) j["param"] = *args.param;
  if (args.outputs) j["outputs"] = detail::split(*args.outputs, ',');
  if (args.direction) {
    json d = json::array();
    for (const auto& part : detail::split(*args.direction, ',')) d.push_back(io::parse_double(part, "direction"));
    j["direction"] = d;
  }
  return sweep::SweepSpec::from_json(j);
}

inline int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const sweep::SweepSpec spec = build_sweep_spec(args);
    const sweep::SweepResult result = sweep::run_sweep(spec, args.threads);
    if (result.skipped_pairs > 0) {
      err << "note: skipped " << result.skipped_pairs << " (alpha, beta) pairs with alpha + beta > 1\n";
    }
    std::ostringstream os;
    if (args.json) {
      os << sweep::to_json(result).dump() << '\n';
    } else {
      sweep::write_csv(os, result);
    }
    detail::emit(args.out, os.str(), out);
    return static_cast<int>(kOk);
  });
}

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    verify::VerifyConfig config;
    config.seed = args.seed;
    config.samples = args.samples;
    config.dims = verify::parse_dims(args.dims);
    if (args.channel) {
      config.channel = io::load_channel(*args.channel);
      config.dims = {config.channel->dim()};
    }
    const auto results = verify::run_suite(config);
    const bool ok = verify::all_passed(results);

    std::ostringstream os;
    if (args.json) {
      json props = json::array();
      for (const auto& r : results) {
        props.push_back({{"name", r.name}, {"checked", r.checked}, {"failed", r.failed}, {"worst_slack", r.worst_slack}});
      }
      json dims = json::array();
      for (auto d : config.dims) dims.push_back(d);
      os << json{{"seed", args.seed}, {"samples", args.samples}, {"dims", dims}, {"properties", props}, {"passed", ok}}.dump(2)
         << '\n';
    } else {
      os << std::left << std::setw(26) << "property" << std::setw(10) << "checked" << std::setw(8) << "failed"
         << "worst_slack\n";
      std::size_t passed = 0;
      for (const auto& r : results) {
        os << std::left << std::setw(26) << r.name << std::setw(10) << r.checked << std::setw(8) << r.failed
           << detail::fmt(r.worst_slack) << '\n';
        if (r.passed()) ++passed;
      }
      os << (ok ? "PASS" : "FAIL") << ": " << passed << "/" << results.size() << " properties\n";
    }
    detail::emit(args.out, os.str(), out);
    return static_cast<int>(ok ? kOk : kVerifyFailed);
  });
}

}  // namespace chanvar::cli
