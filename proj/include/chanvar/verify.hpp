#pragma once

// Seeded randomized checks of the structural properties of the uncertainty
// functionals and the information-theoretic bounds. Every sample draws from
// its own generator seeded by (seed, property, sample index), so results do
// not depend on evaluation order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chanvar/channels.hpp"
#include "chanvar/infotheory.hpp"
#include "chanvar/io.hpp"
#include "chanvar/linalg.hpp"
#include "chanvar/states.hpp"
#include "chanvar/uncertainty.hpp"

namespace chanvar::verify {

using Rng = std::mt19937_64;

struct VerifyConfig {
  std::uint64_t seed = 20240229;
  std::size_t samples = 500;
  std::vector<Eigen::Index> dims{2, 3, 4};
  std::optional<KrausChannel> channel;  // replaces the random channel draw when set
  double tolerance = tol::bound;
};

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_slack = std::numeric_limits<double>::infinity();

  bool passed() const { return failed == 0 && checked > 0; }
};

// "2-4", "2,3,4" or "3".
inline std::vector<Eigen::Index> parse_dims(std::string_view text) {
  const auto as_dim = [](std::string_view t) {
    const double v = io::parse_double(t, "dims");
    if (v < 1.0 || v != std::floor(v) || v > 64.0) throw Error(ErrorKind::Schema, "dims must be integers in [1, 64]");
    return static_cast<Eigen::Index>(v);
  };
  std::vector<Eigen::Index> out;
  if (const auto dash = text.find('-'); dash != std::string_view::npos) {
    const Eigen::Index lo = as_dim(text.substr(0, dash));
    const Eigen::Index hi = as_dim(text.substr(dash + 1));
    if (hi < lo) throw Error(ErrorKind::Schema, "dims range is empty");
    for (Eigen::Index d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  while (true) {
    const auto comma = text.find(',');
    out.push_back(as_dim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

namespace detail {

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::Index uniform_index(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

// Uniform on the triangle alpha, beta >= 0, alpha + beta <= 1.
inline AlphaBeta random_ab(Rng& rng) {
  double a = uniform(rng);
  double b = uniform(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return {a, b};
}

// alpha + 2 beta <= 1 and 2 alpha + beta <= 1.
inline AlphaBeta restricted_ab(Rng& rng) {
  while (true) {
    const double a = uniform(rng, 0.0, 0.5);
    const double b = uniform(rng, 0.0, 0.5);
    if (a + 2.0 * b <= 1.0 && 2.0 * a + b <= 1.0) return {a, b};
  }
}

inline DensityMatrix random_state(Rng& rng, Eigen::Index d) { return random_density(d, uniform_index(rng, 1, d), rng); }

inline KrausChannel fresh_channel(Rng& rng, Eigen::Index d) {
  return random_channel(d, static_cast<std::size_t>(uniform_index(rng, 1, 4)), rng);
}

// Mixture of random unitaries.
inline KrausChannel random_unital_channel(Rng& rng, Eigen::Index d) {
  const auto n = uniform_index(rng, 1, 3);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (double& x : w) x = uniform(rng, 0.05, 1.0);
  double total = 0.0;
  for (double x : w) total += x;
  std::vector<ComplexMatrix> ops;
  for (double x : w) ops.push_back(std::sqrt(x / total) * random_unitary(d, rng));
  return KrausChannel(std::move(ops));
}

struct Sample {
  Rng rng;
  Eigen::Index dim;
  const VerifyConfig& config;

  KrausChannel channel() { return config.channel ? *config.channel : fresh_channel(rng, dim); }
};

// Largest absolute difference, reported as a non-positive slack.
inline double agreement(std::initializer_list<double> deltas) {
  double worst = 0.0;
  for (double d : deltas) worst = std::max(worst, std::abs(d));
  return -worst;
}

struct Property {
  std::string_view name;
  std::function<double(Sample&)> check;  // returns slack; >= -tolerance passes
};

inline std::vector<Property> properties() {
  std::vector<Property> ps;

  ps.push_back({"non-negativity", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const UncertaintyTriple u = channel_uncertainty(rho, s.channel(), random_ab(s.rng));
                  return std::min({u.total_v, u.quantum_q, u.classical_c});
                }});

  ps.push_back({"decomposition", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = random_ab(s.rng);
                  double q = 0.0;
                  double c = 0.0;
                  for (const auto& k : phi.kraus()) {
                    q += mgwyd_operator(rho, k, ab);
                    c += classical_operator(rho, k, ab);
                  }
                  return agreement({mgv_channel(rho, phi, ab) - (q + c)});
                }});

  ps.push_back({"kraus-independence", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = random_ab(s.rng);
                  const auto size = static_cast<Eigen::Index>(phi.size()) + uniform_index(s.rng, 0, 2);
                  const KrausChannel mixed = mix_kraus(phi, random_unitary(size, s.rng));
                  const UncertaintyTriple a = channel_uncertainty(rho, phi, ab);
                  const UncertaintyTriple b = channel_uncertainty(rho, mixed, ab);
                  return agreement({a.total_v - b.total_v, a.quantum_q - b.quantum_q});
                }});

  ps.push_back({"linearity", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const KrausChannel phi1 = s.channel();
                  const KrausChannel phi2 = fresh_channel(s.rng, s.dim);
                  const AlphaBeta ab = random_ab(s.rng);
                  const double l1 = uniform(s.rng, 0.0, 2.0);
                  const double l2 = uniform(s.rng, 0.0, 2.0);
                  const auto ops = scaled_union(phi1.kraus(), l1, phi2.kraus(), l2);
                  const UncertaintyTriple joint = operator_sum_uncertainty(rho, ops, ab);
                  const UncertaintyTriple u1 = channel_uncertainty(rho, phi1, ab);
                  const UncertaintyTriple u2 = channel_uncertainty(rho, phi2, ab);
                  return agreement({joint.total_v - (l1 * u1.total_v + l2 * u2.total_v),
                                    joint.quantum_q - (l1 * u1.quantum_q + l2 * u2.quantum_q)});
                }});

  ps.push_back({"concavity", [](Sample& s) {
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = random_ab(s.rng);
                  ComplexMatrix mix = ComplexMatrix::Zero(s.dim, s.dim);
                  double weighted = 0.0;
                  double w_total = 0.0;
                  std::vector<std::pair<double, DensityMatrix>> parts;
                  for (int j = 0; j < 3; ++j) {
                    const double w = uniform(s.rng, 0.05, 1.0);
                    parts.emplace_back(w, random_state(s.rng, s.dim));
                    w_total += w;
                  }
                  for (const auto& [w, rho] : parts) {
                    mix += (w / w_total) * rho.matrix();
                    weighted += (w / w_total) * mgv_channel(rho, phi, ab);
                  }
                  return mgv_channel(DensityMatrix(0.5 * (mix + mix.adjoint())), phi, ab) - weighted;
                }});

  ps.push_back({"unitary-invariance", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = random_ab(s.rng);
                  const ComplexMatrix u = random_unitary(s.dim, s.rng);
                  const ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
                  const DensityMatrix rho_u(0.5 * (rotated + rotated.adjoint()));
                  const UncertaintyTriple a = channel_uncertainty(rho, phi, ab);
                  const UncertaintyTriple b = channel_uncertainty(rho_u, unitary_conjugate(phi, u), ab);
                  return agreement({a.total_v - b.total_v, a.quantum_q - b.quantum_q});
                }});

  ps.push_back({"ancillary-independence", [](Sample& s) {
                  const DensityMatrix rho_a = random_state(s.rng, s.dim);
                  const Eigen::Index db = uniform_index(s.rng, 1, 2);
                  const DensityMatrix rho_b = random_state(s.rng, db);
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = random_ab(s.rng);
                  const DensityMatrix joint(kron(rho_a.matrix(), rho_b.matrix()));
                  const UncertaintyTriple a = channel_uncertainty(joint, tensor_with_identity(phi, Side::Left, db), ab);
                  const UncertaintyTriple b = channel_uncertainty(rho_a, phi, ab);
                  return agreement({a.total_v - b.total_v, a.quantum_q - b.quantum_q});
                }});

  ps.push_back({"purification-inequality", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = random_ab(s.rng);
                  const Purification pur = purify(rho);
                  const KrausChannel extended = tensor_with_identity(phi, Side::Right, pur.ancilla_dim);
                  return mgv_channel(rho, phi, ab) - pure_state_uncertainty(pur.state, extended);
                }});

  // Product inputs, where the marginals are exact.
  ps.push_back({"subadditivity", [](Sample& s) {
                  const DensityMatrix rho_a = random_state(s.rng, s.dim);
                  const DensityMatrix rho_b = random_state(s.rng, 2);
                  const KrausChannel phi_a = s.channel();
                  const KrausChannel phi_b = fresh_channel(s.rng, 2);
                  const AlphaBeta ab = random_ab(s.rng);
                  const DensityMatrix joint(kron(rho_a.matrix(), rho_b.matrix()));
                  const KrausChannel left = tensor_with_identity(phi_a, Side::Left, 2);
                  const KrausChannel right = tensor_with_identity(phi_b, Side::Right, s.dim);
                  const auto ops = scaled_union(left.kraus(), 1.0, right.kraus(), 1.0);
                  const double lhs = operator_sum_uncertainty(joint, ops, ab).total_v;
                  return mgv_channel(rho_a, phi_a, ab) + mgv_channel(rho_b, phi_b, ab) - lhs;
                }});

  ps.push_back({"q-convexity", [](Sample& s) {
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = restricted_ab(s.rng);
                  const double w = uniform(s.rng);
                  const DensityMatrix r1 = random_state(s.rng, s.dim);
                  const DensityMatrix r2 = random_state(s.rng, s.dim);
                  const ComplexMatrix mix = w * r1.matrix() + (1.0 - w) * r2.matrix();
                  const double joint = mgwyd_channel(DensityMatrix(0.5 * (mix + mix.adjoint())), phi, ab);
                  return w * mgwyd_channel(r1, phi, ab) + (1.0 - w) * mgwyd_channel(r2, phi, ab) - joint;
                }});

  ps.push_back({"c-concavity", [](Sample& s) {
                  const KrausChannel phi = s.channel();
                  const AlphaBeta ab = random_ab(s.rng);
                  const double w = uniform(s.rng);
                  const DensityMatrix r1 = random_state(s.rng, s.dim);
                  const DensityMatrix r2 = random_state(s.rng, s.dim);
                  const ComplexMatrix mix = w * r1.matrix() + (1.0 - w) * r2.matrix();
                  const double joint = classical_channel(DensityMatrix(0.5 * (mix + mix.adjoint())), phi, ab);
                  return joint - (w * classical_channel(r1, phi, ab) + (1.0 - w) * classical_channel(r2, phi, ab));
                }});

  // State and Kraus operators diagonal in one rotated basis.
  ps.push_back({"commuting-q-zero", [](Sample& s) {
                  const ComplexMatrix u = random_unitary(s.dim, s.rng);
                  RealVector p(s.dim);
                  for (Eigen::Index i = 0; i < s.dim; ++i) p(i) = uniform(s.rng, 0.01, 1.0);
                  p /= p.sum();
                  const ComplexMatrix rho_m = u * p.cast<Complex>().asDiagonal() * u.adjoint();
                  const DensityMatrix rho(0.5 * (rho_m + rho_m.adjoint()));
                  const auto n = uniform_index(s.rng, 1, 3);
                  std::vector<ComplexVector> diags;
                  RealVector norms = RealVector::Zero(s.dim);
                  for (Eigen::Index i = 0; i < n; ++i) {
                    diags.push_back(ginibre(s.dim, 1, s.rng).col(0));
                    norms += diags.back().cwiseAbs2();
                  }
                  std::vector<ComplexMatrix> ops;
                  for (const auto& dvec : diags) {
                    const ComplexVector scaled = dvec.cwiseQuotient(norms.cwiseSqrt().cast<Complex>());
                    ops.push_back(u * scaled.asDiagonal() * u.adjoint());
                  }
                  return agreement({mgwyd_channel(rho, KrausChannel(std::move(ops)), random_ab(s.rng))});
                }});

  ps.push_back({"fidelity-representation", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const KrausChannel phi = s.channel();
                  const auto size = static_cast<Eigen::Index>(phi.size()) + uniform_index(s.rng, 0, 2);
                  const KrausChannel mixed = mix_kraus(phi, random_unitary(size, s.rng));
                  const double f = entanglement_fidelity(rho, phi);
                  return agreement({f - entanglement_fidelity(rho, mixed), f - entanglement_fidelity_purified(rho, phi)});
                }});

  ps.push_back({"entropy-exchange-paths", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  const KrausChannel phi = s.channel();
                  return agreement({entropy_exchange(rho, phi) - entropy_exchange_purified(rho, phi)});
                }});

  ps.push_back({"fidelity-tradeoff", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  return fidelity_tradeoff(rho, s.channel(), random_ab(s.rng)).slack;
                }});

  // Flat output spectrum: I/d for every input.
  ps.push_back({"flat-spectrum-tradeoff", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  return agreement({fidelity_tradeoff(rho, basis_channel(s.dim), random_ab(s.rng)).slack});
                }});

  ps.push_back({"pure-state-tradeoff", [](Sample& s) {
                  const PureState psi = random_pure_state(s.dim, s.rng);
                  return pure_state_tradeoff(psi, s.channel(), random_ab(s.rng)).slack;
                }});

  // Full rank: with the support convention rho^0 is the support projector P,
  // and V + F_e = (1 + tr rho Phi(P))/2 reaches 1 only when tr rho Phi(P) = 1.
  ps.push_back({"unital-conservation", [](Sample& s) {
                  const DensityMatrix rho = random_density(s.dim, s.dim, s.rng);
                  const double a = uniform(s.rng);
                  KrausChannel phi = s.config.channel && is_unital(*s.config.channel) ? *s.config.channel
                                                                                       : random_unital_channel(s.rng, s.dim);
                  return unital_conservation(rho, phi, AlphaBeta(a, 1.0 - a)).slack;
                }});

  ps.push_back({"entropy-exchange-bound", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  return entropy_exchange_bound(rho, s.channel(), random_ab(s.rng)).slack;
                }});

  ps.push_back({"coherent-info-bound", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  return coherent_info_bound(rho, s.channel(), random_ab(s.rng)).slack;
                }});

  ps.push_back({"quantum-fano", [](Sample& s) {
                  const DensityMatrix rho = random_state(s.rng, s.dim);
                  return quantum_fano_check(rho, s.channel()).slack;
                }});

  return ps;
}

}  // namespace detail

inline std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& p : detail::properties()) out.emplace_back(p.name);
  return out;
}

// Runs the named properties (all when `only` is empty).
inline std::vector<PropertyResult> run_suite(const VerifyConfig& config, const std::vector<std::string>& only = {}) {
  if (config.samples < 1) throw Error(ErrorKind::OutOfRange, "samples must be at least 1");
  std::vector<Eigen::Index> dims = config.dims;
  if (config.channel) dims = {config.channel->dim()};
  if (dims.empty()) throw Error(ErrorKind::OutOfRange, "no dimensions to sample");

  const auto all = detail::properties();
  std::vector<PropertyResult> results;
  for (std::size_t pi = 0; pi < all.size(); ++pi) {
    const auto& prop = all[pi];
    if (!only.empty() && std::find(only.begin(), only.end(), prop.name) == only.end()) continue;
    PropertyResult r;
    r.name = prop.name;
    for (std::size_t i = 0; i < config.samples; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                        static_cast<std::uint32_t>(pi), static_cast<std::uint32_t>(i)};
      detail::Sample s{Rng(seq), dims[i % dims.size()], config};
      const double slack = prop.check(s);
      ++r.checked;
      r.worst_slack = std::min(r.worst_slack, slack);
      if (!(slack >= -config.tolerance)) ++r.failed;
    }
    results.push_back(std::move(r));
  }
  return results;
}

inline bool all_passed(const std::vector<PropertyResult>& rs) {
  return !rs.empty() && std::all_of(rs.begin(), rs.end(), [](const PropertyResult& r) { return r.passed(); });
}

}  // namespace chanvar::verify
