#pragma once

// Entanglement fidelity, entropy exchange, coherent information and the
// trade-off bounds that tie them to the MGV total uncertainty.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chanvar/channels.hpp"
#include "chanvar/linalg.hpp"
#include "chanvar/states.hpp"
#include "chanvar/uncertainty.hpp"

namespace chanvar {

// Two sides of a bound. slack >= 0 means the bound holds; for equalities
// slack = -|lhs - rhs|.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = true;
};

inline BoundReport inequality_report(double lhs, double rhs) {
  const double slack = rhs - lhs;
  return {lhs, rhs, slack, slack >= -tol::bound};
}

inline BoundReport equality_report(double lhs, double rhs) {
  const double slack = 0.0 - std::abs(lhs - rhs);
  return {lhs, rhs, slack, slack >= -tol::bound};
}

// sum_i |tr rho K_i|^2
inline double entanglement_fidelity(const DensityMatrix& rho, const KrausChannel& phi) {
  require_same_dim(phi, rho.dim());
  double f = 0.0;
  for (const auto& k : phi.kraus()) f += std::norm(trace_product(rho.matrix(), k));
  return f;
}

// <psi| (I (x) Phi)(|psi><psi|) |psi> on an explicit purification.
inline double entanglement_fidelity_purified(const DensityMatrix& rho, const KrausChannel& phi) {
  require_same_dim(phi, rho.dim());
  const Purification pur = purify(rho);
  const KrausChannel extended = tensor_with_identity(phi, Side::Right, pur.ancilla_dim);
  double f = 0.0;
  for (const auto& k : extended.kraus()) f += std::norm(pur.state.expectation(k));
  return f;
}

// W_ij = tr(K_i rho K_j^dag); shares its nonzero spectrum with the joint
// output state of any purification.
inline ComplexMatrix exchange_matrix(const DensityMatrix& rho, const KrausChannel& phi) {
  require_same_dim(phi, rho.dim());
  const auto k = static_cast<Eigen::Index>(phi.size());
  ComplexMatrix w(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const ComplexMatrix left = phi.kraus()[static_cast<std::size_t>(i)] * rho.matrix();
    for (Eigen::Index j = 0; j < k; ++j) w(i, j) = trace_product(left, phi.kraus()[static_cast<std::size_t>(j)].adjoint());
  }
  return w;
}

inline double entropy_exchange(const DensityMatrix& rho, const KrausChannel& phi) {
  return von_neumann_entropy(exchange_matrix(rho, phi));
}

// S((I (x) Phi)(|psi><psi|)) built explicitly; the cross-check for the W path.
inline double entropy_exchange_purified(const DensityMatrix& rho, const KrausChannel& phi) {
  require_same_dim(phi, rho.dim());
  const Purification pur = purify(rho);
  const KrausChannel extended = tensor_with_identity(phi, Side::Right, pur.ancilla_dim);
  return von_neumann_entropy(extended.apply(pur.state.projector()));
}

inline double coherent_information(const DensityMatrix& rho, const KrausChannel& phi) {
  return von_neumann_entropy(phi.apply(rho.matrix())) - entropy_exchange(rho, phi);
}

// V + F_e = (1 + tr rho^{a+b} Phi(rho^{1-a-b}))/2 <= (1 + lambda_max(Phi(rho^{1-a-b})) tr rho^{a+b})/2
inline BoundReport fidelity_tradeoff(const ChannelTerms& t) {
  const double lhs = uncertainty_from_terms(t).total_v + t.fidelity;
  if (std::abs(lhs - 0.5 * (1.0 + t.t_sum)) > 1e-10) {
    throw std::logic_error("V + F_e drifted from (1 + tr rho^{a+b} Phi(rho^{1-a-b}))/2");
  }
  const double rhs = 0.5 * (1.0 + max_eigenvalue(t.phi_of_complement) * t.trace_rho_sum);
  return inequality_report(lhs, rhs);
}

inline BoundReport fidelity_tradeoff(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return fidelity_tradeoff(channel_terms(rho, phi, ab));
}

// V(rho, Phi) + F_e(rho, Phi) = 1 for unital Phi at alpha + beta = 1.
inline BoundReport unital_conservation(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  if (!is_unital(phi)) throw Error(ErrorKind::NotUnital, "conservation law needs a unital channel");
  if (std::abs(ab.alpha() + ab.beta() - 1.0) > 1e-12) {
    throw Error(ErrorKind::OutOfRange, "conservation law needs alpha + beta = 1");
  }
  const ChannelTerms t = channel_terms(rho, phi, ab);
  return equality_report(uncertainty_from_terms(t).total_v + t.fidelity, 1.0);
}

// 2V + F_e = 1 on pure states.
inline BoundReport pure_state_tradeoff(const PureState& psi, const KrausChannel& phi, const AlphaBeta& ab) {
  const ChannelTerms t = channel_terms(psi.density(), phi, ab);
  return equality_report(2.0 * uncertainty_from_terms(t).total_v + t.fidelity, 1.0);
}

namespace detail {
// 2V + 1 - tr rho^{a+b} Phi(rho^{1-a-b})
inline double uncertainty_excess(const ChannelTerms& t) {
  return 2.0 * uncertainty_from_terms(t).total_v + 1.0 - t.t_sum;
}
}  // namespace detail

// S_e <= 1 + (2V + 1 - tr rho^{a+b} Phi(rho^{1-a-b})) log2 d
inline BoundReport entropy_exchange_bound(const ChannelTerms& t, double s_e, Eigen::Index d) {
  return inequality_report(s_e, 1.0 + detail::uncertainty_excess(t) * std::log2(static_cast<double>(d)));
}

inline BoundReport entropy_exchange_bound(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return entropy_exchange_bound(channel_terms(rho, phi, ab), entropy_exchange(rho, phi), phi.dim());
}

// S(rho) - 2 <= 2(2V + 1 - tr rho^{a+b} Phi(rho^{1-a-b})) log2 d + I_c
inline BoundReport coherent_info_bound(const ChannelTerms& t, double s_rho, double i_c, Eigen::Index d) {
  const double rhs = 2.0 * detail::uncertainty_excess(t) * std::log2(static_cast<double>(d)) + i_c;
  return inequality_report(s_rho - 2.0, rhs);
}

inline BoundReport coherent_info_bound(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return coherent_info_bound(channel_terms(rho, phi, ab), von_neumann_entropy(rho.matrix()),
                             coherent_information(rho, phi), phi.dim());
}

// S_e <= H(F_e) + (1 - F_e) log2(d^2 - 1)
inline BoundReport quantum_fano_check(const DensityMatrix& rho, const KrausChannel& phi) {
  const double fe = std::clamp(entanglement_fidelity(rho, phi), 0.0, 1.0);
  const double d = static_cast<double>(phi.dim());
  const double tail = d > 1.0 ? (1.0 - fe) * std::log2(d * d - 1.0) : 0.0;
  return inequality_report(entropy_exchange(rho, phi), binary_entropy(fe) + tail);
}

}  // namespace chanvar
