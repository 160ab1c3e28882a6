#pragma once

// Total (MGV), quantum (MGWYD skew information) and classical uncertainty of
// an operator or a Kraus channel in a state, parameterized by (alpha, beta).

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "chanvar/channels.hpp"
#include "chanvar/linalg.hpp"
#include "chanvar/states.hpp"

namespace chanvar {

// alpha, beta >= 0 with alpha + beta <= 1.
class AlphaBeta {
 public:
  AlphaBeta(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(std::isfinite(alpha) && std::isfinite(beta)) || alpha < 0.0 || beta < 0.0 || alpha + beta > 1.0 + 1e-12) {
      throw Error(ErrorKind::OutOfRange, "(alpha, beta) = (" + std::to_string(alpha) + ", " + std::to_string(beta) +
                                             ") violates alpha, beta >= 0, alpha + beta <= 1");
    }
  }

  static bool admissible(double alpha, double beta) {
    return std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0.0 && beta >= 0.0 && alpha + beta <= 1.0 + 1e-12;
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double sum() const noexcept { return std::min(alpha_ + beta_, 1.0); }
  double complement() const noexcept { return 1.0 - sum(); }

 private:
  double alpha_;
  double beta_;
};

struct UncertaintyTriple {
  double total_v = 0.0;
  double quantum_q = 0.0;
  double classical_c = 0.0;

  double decomposition_residual() const { return total_v - quantum_q - classical_c; }
};

namespace detail {

inline void require_operator_dim(const DensityMatrix& rho, const ComplexMatrix& k) {
  if (k.rows() != rho.dim() || k.cols() != rho.dim()) {
    throw Error(ErrorKind::DimMismatch, "operator is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                                            ", state dimension is " + std::to_string(rho.dim()));
  }
}

// tr(A K B K^dag)
inline double sandwich_trace(const ComplexMatrix& a, const ComplexMatrix& k, const ComplexMatrix& b) {
  return trace_product(a, k * b * k.adjoint()).real();
}

// The six spectral powers every functional needs, from one eigensolve.
struct StatePowers {
  ComplexMatrix rho, alpha, one_minus_alpha, beta, one_minus_beta, sum, one_minus_sum;

  StatePowers(const DensityMatrix& state, const AlphaBeta& ab) : StatePowers(state, state.spectrum(), ab) {}

  StatePowers(const DensityMatrix& state, const PsdSpectrum& spec, const AlphaBeta& ab) {
    rho = state.matrix();
    alpha = spec.power(ab.alpha());
    one_minus_alpha = spec.power(1.0 - ab.alpha());
    beta = spec.power(ab.beta());
    one_minus_beta = spec.power(1.0 - ab.beta());
    sum = spec.power(ab.sum());
    one_minus_sum = spec.power(ab.complement());
  }
};

struct OperatorTerms {
  double second_moment;  // tr rho K^dag K
  double t_alpha;        // tr rho^a K rho^{1-a} K^dag
  double t_beta;
  double t_sum;
  double mean_sq;        // |tr rho K|^2
};

inline OperatorTerms operator_terms(const StatePowers& p, const ComplexMatrix& k) {
  return {trace_product(p.rho, k.adjoint() * k).real(), sandwich_trace(p.alpha, k, p.one_minus_alpha),
          sandwich_trace(p.beta, k, p.one_minus_beta), sandwich_trace(p.sum, k, p.one_minus_sum),
          std::norm(trace_product(p.rho, k))};
}

}  // namespace detail

inline double mgv_operator(const DensityMatrix& rho, const ComplexMatrix& k, const AlphaBeta& ab) {
  detail::require_operator_dim(rho, k);
  const auto t = detail::operator_terms(detail::StatePowers(rho, ab), k);
  return 0.5 * (t.second_moment + t.t_sum) - t.mean_sq;
}

inline double mgwyd_operator(const DensityMatrix& rho, const ComplexMatrix& k, const AlphaBeta& ab) {
  detail::require_operator_dim(rho, k);
  const auto t = detail::operator_terms(detail::StatePowers(rho, ab), k);
  return 0.5 * (t.second_moment - t.t_alpha - t.t_beta + t.t_sum);
}

inline double classical_operator(const DensityMatrix& rho, const ComplexMatrix& k, const AlphaBeta& ab) {
  detail::require_operator_dim(rho, k);
  const auto t = detail::operator_terms(detail::StatePowers(rho, ab), k);
  return 0.5 * (t.t_alpha + t.t_beta) - t.mean_sq;
}

// sum_i V(rho, K_i) over an arbitrary operator list. Linear in the list, so it
// also evaluates non-trace-preserving combinations such as
// Phi^A (x) I + I (x) Phi^B.
inline UncertaintyTriple operator_sum_uncertainty(const DensityMatrix& rho, std::span<const ComplexMatrix> ops,
                                                  const AlphaBeta& ab) {
  const detail::StatePowers powers(rho, ab);
  UncertaintyTriple out;
  for (const auto& k : ops) {
    detail::require_operator_dim(rho, k);
    const auto t = detail::operator_terms(powers, k);
    out.total_v += 0.5 * (t.second_moment + t.t_sum) - t.mean_sq;
    out.quantum_q += 0.5 * (t.second_moment - t.t_alpha - t.t_beta + t.t_sum);
    out.classical_c += 0.5 * (t.t_alpha + t.t_beta) - t.mean_sq;
  }
  return out;
}

// Channel-level trace terms shared by the uncertainty functionals and the
// information-theoretic bounds.
struct ChannelTerms {
  double t_sum = 0.0;        // tr rho^{a+b} Phi(rho^{1-a-b})
  double t_alpha = 0.0;      // tr rho^a Phi(rho^{1-a})
  double t_beta = 0.0;       // tr rho^b Phi(rho^{1-b})
  double fidelity = 0.0;     // sum_i |tr rho K_i|^2
  double trace_rho_sum = 0.0;  // tr rho^{a+b}
  ComplexMatrix phi_of_complement;  // Phi(rho^{1-a-b})
};

// `spec` must be rho.spectrum(); passing it in lets (alpha, beta) sweeps reuse
// one eigendecomposition.
inline ChannelTerms channel_terms(const DensityMatrix& rho, const PsdSpectrum& spec, const KrausChannel& phi,
                                  const AlphaBeta& ab) {
  require_same_dim(phi, rho.dim());
  const detail::StatePowers p(rho, spec, ab);
  ChannelTerms t;
  t.phi_of_complement = phi.apply(p.one_minus_sum);
  t.t_sum = trace_product(p.sum, t.phi_of_complement).real();
  t.t_alpha = trace_product(p.alpha, phi.apply(p.one_minus_alpha)).real();
  t.t_beta = trace_product(p.beta, phi.apply(p.one_minus_beta)).real();
  t.trace_rho_sum = p.sum.trace().real();
  for (const auto& k : phi.kraus()) t.fidelity += std::norm(trace_product(p.rho, k));
  return t;
}

inline ChannelTerms channel_terms(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return channel_terms(rho, rho.spectrum(), phi, ab);
}

inline UncertaintyTriple uncertainty_from_terms(const ChannelTerms& t) {
  UncertaintyTriple out;
  out.total_v = 0.5 * (1.0 + t.t_sum) - t.fidelity;
  out.quantum_q = 0.5 * (1.0 - t.t_alpha - t.t_beta + t.t_sum);
  out.classical_c = 0.5 * (t.t_alpha + t.t_beta) - t.fidelity;
  return out;
}

inline UncertaintyTriple channel_uncertainty(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return uncertainty_from_terms(channel_terms(rho, phi, ab));
}

inline double mgv_channel(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return channel_uncertainty(rho, phi, ab).total_v;
}

inline double mgwyd_channel(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return channel_uncertainty(rho, phi, ab).quantum_q;
}

inline double classical_channel(const DensityMatrix& rho, const KrausChannel& phi, const AlphaBeta& ab) {
  return channel_uncertainty(rho, phi, ab).classical_c;
}

// V = Q = (1 - sum_i |<psi|K_i|psi>|^2) / 2 on pure states, for every (alpha, beta).
inline double pure_state_uncertainty(const PureState& psi, const KrausChannel& phi) {
  require_same_dim(phi, psi.dim());
  double sum = 0.0;
  for (const auto& k : phi.kraus()) sum += std::norm(psi.expectation(k));
  return 0.5 * (1.0 - sum);
}

// Morozova-Chentsov function of the metric for which 2Q is the
// metric-adjusted skew information. Homogeneous of degree -1; on the
// diagonal it takes its limit 2 alpha beta / x.
inline double morozova_chentsov(double x, double y, const AlphaBeta& ab) {
  if (!(x > 0.0 && y > 0.0)) throw Error(ErrorKind::OutOfRange, "Morozova-Chentsov arguments must be positive");
  const double a = ab.alpha();
  const double b = ab.beta();
  if (std::abs(x - y) < 1e-10) return 2.0 * a * b / (0.5 * (x + y));
  const auto bracket = [x, y](double k) { return (std::pow(x, k) - std::pow(y, k)) * (std::pow(x, 1.0 - k) - std::pow(y, 1.0 - k)); };
  return (bracket(a) + bracket(b) - bracket(a + b)) / ((x - y) * (x - y));
}

}  // namespace chanvar
