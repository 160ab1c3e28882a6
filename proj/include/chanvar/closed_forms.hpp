#pragma once

// Analytic expressions for the uncertainty functionals and bound curves on
// the qubit channel zoo, the matrix-unit channel and the measurement channel.
// Each one is an oracle for the generic spectral path and vice versa.
//
// Where a published expression disagrees with direct evaluation, the
// function here carries the corrected form and the expression exactly as
// published lives in closed_forms::as_printed for comparison.

#include <cmath>
#include <optional>
#include <string>

#include "chanvar/linalg.hpp"
#include "chanvar/states.hpp"
#include "chanvar/uncertainty.hpp"

namespace chanvar::closed_forms {

enum class ChannelKind {
  AmplitudeDamping,
  PhaseDamping,
  Depolarizing,
  HadamardDecoherence,
  BasisChannel,
  ProjectiveMeasurement,
};

struct ClosedFormParams {
  ChannelKind channel_kind = ChannelKind::AmplitudeDamping;
  double channel_param = 0.0;  // p, or theta for HadamardDecoherence
  std::optional<BlochQubit> bloch;
  std::optional<double> family_param;
  AlphaBeta ab{0.5, 0.5};
};

struct VQ {
  double v = 0.0;
  double q = 0.0;
};

namespace detail {

// Spectral data of the qubit (1 + r.sigma)/2: lambda_{1,2} = (1 -+ |r|)/2 and
// the unit direction n (zero when r = 0; every term that uses n then carries a
// vanishing (l1^k - l2^k) factor).
struct QubitSpectrum {
  double r, r3, n1, n2, n3, l1, l2;

  explicit QubitSpectrum(const BlochQubit& b) : r(b.norm()), r3(b.r3()) {
    const double inv = r > 1e-14 ? 1.0 / r : 0.0;
    n1 = b.r1() * inv;
    n2 = b.r2() * inv;
    n3 = b.r3() * inv;
    l1 = (1.0 - r) / 2.0;
    l2 = (1.0 + r) / 2.0;
  }

  double plus(double k) const { return support_pow(l1, k) + support_pow(l2, k); }
  double minus(double k) const { return support_pow(l1, k) - support_pow(l2, k); }
  double transverse() const { return n1 * n1 + n2 * n2; }
};

inline void require_param(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::OutOfRange, what);
}

// a * log2(b) with the 0 log 0 = 0 convention.
inline double mul_log2(double a, double b) { return (a == 0.0 || b <= 0.0) ? 0.0 : a * std::log2(b); }

}  // namespace detail

inline VQ amplitude_damping_vq(const BlochQubit& b, double p, const AlphaBeta& ab) {
  detail::require_param(p >= 0.0 && p <= 1.0, "amplitude damping p outside [0,1]");
  const detail::QubitSpectrum q(b);
  const double s = ab.sum();
  const double c = ab.complement();
  const double sq = std::sqrt(1.0 - p);
  const double r3 = q.r3;
  VQ out;
  out.v = 0.25 * q.plus(s) * q.plus(c) - p * q.r * q.r / 4.0 + (p + sq - 1.0) / 2.0 * r3 * r3 -
          (2.0 * p * r3 - p + 2.0 * sq) / 4.0 +
          p * q.n3 / 4.0 *
              (support_pow(q.l1, c) * support_pow(q.l2, s) - support_pow(q.l2, c) * support_pow(q.l1, s) + q.l2 - q.l1) +
          (2.0 * (1.0 - p) * q.n3 * q.n3 + 2.0 * sq * (1.0 - q.n3 * q.n3)) / 8.0 * q.minus(s) * q.minus(c);
  out.q = 0.5 *
          (((1.0 - sq) * q.transverse() + p * q.n3 * q.n3) / 2.0 * q.plus(c) + p * q.n3 / 2.0 * q.minus(c)) *
          q.minus(ab.alpha()) * q.minus(ab.beta());
  return out;
}

inline VQ phase_damping_vq(const BlochQubit& b, double p, const AlphaBeta& ab) {
  detail::require_param(p >= 0.0 && p <= 1.0, "phase damping p outside [0,1]");
  const detail::QubitSpectrum q(b);
  const double s = ab.sum();
  const double c = ab.complement();
  const double sq = std::sqrt(1.0 - p);
  VQ out;
  out.v = 0.25 * q.plus(s) * q.plus(c) - (sq + (1.0 - sq) * q.r3 * q.r3) / 2.0 +
          ((1.0 - sq) * q.n3 * q.n3 + sq) / 4.0 * q.minus(s) * q.minus(c);
  out.q = 0.5 * (1.0 - sq) * q.transverse() / 2.0 * q.minus(ab.alpha()) * q.minus(ab.beta()) * q.plus(c);
  return out;
}

// p in [0, 1/3], channel (1 - 3p) rho + p sum_j sigma_j rho sigma_j.
inline VQ depolarizing_vq(const BlochQubit& b, double p, const AlphaBeta& ab) {
  detail::require_param(p >= 0.0 && p <= 1.0 / 3.0, "depolarizing p outside [0,1/3]");
  const detail::QubitSpectrum q(b);
  const double s = ab.sum();
  const double c = ab.complement();
  VQ out;
  out.v = 0.25 * (2.0 + q.plus(s) * q.plus(c) + (1.0 - 4.0 * p) * q.minus(s) * q.minus(c)) -
          (1.0 - 3.0 * p + p * q.r * q.r);
  out.q = p * q.minus(ab.alpha()) * q.minus(ab.beta()) * q.plus(c);
  return out;
}

inline VQ hadamard_decoherence_vq(const BlochQubit& b, double theta, const AlphaBeta& ab) {
  detail::require_param(theta >= -1.0 && theta <= 1.0, "decoherence theta outside [-1,1]");
  const detail::QubitSpectrum q(b);
  const double a = ab.alpha();
  const double be = ab.beta();
  const double s = ab.sum();
  const double c = ab.complement();
  const double r3sq = q.r3 * q.r3;
  const double n3sq = q.n3 * q.n3;
  VQ out;
  out.v = 0.25 * q.plus(s) * q.plus(c) - (r3sq + theta - r3sq * theta) / 2.0 +
          0.25 * q.minus(s) * q.minus(c) * (theta + n3sq - theta * n3sq);
  const double g = (n3sq + theta * q.transverse()) / 4.0;
  out.q = (q.plus(s) * q.plus(c) + 2.0) / 4.0 - (q.plus(a) * q.plus(1.0 - a) + q.plus(be) * q.plus(1.0 - be)) / 4.0 -
          g * (q.minus(a) * q.minus(1.0 - a) + q.minus(be) * q.minus(1.0 - be)) + g * q.minus(s) * q.minus(c);
  return out;
}

inline VQ qubit_channel_vq(const ClosedFormParams& params) {
  if (!params.bloch) throw Error(ErrorKind::MissingBloch, "qubit closed forms need a Bloch vector");
  const BlochQubit& b = *params.bloch;
  switch (params.channel_kind) {
    case ChannelKind::AmplitudeDamping: return amplitude_damping_vq(b, params.channel_param, params.ab);
    case ChannelKind::PhaseDamping: return phase_damping_vq(b, params.channel_param, params.ab);
    case ChannelKind::Depolarizing: return depolarizing_vq(b, params.channel_param, params.ab);
    case ChannelKind::HadamardDecoherence: return hadamard_decoherence_vq(b, params.channel_param, params.ab);
    default: break;
  }
  throw Error(ErrorKind::OutOfRange, "qubit closed forms cover the four single-qubit channels only");
}

// Channel rho -> (tr rho) I / d: everything reduces to traces of powers.
inline VQ basis_channel_vq(const DensityMatrix& rho, const AlphaBeta& ab) {
  const PsdSpectrum spec = rho.spectrum();
  const double d = static_cast<double>(rho.dim());
  const double s = ab.sum();
  const double c = ab.complement();
  const double a = ab.alpha();
  const double b = ab.beta();
  const double cross = spec.trace_power(s) * spec.trace_power(c);
  VQ out;
  out.v = (d + cross - 2.0 * rho.purity()) / (2.0 * d);
  out.q = (d + cross - spec.trace_power(1.0 - a) * spec.trace_power(a) - spec.trace_power(1.0 - b) * spec.trace_power(b)) /
          (2.0 * d);
  return out;
}

inline VQ werner_vq(double p, const AlphaBeta& ab) {
  detail::require_param(p >= 0.0 && p <= 1.0, "Werner p outside [0,1]");
  const double a = ab.alpha();
  const double b = ab.beta();
  const double s = ab.sum();
  // 3^{1-k} p^k (1-p)^{1-k}
  const auto mix = [p](double k) { return std::pow(3.0, 1.0 - k) * support_pow(p, k) * support_pow(1.0 - p, 1.0 - k); };
  VQ out;
  out.v = (3.0 + 6.0 * p - 8.0 * p * p / 3.0 + mix(1.0 - s) + mix(s)) / 8.0;
  out.q = (3.0 - 2.0 * p - mix(a) - mix(1.0 - a) - mix(b) - mix(1.0 - b) + mix(s) + mix(1.0 - s)) / 8.0;
  return out;
}

inline VQ isotropic_vq(double f, const AlphaBeta& ab) {
  detail::require_param(f >= 0.0 && f <= 1.0, "isotropic F outside [0,1]");
  const double a = ab.alpha();
  const double b = ab.beta();
  const double s = ab.sum();
  // 3^k F^k (1-F)^{1-k}
  const auto mix = [f](double k) { return std::pow(3.0, k) * support_pow(f, k) * support_pow(1.0 - f, 1.0 - k); };
  VQ out;
  out.v = (19.0 - 2.0 * f - 8.0 * f * f + 3.0 * mix(s) + 3.0 * mix(1.0 - s)) / 24.0;
  out.q = (1.0 + 2.0 * f - mix(a) - mix(1.0 - a) - mix(b) - mix(1.0 - b) + mix(s) + mix(1.0 - s)) / 8.0;
  return out;
}

// Projective measurement onto the columns of `basis`; needs only the diagonal
// elements <i|rho^k|i>.
inline VQ projective_vq(const DensityMatrix& rho, const ComplexMatrix& basis, const AlphaBeta& ab) {
  if (basis.rows() != rho.dim() || !is_unitary(basis)) throw Error(ErrorKind::NotUnitary, "measurement basis is not unitary");
  const PsdSpectrum spec = rho.spectrum();
  const auto diag = [&](double k) -> RealVector {
    const ComplexMatrix rotated = basis.adjoint() * spec.power(k) * basis;
    return rotated.diagonal().real();
  };
  const auto paired = [&](double k) { return diag(k).dot(diag(1.0 - k)); };
  const RealVector populations = (basis.adjoint() * rho.matrix() * basis).diagonal().real();
  const double s = ab.sum();
  VQ out;
  out.v = 0.5 * (1.0 + paired(s)) - populations.squaredNorm();
  out.q = 0.5 * (1.0 + paired(s) - paired(ab.beta()) - paired(ab.alpha()));
  return out;
}

// Both sides of the entropy-exchange bound and the coherent-information
// bound for a two-qubit family under the computational-basis measurement.
struct BoundCurves {
  double exchange_bound = 0.0;          // 1 + (2V + 1 - tr rho^{a+b} Pi(rho^{1-a-b})) log 4
  double entropy_exchange = 0.0;  // S_e(rho, Pi)
  double coherent_bound = 0.0;          // 2(2V + 1 - tr rho^{a+b} Pi(rho^{1-a-b})) log 4 + I_c
  double entropy_minus_two = 0.0; // S(rho) - 2
};

// S_e under the measurement is the Shannon entropy of the diagonal, and the
// measurement leaves that diagonal invariant, so I_c = 0.
inline BoundCurves werner_bound_curves(double p) {
  detail::require_param(p >= 0.0 && p <= 1.0, "Werner p outside [0,1]");
  using detail::mul_log2;
  BoundCurves out;
  out.exchange_bound = 3.0 + 8.0 * p / 3.0 - 16.0 * p * p / 9.0;
  out.entropy_exchange = -mul_log2(2.0 * p / 3.0, p / 3.0) - mul_log2((3.0 - 2.0 * p) / 3.0, (3.0 - 2.0 * p) / 6.0);
  out.coherent_bound = 4.0 + 16.0 * p / 3.0 - 32.0 * p * p / 9.0;
  out.entropy_minus_two = mul_log2(p - 1.0, 1.0 - p) - mul_log2(p, p / 3.0) - 2.0;
  return out;
}

inline BoundCurves isotropic_bound_curves(double f) {
  detail::require_param(f >= 0.0 && f <= 1.0, "isotropic F outside [0,1]");
  using detail::mul_log2;
  BoundCurves out;
  out.exchange_bound = 35.0 / 9.0 + 8.0 * f / 9.0 - 16.0 * f * f / 9.0;
  out.entropy_exchange = -mul_log2((1.0 + 2.0 * f) / 3.0, (1.0 + 2.0 * f) / 6.0) - mul_log2(2.0 * (1.0 - f) / 3.0, (1.0 - f) / 3.0);
  out.coherent_bound = 52.0 / 9.0 + 16.0 / 9.0 * f * (1.0 - 2.0 * f);
  out.entropy_minus_two = mul_log2(f - 1.0, (1.0 - f) / 3.0) - mul_log2(f, f) - 2.0;
  return out;
}

// Both sides of the V + F_e trade-off for the two families under the
// computational-basis measurement.
struct TradeoffSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline TradeoffSides werner_tradeoff(double p, const AlphaBeta& ab) {
  detail::require_param(p >= 0.0 && p <= 1.0, "Werner p outside [0,1]");
  const double s = ab.sum();
  const double a = std::pow(3.0, s - 1.0) * support_pow(p, 1.0 - s) * support_pow(1.0 - p, s);
  const double b = std::pow(3.0, -s) * support_pow(p, s) * support_pow(1.0 - p, 1.0 - s);
  TradeoffSides out;
  out.lhs = 0.75 + p / 6.0 + 0.25 * (a + b);
  if (p <= 0.75) {
    out.rhs = 0.75 + 0.25 * (std::pow(3.0, 1.0 - s) * support_pow(p, s) * support_pow(1.0 - p, 1.0 - s) + a);
  } else {
    out.rhs = p / 2.0 + 0.5 * (1.0 + a);
  }
  return out;
}

inline TradeoffSides isotropic_tradeoff(double f, const AlphaBeta& ab) {
  detail::require_param(f >= 0.0 && f <= 1.0, "isotropic F outside [0,1]");
  const double s = ab.sum();
  const double a = std::pow(3.0, -s) * support_pow(f, 1.0 - s) * support_pow(1.0 - f, s);
  const double b = std::pow(3.0, s - 1.0) * support_pow(f, s) * support_pow(1.0 - f, 1.0 - s);
  TradeoffSides out;
  out.lhs = 11.0 / 12.0 - f / 6.0 + 0.25 * (a + b);
  if (f < 0.25) {
    out.rhs = 1.0 + 0.5 * (b - f);
  } else {
    out.rhs = 0.75 + 0.25 * (std::pow(3.0, 1.0 - s) * support_pow(f, 1.0 - s) * support_pow(1.0 - f, s) + b);
  }
  return out;
}

// Expressions exactly as published. Kept to document where they part ways
// with direct evaluation; nothing else in the library calls them.
namespace as_printed {

// Differs from amplitude_damping_vq(...).v in the coefficient of
// (l1^{a+b} - l2^{a+b})(l1^{1-a-b} - l2^{1-a-b}).
inline double amplitude_damping_v(const BlochQubit& b, double p, const AlphaBeta& ab) {
  const detail::QubitSpectrum q(b);
  if (q.r < 1e-14) throw Error(ErrorKind::ZeroBloch, "printed form divides by |r|");
  const double s = ab.sum();
  const double c = ab.complement();
  const double sq = std::sqrt(1.0 - p);
  const double r = q.r;
  const double r3 = q.r3;
  return 0.25 * q.plus(s) * q.plus(c) - p * r * r / 4.0 + (p + sq - 1.0) / 2.0 * r3 * r3 -
         (2.0 * p * r3 - p + 2.0 * sq) / 4.0 +
         p * r3 / (4.0 * r) *
             (support_pow(q.l1, c) * support_pow(q.l2, s) - support_pow(q.l2, c) * support_pow(q.l1, s) + q.l2 - q.l1) +
         (2.0 - p - p * r3 * r3 + 2.0 * sq * (r * r - r3 * r3)) / (8.0 * r * r) * q.minus(s) * q.minus(c);
}

// Differs from hadamard_decoherence_vq(...).v by the 1/r^2 prefactor (1/(4r^2)
// is what direct evaluation gives).
inline double hadamard_decoherence_v(const BlochQubit& b, double theta, const AlphaBeta& ab) {
  const detail::QubitSpectrum q(b);
  if (q.r < 1e-14) throw Error(ErrorKind::ZeroBloch, "printed form divides by |r|");
  const double s = ab.sum();
  const double c = ab.complement();
  const double r3sq = q.r3 * q.r3;
  return 0.25 * q.plus(s) * q.plus(c) - (r3sq + theta - r3sq * theta) / 2.0 +
         q.minus(s) * q.minus(c) * (theta * q.r * q.r + r3sq - theta * r3sq) / (q.r * q.r);
}

// The published entropy-exchange curves equal S(rho) rather than the
// diagonal Shannon entropy, and the Werner exchange bound has -16/3 p^2 where
// -16/9 p^2 is consistent with the published coherent-information and isotropic curves.
inline BoundCurves werner_bound_curves(double p) {
  detail::require_param(p >= 0.0 && p <= 1.0, "Werner p outside [0,1]");
  using detail::mul_log2;
  BoundCurves out;
  out.exchange_bound = 3.0 + 8.0 * p / 3.0 - 16.0 * p * p / 3.0;
  out.entropy_exchange = mul_log2(p - 1.0, 1.0 - p) - mul_log2(p, p / 3.0);
  out.coherent_bound = 4.0 + 16.0 * p / 3.0 - 32.0 * p * p / 9.0 + mul_log2(1.0 - p, 1.0 - p) + mul_log2(p / 3.0, p / 3.0) -
                 mul_log2((3.0 - 2.0 * p) / 3.0, (3.0 - 2.0 * p) / 6.0);
  out.entropy_minus_two = mul_log2(p - 1.0, 1.0 - p) - mul_log2(p, p / 3.0) - 2.0;
  return out;
}

inline BoundCurves isotropic_bound_curves(double f) {
  detail::require_param(f >= 0.0 && f <= 1.0, "isotropic F outside [0,1]");
  using detail::mul_log2;
  BoundCurves out;
  out.exchange_bound = 35.0 / 9.0 + 8.0 * f / 9.0 - 16.0 * f * f / 9.0;
  out.entropy_exchange = mul_log2(f - 1.0, (1.0 - f) / 3.0) - mul_log2(f, f);
  out.coherent_bound = 52.0 / 9.0 + 16.0 / 9.0 * f * (1.0 - 2.0 * f) + mul_log2((1.0 - f) / 3.0, (1.0 - f) / 3.0) +
                 mul_log2(f, f) - mul_log2((1.0 + 2.0 * f) / 3.0, (1.0 + 2.0 * f) / 6.0);
  out.entropy_minus_two = mul_log2(f - 1.0, (1.0 - f) / 3.0) - mul_log2(f, f) - 2.0;
  return out;
}

}  // namespace as_printed

}  // namespace chanvar::closed_forms
