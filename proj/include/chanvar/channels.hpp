#pragma once

// Kraus-form quantum channels on a single d-dimensional system.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chanvar/linalg.hpp"
#include "chanvar/states.hpp"

namespace chanvar {

// ||sum_i K_i^dag K_i - 1||_F
inline double cptp_defect(std::span<const ComplexMatrix> ops) {
  const Eigen::Index d = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops) sum.noalias() += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(d, d)).norm();
}

// ||sum_i K_i K_i^dag - 1||_F
inline double unitality_defect(std::span<const ComplexMatrix> ops) {
  const Eigen::Index d = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops) sum.noalias() += k * k.adjoint();
  return (sum - ComplexMatrix::Identity(d, d)).norm();
}

// CPTP map rho -> sum_i K_i rho K_i^dag. Zero Kraus operators are kept.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw Error(ErrorKind::SizeMismatch, "a channel needs at least one Kraus operator");
    require_square(ops_.front(), "Kraus operator");
    const Eigen::Index d = ops_.front().rows();
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (ops_[i].rows() != d || ops_[i].cols() != d) {
        throw Error(ErrorKind::DimMismatch, "Kraus operator " + std::to_string(i) + " is not " + std::to_string(d) +
                                                "x" + std::to_string(d));
      }
      require_finite(ops_[i], "Kraus operator");
    }
    const double defect = cptp_defect(ops_);
    if (defect > tol::cptp) {
      throw Error(ErrorKind::NotCPTP, "||sum K^dag K - 1||_F = " + std::to_string(defect));
    }
  }

  const std::vector<ComplexMatrix>& kraus() const noexcept { return ops_; }
  Eigen::Index dim() const noexcept { return ops_.front().rows(); }
  std::size_t size() const noexcept { return ops_.size(); }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    if (x.rows() != dim() || x.cols() != dim()) {
      throw Error(ErrorKind::DimMismatch, "channel of dimension " + std::to_string(dim()) + " applied to " +
                                              std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
    for (const auto& k : ops_) out.noalias() += k * x * k.adjoint();
    return out;
  }

 private:
  std::vector<ComplexMatrix> ops_;
};

inline ComplexMatrix apply(const KrausChannel& phi, const ComplexMatrix& x) { return phi.apply(x); }
inline DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho) {
  ComplexMatrix out = phi.apply(rho.matrix());
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(std::move(out));
}

inline void require_same_dim(const KrausChannel& phi, Eigen::Index state_dim) {
  if (phi.dim() != state_dim) {
    throw Error(ErrorKind::DimMismatch, "channel dimension " + std::to_string(phi.dim()) +
                                            " does not match state dimension " + std::to_string(state_dim));
  }
}

inline KrausChannel identity_channel(Eigen::Index d) {
  if (d < 1) throw Error(ErrorKind::OutOfRange, "dimension must be positive");
  return KrausChannel({ComplexMatrix::Identity(d, d)});
}

inline KrausChannel amplitude_damping(double p) {
  require_unit_interval(p, "amplitude damping p");
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - p);
  k2(0, 1) = std::sqrt(p);
  return KrausChannel({std::move(k1), std::move(k2)});
}

inline KrausChannel phase_damping(double p) {
  require_unit_interval(p, "phase damping p");
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(1.0 - p);
  k2(1, 1) = std::sqrt(p);
  return KrausChannel({std::move(k1), std::move(k2)});
}

// (1 - 3p) rho + p sum_j sigma_j rho sigma_j, p in [0, 1/3].
inline KrausChannel depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0 / 3.0)) {
    throw Error(ErrorKind::OutOfRange, "depolarizing p = " + std::to_string(p) + " outside [0,1/3]");
  }
  const double w = std::sqrt(p);
  return KrausChannel({std::sqrt(1.0 - 3.0 * p) * pauli::identity(), w * pauli::x(), w * pauli::y(), w * pauli::z()});
}

// rho -> M o rho with M = [[1, theta], [theta, 1]], realized by
// {sqrt((1+theta)/2) 1, sqrt((1-theta)/2) sigma_z}.
inline KrausChannel hadamard_decoherence(double theta) {
  if (!(theta >= -1.0 && theta <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "decoherence theta = " + std::to_string(theta) + " outside [-1,1]");
  }
  return KrausChannel({std::sqrt((1.0 + theta) / 2.0) * pauli::identity(),
                       std::sqrt((1.0 - theta) / 2.0) * pauli::z()});
}

// The d^2 matrix units |l><m| / sqrt(d); maps every rho to (tr rho) I / d.
inline KrausChannel basis_channel(Eigen::Index d) {
  if (d < 2) throw Error(ErrorKind::OutOfRange, "basis channel needs d >= 2");
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(d * d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index m = 0; m < d; ++m) {
      ComplexMatrix x = ComplexMatrix::Zero(d, d);
      x(l, m) = scale;
      ops.push_back(std::move(x));
    }
  return KrausChannel(std::move(ops));
}

// Projective measurement onto the columns of a unitary.
inline KrausChannel von_neumann_measurement(const ComplexMatrix& basis) {
  require_square(basis, "measurement basis");
  if (!is_unitary(basis)) throw Error(ErrorKind::NotUnitary, "measurement basis is not unitary");
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) ops.push_back(basis.col(i) * basis.col(i).adjoint());
  return KrausChannel(std::move(ops));
}

inline KrausChannel computational_measurement(Eigen::Index d) {
  return von_neumann_measurement(ComplexMatrix::Identity(d, d));
}

// E_i = sum_j u_ij F_j. The Kraus list is zero-padded up to u's size.
inline KrausChannel mix_kraus(const KrausChannel& phi, const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw Error(ErrorKind::SizeMismatch, "mixing matrix must be square");
  const auto k = static_cast<Eigen::Index>(phi.size());
  if (u.rows() < k) {
    throw Error(ErrorKind::SizeMismatch, "mixing matrix of size " + std::to_string(u.rows()) + " is smaller than " +
                                             std::to_string(k) + " Kraus operators");
  }
  if (!is_unitary(u)) throw Error(ErrorKind::NotUnitary, "mixing matrix is not unitary");
  std::vector<ComplexMatrix> mixed;
  mixed.reserve(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(phi.dim(), phi.dim());
    for (Eigen::Index j = 0; j < k; ++j) e += u(i, j) * phi.kraus()[static_cast<std::size_t>(j)];
    mixed.push_back(std::move(e));
  }
  return KrausChannel(std::move(mixed));
}

// Left puts the channel on the first tensor factor ({K_i (x) 1}); Right on the
// second ({1 (x) K_i}).
enum class Side { Left, Right };

inline KrausChannel tensor_with_identity(const KrausChannel& phi, Side side, Eigen::Index d_other) {
  if (d_other < 1) throw Error(ErrorKind::OutOfRange, "identity factor dimension must be positive");
  const ComplexMatrix id = ComplexMatrix::Identity(d_other, d_other);
  std::vector<ComplexMatrix> ops;
  ops.reserve(phi.size());
  for (const auto& k : phi.kraus()) ops.push_back(side == Side::Left ? kron(k, id) : kron(id, k));
  return KrausChannel(std::move(ops));
}

inline bool is_unital(const KrausChannel& phi) { return unitality_defect(phi.kraus()) <= tol::cptp; }

// {U K_i U^dag}
inline KrausChannel unitary_conjugate(const KrausChannel& phi, const ComplexMatrix& u) {
  if (u.rows() != phi.dim() || !is_unitary(u)) throw Error(ErrorKind::NotUnitary, "conjugating matrix is not unitary");
  std::vector<ComplexMatrix> ops;
  ops.reserve(phi.size());
  for (const auto& k : phi.kraus()) ops.push_back(u * k * u.adjoint());
  return KrausChannel(std::move(ops));
}

// {sqrt(l1) K_i} u {sqrt(l2) L_j}. A channel only when l1 + l2 = 1; callers
// that need arbitrary non-negative weights use the raw operator list.
inline std::vector<ComplexMatrix> scaled_union(std::span<const ComplexMatrix> first, double l1,
                                               std::span<const ComplexMatrix> second, double l2) {
  if (!(l1 >= 0.0 && l2 >= 0.0)) throw Error(ErrorKind::OutOfRange, "channel weights must be non-negative");
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.size() + second.size());
  for (const auto& k : first) ops.push_back(std::sqrt(l1) * k);
  for (const auto& k : second) ops.push_back(std::sqrt(l2) * k);
  return ops;
}

inline KrausChannel convex_combination(const KrausChannel& phi1, double l1, const KrausChannel& phi2, double l2) {
  if (phi1.dim() != phi2.dim()) throw Error(ErrorKind::DimMismatch, "channels act on different dimensions");
  return KrausChannel(scaled_union(phi1.kraus(), l1, phi2.kraus(), l2));
}

// K_i = G_i S^{-1/2} with G_i Ginibre and S = sum G_i^dag G_i.
template <class Rng>
KrausChannel random_channel(Eigen::Index dim, std::size_t kraus_count, Rng& rng) {
  if (dim < 1 || kraus_count < 1) throw Error(ErrorKind::OutOfRange, "random channel needs dim, count >= 1");
  std::vector<ComplexMatrix> ops;
  ops.reserve(kraus_count);
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < kraus_count; ++i) {
    ops.push_back(ginibre(dim, dim, rng));
    s.noalias() += ops.back().adjoint() * ops.back();
  }
  s = (0.5 * (s + s.adjoint())).eval();
  const HermitianEigen eig = hermitian_eig(s);
  const RealVector inv_sqrt = eig.eigenvalues.array().rsqrt();
  const ComplexMatrix s_inv_sqrt = eig.eigenvectors * inv_sqrt.asDiagonal() * eig.eigenvectors.adjoint();
  for (auto& k : ops) k = (k * s_inv_sqrt).eval();
  return KrausChannel(std::move(ops));
}

}  // namespace chanvar
