#pragma once

// Density matrices and the state families used throughout: Bloch qubits,
// Werner and isotropic two-qubit states, Ginibre-random states, purification.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "chanvar/linalg.hpp"

namespace chanvar {

// Unit-trace PSD Hermitian matrix. Construction validates; instances are
// immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    require_square(mat_, "density matrix");
    require_finite(mat_, "density matrix");
    if (!is_hermitian(mat_)) {
      throw Error(ErrorKind::NotHermitian, "density matrix ||rho - rho^dag||_F = " +
                                               std::to_string(hermiticity_defect(mat_)));
    }
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol::trace) {
      throw Error(ErrorKind::NotNormalized, "density matrix trace " + std::to_string(tr.real()) + " != 1");
    }
    const double min_eig = hermitian_eig(mat_).eigenvalues.minCoeff();
    if (min_eig < -tol::zero_eigenvalue) {
      throw Error(ErrorKind::NotPositive, "density matrix eigenvalue " + std::to_string(min_eig) + " < -1e-12");
    }
  }

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }
  double purity() const { return trace_product(mat_, mat_).real(); }
  PsdSpectrum spectrum() const { return PsdSpectrum(mat_); }

 private:
  ComplexMatrix mat_;
};

class BlochQubit {
 public:
  BlochQubit(double r1, double r2, double r3) : r_{r1, r2, r3} {
    if (!(std::isfinite(r1) && std::isfinite(r2) && std::isfinite(r3))) {
      throw Error(ErrorKind::NotFinite, "Bloch components must be finite");
    }
    if (r1 * r1 + r2 * r2 + r3 * r3 > 1.0 + 1e-12) {
      throw Error(ErrorKind::BlochOutOfBall, "|r|^2 = " + std::to_string(r1 * r1 + r2 * r2 + r3 * r3) + " > 1");
    }
  }

  double r1() const noexcept { return r_[0]; }
  double r2() const noexcept { return r_[1]; }
  double r3() const noexcept { return r_[2]; }
  const std::array<double, 3>& vec() const noexcept { return r_; }
  double norm() const noexcept { return std::sqrt(r_[0] * r_[0] + r_[1] * r_[1] + r_[2] * r_[2]); }

 private:
  std::array<double, 3> r_;
};

class PureState {
 public:
  explicit PureState(ComplexVector amplitudes) : psi_(std::move(amplitudes)) {
    if (psi_.size() < 1) throw Error(ErrorKind::DimMismatch, "pure state needs at least one amplitude");
    if (!psi_.allFinite()) throw Error(ErrorKind::NotFinite, "pure state amplitudes must be finite");
    if (std::abs(psi_.norm() - 1.0) > tol::unit_norm) {
      throw Error(ErrorKind::NotNormalized, "||psi|| = " + std::to_string(psi_.norm()));
    }
  }

  static PureState normalized(const ComplexVector& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::NotNormalized, "cannot normalize a zero vector");
    return PureState(v / n);
  }

  const ComplexVector& amplitudes() const noexcept { return psi_; }
  Eigen::Index dim() const noexcept { return psi_.size(); }
  ComplexMatrix projector() const { return psi_ * psi_.adjoint(); }
  DensityMatrix density() const { return DensityMatrix(projector()); }

  // <psi|K|psi>
  Complex expectation(const ComplexMatrix& k) const { return psi_.dot(k * psi_); }

 private:
  ComplexVector psi_;
};

namespace pauli {
inline ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

inline DensityMatrix from_bloch(const BlochQubit& b) {
  ComplexMatrix m = 0.5 * (pauli::identity() + b.r1() * pauli::x() + b.r2() * pauli::y() + b.r3() * pauli::z());
  return DensityMatrix(std::move(m));
}

inline DensityMatrix maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw Error(ErrorKind::OutOfRange, "dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

inline void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, std::string(name) + " = " + std::to_string(x) + " outside [0,1]");
  }
}

// Two-qubit Werner family; p = 0 is the singlet, p = 3/4 is I/4.
inline DensityMatrix werner(double p) {
  require_unit_interval(p, "Werner p");
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = p / 3.0;
  m(1, 1) = m(2, 2) = (3.0 - 2.0 * p) / 6.0;
  m(1, 2) = m(2, 1) = (4.0 * p - 3.0) / 6.0;
  return DensityMatrix(std::move(m));
}

// Two-qubit isotropic family; F = 1 is |Phi+>, F = 1/4 is I/4.
inline DensityMatrix isotropic(double f) {
  require_unit_interval(f, "isotropic F");
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = (2.0 * f + 1.0) / 6.0;
  m(1, 1) = m(2, 2) = (1.0 - f) / 3.0;
  m(0, 3) = m(3, 0) = (4.0 * f - 1.0) / 6.0;
  return DensityMatrix(std::move(m));
}

inline bool werner_is_separable(double p) { return p <= 1.0 / 3.0; }
inline bool isotropic_is_separable(double f) { return f <= 0.5; }

inline double linear_entropy(const DensityMatrix& rho) { return 1.0 - rho.purity(); }

template <class Rng>
DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  if (dim < 1) throw Error(ErrorKind::OutOfRange, "dimension must be positive");
  if (rank < 1 || rank > dim) {
    throw Error(ErrorKind::BadRank, "rank " + std::to_string(rank) + " not in [1, " + std::to_string(dim) + "]");
  }
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  // GG^dag is Hermitian up to rounding in the product; take the exact part.
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityMatrix(std::move(m));
}

// Ginibre-ensemble state of the given rank, reproducible from the seed.
inline DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density(dim, rank, rng);
}

template <class Rng>
PureState random_pure_state(Eigen::Index dim, Rng& rng) {
  return PureState::normalized(ginibre(dim, 1, rng).col(0));
}

struct Purification {
  PureState state;           // on A (x) B, index a * system_dim + b
  Eigen::Index ancilla_dim;  // = rank(rho)
  Eigen::Index system_dim;
};

// |psi> = sum_k sqrt(lambda_k) |k>_A |v_k>_B over the support of rho, so that
// tr_A |psi><psi| = rho.
inline Purification purify(const DensityMatrix& rho) {
  const PsdSpectrum spec = rho.spectrum();
  const Eigen::Index d = rho.dim();
  const auto rank = static_cast<Eigen::Index>(spec.rank());
  ComplexVector psi = ComplexVector::Zero(rank * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = spec.eigenvalues()[i];
    if (lambda <= 0.0) continue;
    psi.segment(k * d, d) = std::sqrt(lambda) * spec.eigenvectors().col(i);
    ++k;
  }
  return {PureState::normalized(psi), rank, d};
}

}  // namespace chanvar
