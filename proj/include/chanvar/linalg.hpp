#pragma once

// Dense complex Hermitian spectral machinery shared by every other module.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>

#include "chanvar/errors.hpp"

namespace chanvar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-10;   // relative, Frobenius
inline constexpr double zero_eigenvalue = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double cptp = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double unit_norm = 1e-12;
inline constexpr double bound = 1e-9;
}  // namespace tol

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

// Which tensor factor survives a partial trace.
enum class Keep { A, B };

inline void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorKind::DimMismatch, std::string(what) + " must be a non-empty square matrix, got " +
                                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

inline void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) throw Error(ErrorKind::NotFinite, std::string(what) + " has NaN or Inf entries");
}

inline double hermiticity_defect(const ComplexMatrix& a) { return (a - a.adjoint()).norm(); }

inline bool is_hermitian(const ComplexMatrix& a, double rel_tol = tol::hermitian) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= rel_tol * std::max(1.0, a.norm());
}

inline bool is_unitary(const ComplexMatrix& u, double tolerance = tol::unitary) {
  if (u.rows() != u.cols()) return false;
  const auto n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() <= tolerance;
}

// x^kappa with the support convention: anything inside the zero window maps
// to 0, including 0^0.
inline double support_pow(double x, double kappa) {
  if (x <= tol::zero_eigenvalue) return 0.0;
  return std::pow(x, kappa);
}

inline HermitianEigen hermitian_eig(const ComplexMatrix& a) {
  require_square(a, "hermitian_eig input");
  require_finite(a, "hermitian_eig input");
  if (!is_hermitian(a)) {
    throw Error(ErrorKind::NotHermitian,
                "||A - A^dag||_F = " + std::to_string(hermiticity_defect(a)) + " exceeds relative tolerance");
  }
  // The solver reads one triangle only; the gate above already rejected
  // anything that is not Hermitian to tolerance.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NotFinite, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// One eigendecomposition of a PSD Hermitian matrix, reused for any number of
// spectral powers. Eigenvalues in [-1e-12, 1e-12] are stored as exact zeros.
class PsdSpectrum {
 public:
  explicit PsdSpectrum(const ComplexMatrix& a) : eig_(hermitian_eig(a)) {
    for (Eigen::Index i = 0; i < eig_.eigenvalues.size(); ++i) {
      double& lambda = eig_.eigenvalues[i];
      if (lambda < -tol::zero_eigenvalue) {
        throw Error(ErrorKind::NotPositive, "eigenvalue " + std::to_string(lambda) + " below -1e-12");
      }
      if (lambda <= tol::zero_eigenvalue) lambda = 0.0;
    }
  }

  Eigen::Index dim() const { return eig_.eigenvalues.size(); }
  const RealVector& eigenvalues() const { return eig_.eigenvalues; }
  const ComplexMatrix& eigenvectors() const { return eig_.eigenvectors; }

  ComplexMatrix power(double kappa) const {
    RealVector powered(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) powered[i] = support_pow(eig_.eigenvalues[i], kappa);
    return eig_.eigenvectors * powered.asDiagonal() * eig_.eigenvectors.adjoint();
  }

  double trace_power(double kappa) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i) sum += support_pow(eig_.eigenvalues[i], kappa);
    return sum;
  }

  std::size_t rank() const {
    return static_cast<std::size_t>((eig_.eigenvalues.array() > 0.0).count());
  }

  // -sum lambda log2 lambda, with 0 log 0 = 0.
  double entropy_bits() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i) {
      const double lambda = eig_.eigenvalues[i];
      if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
  }

 private:
  HermitianEigen eig_;
};

inline ComplexMatrix fractional_power(const ComplexMatrix& rho, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "fractional_power exponent must lie in [0,1], got " + std::to_string(kappa));
  }
  return PsdSpectrum(rho).power(kappa);
}

// rho^kappa of the qubit (1 + r.sigma)/2 from its Bloch vector, without an
// eigensolver.
inline ComplexMatrix qubit_power_closed_form(const std::array<double, 3>& r, double kappa) {
  const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  if (norm < 1e-14) throw Error(ErrorKind::ZeroBloch, "Bloch vector too short for the closed form; use fractional_power");
  if (norm > 1.0 + 1e-12) throw Error(ErrorKind::BlochOutOfBall, "|r| = " + std::to_string(norm) + " > 1");
  const double l1 = support_pow((1.0 - norm) / 2.0, kappa);
  const double l2 = support_pow((1.0 + norm) / 2.0, kappa);
  const double mean = (l1 + l2) / 2.0;
  const double half_gap = (l1 - l2) / (2.0 * norm);
  ComplexMatrix out(2, 2);
  out(0, 0) = mean - r[2] * half_gap;
  out(0, 1) = Complex(-r[0], r[1]) * half_gap;
  out(1, 0) = Complex(-r[0], -r[1]) * half_gap;
  out(1, 1) = mean + r[2] * half_gap;
  return out;
}

inline double von_neumann_entropy(const ComplexMatrix& rho) { return PsdSpectrum(rho).entropy_bits(); }

inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "binary_entropy argument " + std::to_string(p));
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Row index of |a>|b> is a * dim_b + b, matching kron(A, B).
inline ComplexMatrix partial_trace(const ComplexMatrix& w, Eigen::Index dim_a, Eigen::Index dim_b, Keep keep) {
  if (dim_a < 1 || dim_b < 1 || w.rows() != dim_a * dim_b || w.cols() != dim_a * dim_b) {
    throw Error(ErrorKind::DimMismatch, "partial_trace: " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                                            " is not (" + std::to_string(dim_a) + "*" + std::to_string(dim_b) + ")^2");
  }
  if (keep == Keep::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Eigen::Index a = 0; a < dim_a; ++a)
      for (Eigen::Index ap = 0; ap < dim_a; ++ap)
        for (Eigen::Index b = 0; b < dim_b; ++b) out(a, ap) += w(a * dim_b + b, ap * dim_b + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Eigen::Index b = 0; b < dim_b; ++b)
    for (Eigen::Index bp = 0; bp < dim_b; ++bp)
      for (Eigen::Index a = 0; a < dim_a; ++a) out(b, bp) += w(a * dim_b + b, a * dim_b + bp);
  return out;
}

inline double max_eigenvalue(const ComplexMatrix& h) { return hermitian_eig(h).eigenvalues.maxCoeff(); }

// tr(A B) without forming the product.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.transpose().array() * b.array()).sum();
}

// Complex Gaussian matrix with E|g_ij|^2 = 1.
template <class Rng>
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

// Haar-distributed unitary via QR of a Ginibre matrix with the R-diagonal
// phases divided out.
template <class Rng>
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace chanvar
