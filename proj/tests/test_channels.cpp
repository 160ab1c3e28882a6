#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "chanvar/channels.hpp"
#include "oracles.hpp"

using namespace chanvar;
using Catch::Approx;
using oracle::thrown_kind;

namespace {

std::array<double, 3> bloch_of(const ComplexMatrix& rho) {
  return {(rho * pauli::x()).trace().real(), (rho * pauli::y()).trace().real(), (rho * pauli::z()).trace().real()};
}

ComplexMatrix termwise(const KrausChannel& phi, const ComplexMatrix& x) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (std::size_t i = 0; i < phi.size(); ++i) out += phi.kraus()[i] * x * phi.kraus()[i].adjoint();
  return out;
}

}  // namespace

TEST_CASE("KrausChannel validation") {
  ComplexMatrix small = ComplexMatrix::Zero(2, 2);
  small(0, 0) = 0.1;
  CHECK(thrown_kind([&] { KrausChannel({ComplexMatrix::Identity(2, 2), small}); }) == ErrorKind::NotCPTP);
  CHECK(thrown_kind([] { KrausChannel(std::vector<ComplexMatrix>{}); }).has_value());
  CHECK(thrown_kind([] { KrausChannel({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 3)}); }).has_value());
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    CHECK_NOTHROW(amplitude_damping(p));
    CHECK_NOTHROW(phase_damping(p));
    CHECK_NOTHROW(hadamard_decoherence(2.0 * p - 1.0));
    CHECK_NOTHROW(depolarizing(p / 3.0));
  }
  CHECK(thrown_kind([] { depolarizing(0.34); }) == ErrorKind::OutOfRange);
  CHECK(thrown_kind([] { amplitude_damping(1.5); }) == ErrorKind::OutOfRange);
  CHECK(thrown_kind([] { hadamard_decoherence(-1.1); }) == ErrorKind::OutOfRange);
}

TEST_CASE("apply matches the termwise Kraus sum") {
  std::mt19937_64 rng(31);
  for (int d = 2; d <= 4; ++d) {
    const KrausChannel phi = random_channel(d, 3, rng);
    const ComplexMatrix x = oracle::random_matrix(d, rng);
    CHECK((phi.apply(x) - termwise(phi, x)).norm() < 1e-12);
    const ComplexMatrix rho = oracle::full_rank_state(d, rng);
    CHECK(std::abs(phi.apply(rho).trace() - 1.0) < 1e-12);
    CHECK((identity_channel(d).apply(rho) - rho).norm() == 0.0);
  }
}

TEST_CASE("depolarizing contracts the Bloch vector by 1 - 4p") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-0.57, 0.57);
  for (int trial = 0; trial < 50; ++trial) {
    const BlochQubit b(u(rng), u(rng), u(rng));
    const double p = trial / 150.0;
    const auto out = bloch_of(depolarizing(p).apply(from_bloch(b).matrix()));
    for (int j = 0; j < 3; ++j) CHECK(out[j] == Approx((1.0 - 4.0 * p) * b.vec()[j]).margin(1e-13));
  }
}

TEST_CASE("Hadamard decoherence is a Schur product") {
  std::mt19937_64 rng(33);
  const ComplexMatrix rho = oracle::full_rank_state(2, rng);
  const double theta = 0.3;
  ComplexMatrix expected = rho;
  expected(0, 1) *= theta;
  expected(1, 0) *= theta;
  CHECK((hadamard_decoherence(theta).apply(rho) - expected).norm() < 1e-14);
}

TEST_CASE("basis channel sends every state to I/d") {
  std::mt19937_64 rng(34);
  CHECK(thrown_kind([] { basis_channel(1); }) == ErrorKind::OutOfRange);
  for (int d = 2; d <= 4; ++d) {
    const KrausChannel phi = basis_channel(d);
    CHECK(phi.size() == static_cast<std::size_t>(d * d));
    const ComplexMatrix rho = oracle::full_rank_state(d, rng);
    CHECK((phi.apply(rho) - ComplexMatrix::Identity(d, d) / d).norm() < 1e-14);
    CHECK(is_unital(phi));
  }
}

TEST_CASE("projective measurements") {
  const KrausChannel pi = computational_measurement(2);
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  CHECK((pi.apply(diag) - diag).norm() == 0.0);
  const ComplexMatrix plus = 0.5 * ComplexMatrix::Ones(2, 2);
  CHECK((pi.apply(plus) - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
  CHECK(is_unital(pi));

  ComplexMatrix hadamard(2, 2);
  hadamard << 1, 1, 1, -1;
  hadamard /= std::sqrt(2.0);
  CHECK((von_neumann_measurement(hadamard).apply(plus) - plus).norm() < 1e-14);
  CHECK(thrown_kind([] { von_neumann_measurement(2.0 * ComplexMatrix::Identity(2, 2)); }) == ErrorKind::NotUnitary);
}

TEST_CASE("Kraus mixing leaves the channel unchanged") {
  std::mt19937_64 rng(35);
  const KrausChannel phi = random_channel(3, 2, rng);
  CHECK(mix_kraus(phi, ComplexMatrix::Identity(2, 2)).kraus() == phi.kraus());
  for (int trial = 0; trial < 20; ++trial) {
    const KrausChannel mixed = mix_kraus(phi, random_unitary(4, rng));
    CHECK(mixed.size() == 4);
    const ComplexMatrix rho = oracle::full_rank_state(3, rng);
    CHECK((mixed.apply(rho) - phi.apply(rho)).norm() < 1e-12);
  }
  CHECK(thrown_kind([&] { mix_kraus(phi, ComplexMatrix::Identity(1, 1)); }) == ErrorKind::SizeMismatch);
  CHECK(thrown_kind([&] { mix_kraus(phi, 2.0 * ComplexMatrix::Identity(2, 2)); }) == ErrorKind::NotUnitary);
}

TEST_CASE("tensor with identity acts on one factor") {
  std::mt19937_64 rng(36);
  CHECK(tensor_with_identity(identity_channel(2), Side::Left, 2).kraus().front().isIdentity());
  const KrausChannel phi = random_channel(2, 3, rng);
  const ComplexMatrix a = oracle::full_rank_state(2, rng);
  const ComplexMatrix b = oracle::full_rank_state(3, rng);
  CHECK((tensor_with_identity(phi, Side::Left, 3).apply(kron(a, b)) - kron(phi.apply(a), b)).norm() < 1e-13);
  CHECK((tensor_with_identity(phi, Side::Right, 3).apply(kron(b, a)) - kron(b, phi.apply(a))).norm() < 1e-13);
}

TEST_CASE("unitality") {
  CHECK(is_unital(depolarizing(0.2)));
  CHECK(is_unital(phase_damping(0.4)));
  CHECK(is_unital(hadamard_decoherence(0.1)));
  CHECK_FALSE(is_unital(amplitude_damping(0.3)));
  CHECK(is_unital(amplitude_damping(0.0)));
  std::mt19937_64 rng(37);
  CHECK(is_unital(unitary_conjugate(depolarizing(0.1), random_unitary(2, rng))));
}

TEST_CASE("convex combinations and scaled unions") {
  const KrausChannel mix = convex_combination(identity_channel(2), 0.4, basis_channel(2), 0.6);
  const ComplexMatrix rho = from_bloch(BlochQubit(0.2, 0.1, 0.5)).matrix();
  CHECK((mix.apply(rho) - (0.4 * rho + 0.3 * ComplexMatrix::Identity(2, 2))).norm() < 1e-14);
  CHECK(thrown_kind([] { convex_combination(identity_channel(2), 0.5, identity_channel(3), 0.5); }) == ErrorKind::DimMismatch);
  CHECK(thrown_kind([] { convex_combination(identity_channel(2), 0.7, identity_channel(2), 0.7); }) == ErrorKind::NotCPTP);
  const auto ops = scaled_union(identity_channel(2).kraus(), 2.0, identity_channel(2).kraus(), 0.0);
  CHECK(ops.size() == 2);
  CHECK(thrown_kind([] { scaled_union(identity_channel(2).kraus(), -1.0, identity_channel(2).kraus(), 0.0); }) ==
        ErrorKind::OutOfRange);
}

TEST_CASE("random channels are CPTP and seed-deterministic") {
  for (int d = 2; d <= 4; ++d) {
    std::mt19937_64 r1(40 + d), r2(40 + d);
    const KrausChannel a = random_channel(d, 4, r1);
    const KrausChannel b = random_channel(d, 4, r2);
    CHECK(cptp_defect(a.kraus()) < 1e-12);
    CHECK(a.kraus() == b.kraus());
  }
}
