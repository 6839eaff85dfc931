#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "qkt/quantum_top.hpp"
#include "test_helpers.hpp"

using namespace qkt;

namespace {

TopParams params(double j, double kappa, double p) {
  TopParams t;
  t.spin = SpinQuantum::from_j(j);
  t.kappa = kappa;
  t.p = p;
  return t;
}

double fold(double w) {
  w = std::remainder(w, kTwoPi);
  return w <= -kPi ? w + kTwoPi : w;
}

}  // namespace

TEST_CASE("zero twist gives the rotation spectrum") {
  const double p = 0.7;
  const auto spec = floquet_spectrum(floquet_operator(params(4, 0.0, p)));
  std::vector<double> expected;
  for (int m = -4; m <= 4; ++m) expected.push_back(fold(-p * m));
  std::sort(expected.begin(), expected.end());
  REQUIRE(spec.size() == 9);
  for (int n = 0; n < 9; ++n) CHECK(std::abs(spec.omegas[n] - expected[n]) < 1e-12);
}

TEST_CASE("zero kick is diagonal in the Jx eigenbasis") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  const auto f = floquet_operator(params(4, 2.3, 0.0), ops);
  Eigen::SelfAdjointEigenSolver<Matrix> es(ops.jx);
  Matrix in_basis = es.eigenvectors().adjoint() * f.u * es.eigenvectors();
  in_basis.diagonal().setZero();
  CHECK(in_basis.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Floquet operator is unitary") {
  for (double j : {0.5, 1.0, 2.0, 4.0, 10.0}) {
    for (double kappa : {0.0, 1.0, 3.0, 7.0}) {
      CHECK(unitarity_error(floquet_operator(params(j, kappa, kPi / 2)).u) < 1e-12);
    }
  }
}

TEST_CASE("Floquet operator applies the kick before the twist") {
  const auto ops = build_operators(SpinQuantum::from_j(2));
  const auto f = floquet_operator(params(2, 1.7, 0.9), ops);
  const Matrix expected = exp_hermitian(ops.jx * ops.jx, -kI * 1.7 / 4.0) * exp_hermitian(ops.jy, -kI * 0.9);
  CHECK(max_abs_diff(f.u, expected) < 1e-12);
}

TEST_CASE("evolve") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  const auto f = floquet_operator(params(4, 3.0, kPi / 2), ops);
  const auto psi0 = coherent_state(ops, {2.25, 2.5});
  const auto zero = evolve(psi0, f, 0);
  REQUIRE(zero.size() == 1);
  CHECK((zero[0].amplitudes() - psi0.amplitudes()).norm() == 0.0);

  const auto series = evolve(psi0, f, 600);
  REQUIRE(series.size() == 601);
  for (const auto& s : series) CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-9);

  const auto spec = floquet_spectrum(f);
  const SpinState eigen(spec.vectors.col(3));
  for (const auto& s : evolve(eigen, f, 50)) {
    CHECK(std::abs(std::abs(eigen.amplitudes().dot(s.amplitudes())) - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(evolve(SpinState::basis(SpinQuantum::from_j(1), 0), f, 1), std::invalid_argument);
}

TEST_CASE("degenerate rotation spectrum at p = pi/2") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  const auto f = floquet_operator(params(4, 0.0, kPi / 2), ops);
  const auto spec = floquet_spectrum(f);
  std::map<int, int> multiplicity;
  for (double w : spec.omegas) {
    const double q = w / (kPi / 2);
    CHECK(std::abs(q - std::round(q)) < 1e-10);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    ++multiplicity[static_cast<int>(std::round(q))];
  }
  CHECK(multiplicity[0] == 3);
  CHECK(multiplicity[1] == 2);
  CHECK(multiplicity[-1] == 2);
  CHECK(multiplicity[2] == 2);

  // Each eigenvector lies in the Jy eigenspace(s) carrying its eigenphase.
  Eigen::SelfAdjointEigenSolver<Matrix> es(ops.jy);
  for (int n = 0; n < 9; ++n) {
    Matrix projector = Matrix::Zero(9, 9);
    for (int k = 0; k < 9; ++k) {
      const double w = fold(-kPi / 2 * es.eigenvalues()(k));
      const double diff = std::abs(std::remainder(w - spec.omegas[n], kTwoPi));
      if (diff < 1e-8) projector += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    }
    CHECK(std::abs((projector * spec.vectors.col(n)).norm() - 1.0) < 1e-9);
  }
  CHECK(max_abs_diff(spec.vectors.adjoint() * spec.vectors, Matrix::Identity(9, 9)) < 1e-9);
}

TEST_CASE("identity Floquet operator") {
  const auto spec = floquet_spectrum(floquet_operator(params(4, 0.0, 0.0)));
  for (double w : spec.omegas) CHECK(std::abs(w) < 1e-14);
}

TEST_CASE("chaotic-regime eigenphases match an independent eigensolver") {
  // Frozen from tests/oracles/frozen_values.py (scipy expm + eigvals).
  const std::vector<double> expected{-1.743273428377334,  -1.050896416919725, -1.0297737835754135,
                                     -0.740133918032873,  0.12117705310322438, 0.4213664371652078,
                                     1.3983192252124588,  2.40145873555692,    2.8544973245858793};
  const auto f = floquet_operator(params(4, 3.0, kPi / 2));
  const auto spec = floquet_spectrum(f);
  REQUIRE(spec.size() == 9);
  for (int n = 0; n < 9; ++n) CHECK(std::abs(spec.omegas[n] - expected[n]) < 1e-10);
  for (int n = 1; n < 9; ++n) CHECK(spec.omegas[n] - spec.omegas[n - 1] > 1e-3);

  CHECK(max_abs_diff(spec.reconstruct(), f.u) < 1e-9);
  CHECK(max_abs_diff(spec.vectors.adjoint() * spec.vectors, Matrix::Identity(9, 9)) < 1e-9);
  for (int n = 0; n < 9; ++n) {
    const Vector v = spec.vectors.col(n);
    CHECK((f.u * v - std::exp(kI * spec.omegas[n]) * v).norm() < 1e-9);
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    CHECK(std::abs(v(imax).imag()) < 1e-14);
    CHECK(v(imax).real() > 0.0);
  }
}

TEST_CASE("spectrum reconstruction over a parameter sweep") {
  for (double kappa : {0.0, 0.5, 1.0, 3.0, 6.0}) {
    for (double p : {0.0, kPi / 4, kPi / 2, kPi}) {
      const auto f = floquet_operator(params(4, kappa, p));
      const auto spec = floquet_spectrum(f);
      CHECK(max_abs_diff(spec.reconstruct(), f.u) < 1e-9);
      CHECK(max_abs_diff(spec.vectors.adjoint() * spec.vectors, Matrix::Identity(9, 9)) < 1e-9);
    }
  }
}

TEST_CASE("overlap distribution and support measure") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  const auto spec = floquet_spectrum(floquet_operator(params(4, 3.0, kPi / 2), ops));

  const auto on_eigen = overlap_distribution(SpinState(spec.vectors.col(3)), spec);
  for (int n = 0; n < 9; ++n) CHECK(std::abs(on_eigen[n].f - (n == 3 ? 1.0 : 0.0)) < 1e-12);
  CHECK(std::abs(support_measure(SpinState(spec.vectors.col(3)), spec).s - 1.0) < 1e-12);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dist = overlap_distribution(test::random_state(9, rng), spec);
    double total = 0.0;
    for (const auto& o : dist) total += o.f;
    CHECK(std::abs(total - 1.0) < 1e-10);
  }

  const SpinState equal = SpinState::normalized(spec.vectors * Vector::Ones(9));
  const auto sm = support_measure(equal, spec);
  CHECK(std::abs(sm.s - 3.0) < 1e-12);
  CHECK(std::abs(sm.normalized - 1.0) < 1e-12);
  CHECK(participation_ratio(overlap_distribution(equal, spec)) == doctest::Approx(9.0));
}

TEST_CASE("Husimi distribution of |j, j>") {
  const auto spin = SpinQuantum::from_j(4);
  const auto ops = build_operators(spin);
  const auto grid = husimi(SpinState::basis(spin, 4), ops);
  CHECK(grid.thetas.size() == 101);
  CHECK(grid.phis.size() == 201);
  for (std::size_t k = 0; k < grid.phis.size(); ++k) {
    CHECK(std::abs(grid.at(0, k) - 9.0 / (4 * kPi)) < 1e-12);
    CHECK(std::abs(grid.at(100, k)) < 1e-12);
  }
  CHECK(std::abs(grid.integral() - 1.0) < 1e-3);
  CHECK(9.0 / (4 * kPi) == doctest::Approx(0.7162).epsilon(1e-4));
}

TEST_CASE("Husimi grid matches direct coherent-state overlaps") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  std::mt19937_64 rng(3);
  const auto psi = test::random_state(9, rng);
  const auto grid = husimi(psi, ops, 7, 9);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t k = 0; k < 9; ++k) {
      const auto c = coherent_state(ops, {grid.thetas[i], grid.phis[k]});
      const double direct = 9.0 / (4 * kPi) * std::norm(c.amplitudes().dot(psi.amplitudes()));
      CHECK(std::abs(grid.at(i, k) - direct) < 1e-12);
    }
  }
  const auto mixed = husimi(DensityMatrix::pure(psi), ops, 7, 9);
  for (std::size_t n = 0; n < grid.values.size(); ++n) CHECK(std::abs(mixed.values[n] - grid.values[n]) < 1e-12);
  CHECK_THROWS_AS(husimi(psi, ops, 1, 9), std::invalid_argument);
}

TEST_CASE("Husimi distributions of all Floquet eigenstates are normalized") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  const auto spec = floquet_spectrum(floquet_operator(params(4, 3.0, kPi / 2), ops));
  for (int n = 0; n < 9; ++n) {
    const auto grid = husimi(SpinState(spec.vectors.col(n)), ops);
    CHECK(std::abs(grid.integral() - 1.0) < 1e-3);
    CHECK(*std::min_element(grid.values.begin(), grid.values.end()) >= 0.0);
  }
}

TEST_CASE("one quantum kick tracks the classical map at large j") {
  const auto top = params(50, 1.0, kPi / 2);
  const auto ops = build_operators(top.spin);
  const auto f = floquet_operator(top, ops);
  for (SphericalCoord ic : {SphericalCoord{2.25, 1.1}, SphericalCoord{2.25, 2.5}, SphericalCoord{1.0, 4.0}}) {
    const auto after = evolve(coherent_state(ops, ic), f, 1).back();
    const auto m = mean_spin(after, ops);
    const auto cl = classical_step(ClassicalPoint::from_spherical(ic), top);
    CHECK(std::abs(m[0] / 50 - cl.x) < 0.05);
    CHECK(std::abs(m[1] / 50 - cl.y) < 0.05);
    CHECK(std::abs(m[2] / 50 - cl.z) < 0.05);
  }
}
