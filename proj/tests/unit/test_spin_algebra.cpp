#include <cmath>
#include <vector>

#include "doctest.h"
#include "qkt/density_matrix.hpp"
#include "qkt/spin_algebra.hpp"
#include "test_helpers.hpp"

using namespace qkt;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Wigner small-d matrix element <j m'| exp(-i beta Jy) |j m>, explicit sum.
double wigner_small_d(double j, double mp, double m, double beta) {
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  const double pref = std::sqrt(factorial(int(j + mp)) * factorial(int(j - mp)) * factorial(int(j + m)) *
                                factorial(int(j - m)));
  double sum = 0.0;
  for (int k = 0; k <= int(2 * j); ++k) {
    const int a = int(j + m) - k, b = int(mp - m) + k, e = int(j - mp) - k;
    if (a < 0 || b < 0 || e < 0) continue;
    const double sign = ((int(mp - m) + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign / (factorial(a) * factorial(k) * factorial(b) * factorial(e)) *
           std::pow(c, int(2 * j + m - mp) - 2 * k) * std::pow(s, int(mp - m) + 2 * k);
  }
  return pref * sum;
}

}  // namespace

TEST_CASE("spin-1/2 operators are half the Pauli matrices") {
  const auto ops = build_operators(SpinQuantum::from_j(0.5));
  CHECK(ops.jz(0, 0).real() == doctest::Approx(-0.5));
  CHECK(ops.jz(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(ops.jx(0, 1) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(ops.jx(1, 0) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(ops.jx(0, 0)) < 1e-15);
}

TEST_CASE("j = 4 has dimension 9 with jz = diag(-4..4)") {
  const auto spin = SpinQuantum::from_j(4);
  CHECK(spin.dim() == 9);
  const auto ops = build_operators(spin);
  for (int i = 0; i < 9; ++i) CHECK(ops.jz(i, i).real() == doctest::Approx(i - 4.0));
}

TEST_CASE("j = 1 Casimir is 2 times identity") {
  const auto ops = build_operators(SpinQuantum::from_j(1));
  const Matrix c = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
  CHECK(max_abs_diff(c, 2.0 * Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("angular momentum invariants across spins") {
  for (double j : {0.5, 1.0, 1.5, 2.0, 4.0, 10.0}) {
    CAPTURE(j);
    const auto ops = build_operators(SpinQuantum::from_j(j));
    const int d = ops.dim();
    CHECK(hermiticity_error(ops.jx) < 1e-12);
    CHECK(hermiticity_error(ops.jy) < 1e-12);
    CHECK(hermiticity_error(ops.jz) < 1e-12);
    CHECK(max_abs_diff(ops.jx * ops.jy - ops.jy * ops.jx, kI * ops.jz) < 1e-10);
    CHECK(max_abs_diff(ops.jy * ops.jz - ops.jz * ops.jy, kI * ops.jx) < 1e-10);
    CHECK(max_abs_diff(ops.jz * ops.jx - ops.jx * ops.jz, kI * ops.jy) < 1e-10);
    const Matrix casimir = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
    CHECK(max_abs_diff(casimir, j * (j + 1) * Matrix::Identity(d, d)) < 1e-10);
  }
}

TEST_CASE("invalid spin magnitudes are rejected") {
  CHECK_THROWS_AS(SpinQuantum::from_j(0.3), std::invalid_argument);
  CHECK_THROWS_AS(SpinQuantum::from_j(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpinQuantum::from_j(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(SpinQuantum::from_twice_j(-2), std::invalid_argument);
  CHECK(SpinQuantum::from_j(0.0).dim() == 1);
}

TEST_CASE("Hermitian exponential matches the Wigner small-d formula") {
  for (double j : {0.5, 1.0, 1.5, 2.0}) {
    const auto ops = build_operators(SpinQuantum::from_j(j));
    for (double beta : {0.3, 1.1, 2.25, 3.0}) {
      const Matrix d = exp_hermitian(ops.jy, -kI * beta);
      for (int a = 0; a < ops.dim(); ++a) {
        for (int b = 0; b < ops.dim(); ++b) {
          CAPTURE(j);
          CAPTURE(beta);
          CHECK(std::abs(d(a, b) - Complex(wigner_small_d(j, a - j, b - j, beta))) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("coherent state at theta = 0 is |j, j>") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  for (double phi : {0.0, 1.3, 5.9}) {
    const auto s = coherent_state(ops, {0.0, phi});
    Vector top = Vector::Zero(9);
    top(8) = 1.0;
    CHECK((s.amplitudes() - top).norm() == 0.0);
  }
}

TEST_CASE("coherent state at theta = pi points down") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  const auto m = mean_spin(coherent_state(ops, {kPi, 0.0}), ops);
  CHECK(std::abs(m[0]) < 1e-9);
  CHECK(std::abs(m[1]) < 1e-9);
  CHECK(std::abs(m[2] + 4.0) < 1e-9);
}

TEST_CASE("coherent state mean spin follows the closed form") {
  for (double j : {0.5, 2.0, 4.0, 10.0}) {
    const auto ops = build_operators(SpinQuantum::from_j(j));
    for (SphericalCoord c : {SphericalCoord{2.25, 2.5}, SphericalCoord{2.25, 1.1}, SphericalCoord{0.4, 4.0}}) {
      const auto m = mean_spin(coherent_state(ops, c), ops);
      CHECK(std::abs(m[0] - j * std::sin(c.theta) * std::cos(c.phi)) < 1e-9);
      CHECK(std::abs(m[1] - j * std::sin(c.theta) * std::sin(c.phi)) < 1e-9);
      CHECK(std::abs(m[2] - j * std::cos(c.theta)) < 1e-9);
    }
  }
}

TEST_CASE("coherent states are unit norm on a 20 x 20 grid") {
  const auto ops = build_operators(SpinQuantum::from_j(4));
  for (int a = 0; a < 20; ++a) {
    for (int b = 0; b < 20; ++b) {
      const SphericalCoord c{kPi * a / 19.0, kTwoPi * b / 20.0};
      CHECK(std::abs(coherent_state(ops, c).amplitudes().norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("coherent states resolve the identity") {
  const auto [nodes, weights] = test::gauss_legendre(64);
  const int n_phi = 128;
  for (double j : {1.0, 4.0}) {
    const auto ops = build_operators(SpinQuantum::from_j(j));
    const int d = ops.dim();
    Matrix acc = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (int b = 0; b < n_phi; ++b) {
        const Vector v = coherent_state(ops, {std::acos(nodes[a]), kTwoPi * b / n_phi}).amplitudes();
        acc += weights[a] * (kTwoPi / n_phi) * (v * v.adjoint());
      }
    }
    acc *= d / (4.0 * kPi);
    CHECK(max_abs_diff(acc, Matrix::Identity(d, d)) < 1e-6);
  }
}

TEST_CASE("expectation values") {
  const auto spin = SpinQuantum::from_j(4);
  const auto ops = build_operators(spin);
  const auto top = SpinState::basis(spin, 4);
  CHECK(expectation(top, ops.jz) == doctest::Approx(4.0));
  CHECK(std::abs(expectation(top, ops.jx)) < 1e-15);
  const auto cs = coherent_state(ops, {2.25, 1.1});
  CHECK(std::abs(expectation(cs, ops.jz) - 4.0 * std::cos(2.25)) < 1e-9);
  CHECK(expectation(cs, ops.jz) == doctest::Approx(-2.512).epsilon(1e-3));

  const Matrix rho = DensityMatrix::pure(cs).matrix();
  CHECK(std::abs(expectation(rho, ops.jz) - expectation(cs, ops.jz)) < 1e-12);
}

TEST_CASE("expectation rejects bad operators") {
  const auto ops = build_operators(SpinQuantum::from_j(1));
  const auto state = SpinState::basis(ops.spin, 0);
  CHECK_THROWS_AS(expectation(state, Matrix::Identity(4, 4)), std::invalid_argument);
  Matrix non_hermitian = Matrix::Zero(3, 3);
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(expectation(state, non_hermitian), std::invalid_argument);
}

TEST_CASE("state and density matrix validation") {
  CHECK_THROWS_AS(SpinState(Vector::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(SpinState::normalized(Vector::Zero(3)), std::invalid_argument);
  CHECK_THROWS_AS(SpinState::basis(SpinQuantum::from_j(1), 2), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(3, 3)), std::invalid_argument);
  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, std::invalid_argument);
  CHECK(DensityMatrix::maximally_mixed(9).trace() == doctest::Approx(1.0));
}

TEST_CASE("spherical chart folding") {
  const auto c = SphericalCoord::canonical(-0.5, -1.0);
  CHECK(c.theta == doctest::Approx(0.5));
  CHECK(c.phi == doctest::Approx(kPi - 1.0));
  const auto d = SphericalCoord::canonical(1.0, 7.0);
  CHECK(d.phi == doctest::Approx(7.0 - kTwoPi));
}
