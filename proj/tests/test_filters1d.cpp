#include "doctest.h"
#include "qfk/analysis.hpp"
#include "qfk/errors.hpp"
#include "qfk/filters1d.hpp"
#include "support.hpp"

using namespace qfk;

namespace {

ExactFilter1D rat(int lo, std::vector<int> num, long den) {
  std::vector<QComplex> c;
  for (int x : num) c.emplace_back(Rational(x, den));
  return ExactFilter1D(lo, c);
}

// Multiplicity of the root z = root of the Laurent polynomial, by exact synthetic division.
int root_multiplicity(const ExactFilter1D& f, int root) {
  std::vector<Rational> p;
  for (const auto& c : f.coeffs()) p.push_back(c.re);
  int m = 0;
  while (p.size() > 1) {
    std::vector<Rational> q(p.size() - 1);
    Rational acc = p.back();
    for (size_t i = p.size() - 1; i-- > 0;) {
      q[i] = acc;
      acc = p[i] + acc * root;
    }
    if (acc != 0) break;
    p = q;
    ++m;
  }
  return m;
}

}  // namespace

TEST_CASE("interpolatory filters") {
  CHECK(interpolatory(1) == rat(-1, {1, 2, 1}, 4));
  CHECK(interpolatory(2) == rat(-3, {-1, 0, 9, 16, 9, 0, -1}, 32));
  for (int n = 1; n <= 6; ++n) {
    const auto a = interpolatory(n);
    CHECK(a[0] == QComplex(Rational(1, 2)));
    for (int k = 2; k <= 2 * n; k += 2) CHECK(is_zero(a[k]));
    CHECK(a == adjoint(a));
    // a^I_{2n} has (1 + z)^{2n} as a factor exactly.
    CHECK(root_multiplicity(a, -1) == 2 * n);
  }
}

TEST_CASE("u filter and its polynomial") {
  CHECK(u_polynomial(3) == Poly1Real{Rational(1), Rational(1, 2), Rational(3, 8)});
  CHECK(u_filter(3) == rat(-2, {3, -25, 150, 150, -25, 3}, 256));
  CHECK(u_filter(1) == rat(0, {1, 1}, 2));
  for (int n = 1; n <= 5; ++n) {
    const auto u = u_filter(n);
    CHECK(symmetry_deviation_1d(u, 1, 1) == 0.0);
    CHECK(linear_phase_moments(u).order == 2 * n);
    CHECK(linear_phase_moments(u).center[0] == Complex(0.5));
  }
}

TEST_CASE("Haar pair is a partition of unity") {
  for (int j = 0; j <= 2; ++j)
    for (int k = -1; k <= 1; ++k) {
      const auto [u, v] = haar_pair(j, k);
      CHECK(partition_residual(u, v) == 0.0);
    }
}

TEST_CASE("complex symmetric pair for n = 3") {
  const auto p = complex_symmetric_pair(3);
  CHECK(p.T == Poly1Real{Rational(0), Rational(0), Rational(40, 64), Rational(15, 64), Rational(9, 64)});
  const double s15 = std::sqrt(15.0);
  const Complex c1(60, 18 * s15), c2(25, 6 * s15);
  const Filter1D v_expected(-2, {Complex(3) / 256.0, -c2 / 256.0, c1 / 256.0, -c1 / 256.0, c2 / 256.0, Complex(-3) / 256.0});
  CHECK(max_abs_diff(p.v, v_expected) < 1e-12);
  CHECK(symmetry_deviation_1d(p.v, 1, -1) < 1e-14);
  CHECK(partition_residual(to_float(p.u), p.v) < 1e-12);
}

TEST_CASE("complex symmetric pair fails for even n") {
  for (int n : {2, 4}) {
    try {
      complex_symmetric_pair(n);
      FAIL("expected OddRealRoot");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OddRealRoot);
    }
  }
  CHECK_NOTHROW(complex_symmetric_pair(1));
  CHECK_NOTHROW(complex_symmetric_pair(5));
}

TEST_CASE("canonical partner relation") {
  std::mt19937 rng(5);
  const auto h = test::random_filter1d(rng, -2, 5);
  for (int gamma : {1, -1, 3}) {
    const auto b = canonical_1d(h, gamma);
    for (double w : {0.3, -1.2}) {
      const Complex rhs = std::polar(1.0, -gamma * w) * std::conj(eval(h, w + std::numbers::pi));
      CHECK(std::abs(eval(b, w) - rhs) < 1e-12);
    }
  }
  CHECK_THROWS_AS(canonical_1d(h, 2), Error);
}

TEST_CASE("double canonical bank from a^I_2") {
  const Filter1D a = to_float(interpolatory(2));
  const auto bank = double_canonical_1d(a);
  REQUIRE(bank.size() == 4);
  CHECK(tight_residual_1d(bank) < 1e-12);
  // b2^(w) = (u^(2w) + e^{-iw} conj(u^(2w)))/2 with u taps (sqrt2/32)(t0, t1, t2, t3) on [-1, 2]
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  const double t0 = 2 - s3, t1 = -6 + s3, t2 = 6 + s3, t3 = -2 - s3;
  const double f = s2 / 64;
  const Filter1D b2(-3, {Complex(f * t3), Complex(f * t0), Complex(f * t2), Complex(f * t1), Complex(f * t1),
                          Complex(f * t2), Complex(f * t0), Complex(f * t3)});
  CHECK(max_abs_diff(bank[2], b2) < 1e-12);
  // b3^(w) = e^{-iw} conj(b2^(w + pi)).
  const Filter1D b3(-3, {Complex(f * t3), Complex(-f * t0), Complex(f * t2), Complex(-f * t1), Complex(f * t1),
                          Complex(-f * t2), Complex(f * t0), Complex(-f * t3)});
  CHECK(max_abs_diff(bank[3], b3) < 1e-12);
  CHECK(symmetry_deviation_1d(bank[1], 2, 1) < 1e-14);
}

TEST_CASE("double canonical bank from the six-tap filter") {
  const Filter1D a = to_float(six_tap_lowpass());
  const auto bank = double_canonical_1d(a);
  CHECK(tight_residual_1d(bank) < 1e-12);
  const double f = std::sqrt(15.0) / 64;
  const Filter1D b2(-2, {Complex(-f), Complex(-f), Complex(2 * f), Complex(2 * f), Complex(-f), Complex(-f)});
  const Filter1D b3(-2, {Complex(f), Complex(-f), Complex(-2 * f), Complex(2 * f), Complex(f), Complex(-f)});
  CHECK(max_abs_diff(bank[2], b2) < 1e-12);
  CHECK(max_abs_diff(bank[3], b3) < 1e-12);
  CHECK(vanishing_moments(bank[1]) == 3);
  CHECK(vanishing_moments(bank[2]) == 2);
  CHECK(vanishing_moments(bank[3]) == 3);
  CHECK(sum_rules(a) == 3);
  CHECK(linear_phase_moments(a).order == 4);
}

TEST_CASE("complement split of the six-tap filter") {
  const Filter1D a = to_float(six_tap_lowpass());
  const Filter1D u0 = complement_factor(a);
  CHECK(u0.support_min() == -2);
  CHECK(u0.support_max() == 3);
  const auto [u1, u2] = partition_split(u0);
  CHECK(symmetry_deviation_1d(u1, 1, 1) < 1e-14);
  CHECK(symmetry_deviation_1d(u2, 1, -1) < 1e-14);
  const Filter1D p = mul(a, adjoint(a)) + mul(u1, adjoint(u1)) + mul(u2, adjoint(u2)) - Filter1D::delta();
  CHECK(max_abs_coeff(p) < 1e-12);
  CHECK(vanishing_moments(u1) == 2);
  CHECK(vanishing_moments(u2) == 3);
}

TEST_CASE("complement split of a^I_2") {
  const Filter1D a = to_float(interpolatory(2));
  const auto [u1, u2] = partition_split(complement_factor(a));
  CHECK(u1.support_min() == -3);
  CHECK(u1.support_max() == 4);
  CHECK(symmetry_deviation_1d(u1, 1, 1) < 1e-14);
  CHECK(symmetry_deviation_1d(u2, 1, -1) < 1e-14);
}
