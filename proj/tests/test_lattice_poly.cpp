#include "doctest.h"
#include "qfk/errors.hpp"
#include "qfk/filter.hpp"
#include "qfk/lattice.hpp"
#include "support.hpp"

using namespace qfk;
using qfk::test::random_filter1d;
using qfk::test::random_filter2d;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("quincunx dilations have two cosets") {
  for (const auto& M : {DilationSpec::quincunx_sqrt2(), DilationSpec::quincunx_n()}) {
    CHECK(M.abs_det() == 2);
    REQUIRE(M.coset_reps().size() == 2);
    CHECK(M.coset_reps()[0] == QPoint2{Rational(0), Rational(0)});
    CHECK(M.coset_reps()[1] == QPoint2{Rational(1, 2), Rational(1, 2)});
    CHECK(M.in_lattice({1, 1}));
    CHECK(M.in_lattice({2, 0}));
    CHECK_FALSE(M.in_lattice({1, 0}));
  }
  const auto D = DilationSpec::dyadic2();
  CHECK(D.coset_reps().size() == 4);
  CHECK(DilationSpec::by_name("M_sqrt2").matrix() == DilationSpec::quincunx_sqrt2().matrix());
}

TEST_CASE("solve inverts the dilation on its lattice") {
  const auto M = DilationSpec::quincunx_sqrt2();
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      Int2 j;
      const bool ok = M.solve({a, b}, j);
      CHECK(ok == ((a + b) % 2 == 0));
      if (ok) CHECK(mat_apply(M.matrix(), j) == Int2{a, b});
    }
}

TEST_CASE("bad dilations are rejected") {
  CHECK_THROWS_AS(DilationSpec(Mat2{{{1, 1}, {1, 1}}}), Error);
  CHECK_THROWS_AS(DilationSpec(Mat2{{{1, 0}, {0, 2}}}), Error);
  try {
    DilationSpec(Mat2{{{2, 0}, {0, 0}}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadDilation);
  }
  CHECK_THROWS_AS(DilationSpec::by_name("bogus"), Error);
}

TEST_CASE("character phases agree between exact and float modes") {
  const QPoint2 xi{Rational(1, 2), Rational(1, 2)};
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      const Complex f = character_phase<Complex>(xi, {a, b});
      const QComplex q = character_phase<QComplex>(xi, {a, b});
      CHECK(std::abs(f - to_complex(q)) < 1e-15);
      CHECK(std::abs(f - std::polar(1.0, -kPi * (a + b))) < 1e-15);
    }
  const QPoint2 quarter{Rational(1, 4), Rational(0)};
  CHECK(character_phase<QComplex>(quarter, {1, 0}) == QComplex(Rational(0), Rational(-1)));
}

TEST_CASE("convolution multiplies symbols") {
  std::mt19937 rng(7);
  const auto f = random_filter1d(rng, -2, 5), g = random_filter1d(rng, 1, 4);
  const auto h = mul(f, g);
  for (double w : {0.1, 1.3, -2.7}) CHECK(std::abs(eval(h, w) - eval(f, w) * eval(g, w)) < 1e-12);
  const auto F = random_filter2d(rng, {-1, 0}, 3, 2), G = random_filter2d(rng, {0, -2}, 2, 4);
  const auto H = mul(F, G);
  CHECK(std::abs(eval(H, 0.4, -1.1) - eval(F, 0.4, -1.1) * eval(G, 0.4, -1.1)) < 1e-12);
}

TEST_CASE("adjoint conjugates the symbol") {
  std::mt19937 rng(8);
  const auto f = random_filter1d(rng, -1, 4);
  for (double w : {0.3, 2.2}) CHECK(std::abs(eval(adjoint(f), w) - std::conj(eval(f, w))) < 1e-12);
  const auto F = random_filter2d(rng, {-1, 2}, 3, 3);
  CHECK(std::abs(eval(adjoint(F), 0.5, 0.9) - std::conj(eval(F, 0.5, 0.9))) < 1e-12);
}

TEST_CASE("modulation translates the symbol") {
  std::mt19937 rng(9);
  const auto F = random_filter2d(rng, {-2, -1}, 4, 3);
  const QPoint2 xi{Rational(1, 2), Rational(1, 2)};
  const auto G = modulate(F, xi);
  CHECK(std::abs(eval(G, 0.2, 0.7) - eval(F, 0.2 + kPi, 0.7 + kPi)) < 1e-12);
  CHECK(max_abs_diff(G, modulate_pi(F)) < 1e-15);
  const auto f = random_filter1d(rng, -3, 6);
  CHECK(std::abs(eval(modulate_pi(f), 0.4) - eval(f, 0.4 + kPi)) < 1e-12);
  CHECK(std::abs(eval(modulate(f, Rational(1, 4)), 0.4) - eval(f, 0.4 + kPi / 2)) < 1e-12);
}

TEST_CASE("half-argument product") {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 4; ++trial) {
    const auto f = random_filter1d(rng, -trial, 3 + trial);
    const auto v = half_arg_product(f, f);
    for (double w : {0.3, 1.7, -2.9})
      CHECK(std::abs(eval(v, w) - 2.0 * eval(f, w / 2) * eval(f, w / 2 + kPi)) < 1e-10);
  }
}

TEST_CASE("decimation and upsampling") {
  std::mt19937 rng(11);
  const auto f = random_filter1d(rng, -3, 7);
  const auto d = decimate_even(f + modulate_pi(f));
  for (double w : {0.2, 2.4}) CHECK(std::abs(eval(d, 2 * w) - (eval(f, w) + eval(f, w + kPi))) < 1e-12);
  const auto u = upsample(f, 2);
  CHECK(std::abs(eval(u, 0.3) - eval(f, 0.6)) < 1e-12);
  CHECK(u.support_min() == -6);
}

TEST_CASE("tensor products and shifts") {
  std::mt19937 rng(12);
  const auto f = random_filter1d(rng, -1, 3), g = random_filter1d(rng, 0, 4);
  const auto t = tensor(f, g);
  CHECK(std::abs(eval(t, 0.4, -0.8) - eval(f, 0.4) * eval(g, -0.8)) < 1e-12);
  const auto s = shift(t, Int2{2, -1});
  CHECK(std::abs(eval(s, 0.4, -0.8) - std::polar(1.0, -(2 * 0.4 + 0.8)) * eval(t, 0.4, -0.8)) < 1e-12);
}

TEST_CASE("exact arithmetic matches float arithmetic") {
  const ExactFilter1D f(-1, {QComplex(Rational(1, 3)), QComplex(Rational(2), Rational(-1, 5)), QComplex(Rational(-7, 2))});
  const ExactFilter1D g(2, {QComplex(Rational(1, 7), Rational(1)), QComplex(Rational(5, 11))});
  CHECK(max_abs_diff(to_float(mul(f, g)), mul(to_float(f), to_float(g))) < 1e-15);
  CHECK(max_abs_diff(to_float(adjoint(f)), adjoint(to_float(f))) < 1e-15);
  CHECK(mul(f, g) == mul(g, f));
  CHECK((f - f).empty());
}

TEST_CASE("zero borders are trimmed") {
  std::vector<std::pair<Int2, QComplex>> e{{{0, 0}, QComplex(Rational(1))}, {{3, 3}, QComplex(Rational(0))}};
  const auto F = ExactFilter2D::from_entries(e);
  CHECK(F.extent1() == 1);
  CHECK(F.extent2() == 1);
  CHECK(F.at(0, 0) == QComplex(Rational(1)));
  CHECK(F.at(5, 5) == QComplex(Rational(0)));
}
