#include "doctest.h"
#include "qfk/analysis.hpp"
#include "qfk/construct.hpp"
#include "qfk/errors.hpp"
#include "qfk/filters1d.hpp"
#include "qfk/transform.hpp"

#include <random>

using namespace qfk;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

ImageGrid random_image(int w, int h, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(-1, 1);
  ImageGrid img(w, h);
  for (auto& x : img.samples) x = d(gen);
  return img;
}

FilterBank haar_bank() {
  const auto [u, v] = haar_pair(0, 0);
  return to_float(double_canonical_from_uv(u, v));
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("lattice frames index one period") {
  const auto f = LatticeFrame::from_basis({{{4, 2}, {4, -2}}});  // columns (4, 4) and (2, -2)
  CHECK(f.size() == 16);
  for (long i = 0; i < f.size(); ++i) CHECK(f.index(f.point(i)) == i);
  // Lattice translates share an index.
  for (const Int2 k : {Int2{3, -7}, Int2{-1, 5}, Int2{0, 0}}) {
    CHECK(f.index(k) == f.index({k[0] + 4, k[1] + 4}));
    CHECK(f.index(k) == f.index({k[0] - 2, k[1] + 2}));
  }
}

TEST_CASE("Haar bank on a 2 x 2 image matches direct summation") {
  const auto bank = haar_bank();
  ImageGrid img(2, 2);
  img.at(0, 0) = 1;
  img.at(0, 1) = 2;
  img.at(1, 0) = 3;
  img.at(1, 1) = 4;
  const auto pyr = analyze(bank, img, 1);
  REQUIRE(pyr.levels.size() == 1);
  const auto& fr = pyr.levels[0].frame;
  CHECK(fr.size() == 2);
  const Mat2& M = bank.dilation.matrix();
  for (long idx = 0; idx < fr.size(); ++idx) {
    const Int2 k = fr.point(idx);
    const Int2 x = mat_apply(M, k);
    for (size_t l = 0; l < bank.filters.size(); ++l) {
      Complex direct{};
      for (int n1 = -4; n1 < 6; ++n1)
        for (int n2 = -4; n2 < 6; ++n2) {
          const Complex c = img.at(((n1 % 2) + 2) % 2, ((n2 % 2) + 2) % 2);
          // The window covers every tap once, so this is the periodic sum.
          direct += c * std::conj(bank.filters[l].at(n1 - x[0], n2 - x[1]));
        }
      const Complex got = l == 0 ? pyr.low[static_cast<size_t>(idx)] : pyr.levels[0].high[l - 1][static_cast<size_t>(idx)];
      CHECK(std::abs(got - direct) < 1e-14);
    }
  }
  // The low band averages the quincunx cosets: 1/4 (c00 + c01 + c10 + c11) on the 2 x 2 torus.
  CHECK(std::abs(pyr.low[0] - Complex(2.5)) < 1e-14);
  CHECK(frame_energy_residual(pyr, img) < 1e-12);
  CHECK(max_abs_error(synthesize(bank, pyr), img) < 1e-14);
}

TEST_CASE("constant images have vanishing high bands") {
  ImageGrid img(32, 32);
  for (auto& x : img.samples) x = 3.0;
  for (const auto& bank : {thm22_bank(2), complex_dc_bank(3), haar_bank()}) {
    const auto pyr = analyze(bank, img, 4);
    for (const auto& lv : pyr.levels)
      for (const auto& b : lv.high) CHECK(max_abs(b) < 1e-12);
    auto zeroed = pyr;
    for (auto& lv : zeroed.levels)
      for (auto& b : lv.high) std::fill(b.begin(), b.end(), Complex{});
    CHECK(max_abs_error(synthesize(bank, zeroed), img) < 1e-12);
  }
}

TEST_CASE("perfect reconstruction and energy on random data") {
  const auto img = random_image(64, 64, 7);
  const auto bank = thm22_bank(2);
  const auto pyr = analyze(bank, img, 4);
  CHECK(pyr.levels.size() == 4);
  CHECK(std::abs(pyr.redundancy() - (3.0 * 15.0 / 16.0 + 1.0 / 16.0)) < 1e-12);
  CHECK(max_abs_error(synthesize(bank, pyr), img) < 1e-10);
  CHECK(frame_energy_residual(pyr, img) < 1e-10);
  CHECK(frame_energy_check(haar_bank(), random_image(16, 8, 3), 3) < 1e-12);
}

TEST_CASE("complex bank keeps real data real") {
  const auto img = random_image(64, 64, 11);
  const auto bank = complex_dc_bank(3);
  const auto rec = synthesize(bank, analyze(bank, img, 4));
  double im = 0;
  for (const auto& x : rec.samples) im = std::max(im, std::abs(x.imag()));
  CHECK(im < 1e-10);
  CHECK(max_abs_error(rec, img) < 1e-10);
}

TEST_CASE("reconstruction follows tightness") {
  const auto img = random_image(32, 32, 5);
  for (int n = 1; n <= 3; ++n) {
    const auto bank = thm22_bank(n);
    REQUIRE(tight_residual(bank) <= 1e-10);
    CHECK(max_abs_error(synthesize(bank, analyze(bank, img, 2)), img) <= 1e-9);
  }
  auto broken = thm22_bank(2);
  broken.filters.pop_back();
  CHECK(max_abs_error(synthesize(broken, analyze(broken, img, 1)), img) >= 1e-3);
  CHECK(frame_energy_check(broken, img, 1) > 1e-2);
}

TEST_CASE("shifts by the dilation lattice shift the first level") {
  const auto img = random_image(16, 16, 2);
  const auto bank = thm22_bank(2);
  const Mat2& M = bank.dilation.matrix();
  const Int2 z{1, 2};
  const Int2 s = mat_apply(M, z);
  ImageGrid shifted(16, 16);
  for (int n1 = 0; n1 < 16; ++n1)
    for (int n2 = 0; n2 < 16; ++n2) shifted.at(((n1 + s[0]) % 16 + 16) % 16, ((n2 + s[1]) % 16 + 16) % 16) = img.at(n1, n2);
  const auto p0 = analyze(bank, img, 1), p1 = analyze(bank, shifted, 1);
  const auto& fr = p0.levels[0].frame;
  for (long idx = 0; idx < fr.size(); ++idx) {
    const Int2 k = fr.point(idx);
    const long moved = fr.index({k[0] + z[0], k[1] + z[1]});
    for (size_t l = 0; l < p0.levels[0].high.size(); ++l)
      CHECK(std::abs(p1.levels[0].high[l][static_cast<size_t>(moved)] - p0.levels[0].high[l][static_cast<size_t>(idx)]) <
            1e-13);
  }
}

TEST_CASE("the second quincunx matrix also reconstructs") {
  const auto [u, v] = haar_pair(1, 0);
  const auto bank = to_float(general_bank(u, v, DilationSpec::quincunx_n(), Int2{1, 1}, Int2{-1, 1}, Int2{0, 1},
                                          Int2{1, 0}, QPoint2{Rational(1, 2), Rational(1, 2)}));
  const auto img = random_image(8, 12, 9);
  CHECK(max_abs_error(synthesize(bank, analyze(bank, img, 3)), img) < 1e-12);
}

TEST_CASE("dimension and metadata errors") {
  const auto bank = thm22_bank(1);
  CHECK(kind_of([&] { analyze(bank, ImageGrid(7, 8), 1); }) == ErrorKind::BadDimensions);
  CHECK(kind_of([&] { analyze(bank, ImageGrid(6, 8), 3); }) == ErrorKind::BadDimensions);
  CHECK(kind_of([&] { analyze(bank, ImageGrid(8, 8), 0); }) == ErrorKind::BadDimensions);
  CHECK_NOTHROW(analyze(bank, ImageGrid(6, 10), 2));
  const auto pyr = analyze(bank, random_image(8, 8, 1), 2);
  auto bad = pyr;
  bad.levels[1].high[0].pop_back();
  CHECK(kind_of([&] { synthesize(bank, bad); }) == ErrorKind::MetadataMismatch);
  auto other = bank;
  other.dilation = DilationSpec::quincunx_n();
  CHECK(kind_of([&] { synthesize(other, pyr); }) == ErrorKind::MetadataMismatch);
  other = bank;
  other.filters.pop_back();
  CHECK(kind_of([&] { synthesize(other, pyr); }) == ErrorKind::MetadataMismatch);
}
