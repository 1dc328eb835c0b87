#include "qfk/transform.hpp"

#include "qfk/errors.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

namespace qfk {

namespace {

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 with x a + y b = g.
long ext_gcd(long a, long b, long& x, long& y) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const long qt = a / b;
    long t = a - qt * b;
    a = b;
    b = t;
    t = x0 - qt * x1;
    x0 = x1;
    x1 = t;
    t = y0 - qt * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

struct Tap {
  Int2 s;
  Complex v;
};

std::vector<Tap> taps(const Filter2D& f) {
  std::vector<Tap> t;
  f.for_each_nonzero([&](const Int2& k, const Complex& v) { t.push_back({k, v}); });
  return t;
}

/// Periodicity lattices P_j = M^{-j} diag(height, width) for j = 0..levels.
std::vector<LatticeFrame> level_frames(const Mat2& M, int width, int height, int levels) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0)
    fail(ErrorKind::BadDimensions, "image sides must be even and positive, got " + std::to_string(width) + " x " +
                                       std::to_string(height));
  if (levels < 1) fail(ErrorKind::BadDimensions, "at least one level is required");
  const long det = mat_det(M);
  if (det == 0) fail(ErrorKind::BadDilation, "singular dilation");
  const long adj[2][2] = {{M[1][1], -M[0][1]}, {-M[1][0], M[0][0]}};
  long P[2][2] = {{height, 0}, {0, width}};
  std::vector<LatticeFrame> out;
  out.push_back(LatticeFrame::from_basis({{{height, 0}, {0, width}}}));
  for (int j = 1; j <= levels; ++j) {
    long Q[2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const long num = adj[a][0] * P[0][b] + adj[a][1] * P[1][b];
        if (num % det != 0)
          fail(ErrorKind::BadDimensions, std::to_string(height) + " x " + std::to_string(width) +
                                             " grid does not support " + std::to_string(levels) + " levels");
        Q[a][b] = num / det;
      }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) P[a][b] = Q[a][b];
    out.push_back(LatticeFrame::from_basis(
        {{{static_cast<int>(P[0][0]), static_cast<int>(P[0][1])}, {static_cast<int>(P[1][0]), static_cast<int>(P[1][1])}}}));
  }
  return out;
}

/// v(k) = sum_s c(Mk + s) conj(b(s)) on the coarser frame.
std::vector<Complex> down(const std::vector<Complex>& c, const LatticeFrame& fine, const LatticeFrame& coarse,
                          const Mat2& M, const std::vector<Tap>& b) {
  std::vector<Complex> v(static_cast<size_t>(coarse.size()));
  for (long idx = 0; idx < coarse.size(); ++idx) {
    const Int2 x = mat_apply(M, coarse.point(idx));
    Complex acc{};
    for (const auto& t : b) acc += c[static_cast<size_t>(fine.index({x[0] + t.s[0], x[1] + t.s[1]}))] * std::conj(t.v);
    v[static_cast<size_t>(idx)] = acc;
  }
  return v;
}

/// out(Mk + s) += scale v(k) b(s).
void up_add(std::vector<Complex>& out, const std::vector<Complex>& v, const LatticeFrame& fine,
            const LatticeFrame& coarse, const Mat2& M, const std::vector<Tap>& b, double scale) {
  for (long idx = 0; idx < coarse.size(); ++idx) {
    const Complex x = scale * v[static_cast<size_t>(idx)];
    if (x == Complex{}) continue;
    const Int2 m = mat_apply(M, coarse.point(idx));
    for (const auto& t : b) out[static_cast<size_t>(fine.index({m[0] + t.s[0], m[1] + t.s[1]}))] += x * t.v;
  }
}

double energy(const std::vector<Complex>& v) {
  double e = 0;
  for (const auto& x : v) e += std::norm(x);
  return e;
}

void check_bank(const FilterBank& bank) {
  if (bank.filters.size() < 2) fail(ErrorKind::InvalidArgument, "a bank needs a low-pass and at least one high-pass");
}

}  // namespace

LatticeFrame LatticeFrame::from_basis(const Mat2& c) {
  long x = 0, y = 0;
  const long a = c[0][0], b = c[1][0], cc = c[0][1], d = c[1][1];
  const long g = ext_gcd(a, cc, x, y);
  if (g == 0) fail(ErrorKind::InvalidArgument, "degenerate lattice basis");
  const long r = std::labs((cc / g) * b - (a / g) * d);
  if (r == 0) fail(ErrorKind::InvalidArgument, "degenerate lattice basis");
  LatticeFrame f;
  f.p = static_cast<int>(g);
  f.r = static_cast<int>(r);
  f.q = static_cast<int>(floor_mod(x * b + y * d, r));
  return f;
}

long LatticeFrame::index(const Int2& k) const {
  const long i = floor_mod(k[0], p);
  const long t = (k[0] - i) / p;
  const long j = floor_mod(k[1] - static_cast<long>(q) * t, r);
  return i * r + j;
}

Int2 LatticeFrame::point(long idx) const { return {static_cast<int>(idx / r), static_cast<int>(idx % r)}; }

double CoeffPyramid::redundancy() const {
  double n = static_cast<double>(low.size());
  for (const auto& lv : levels)
    for (const auto& b : lv.high) n += static_cast<double>(b.size());
  return n / (static_cast<double>(width) * height);
}

CoeffPyramid analyze(const FilterBank& bank, const ImageGrid& img, int levels) {
  check_bank(bank);
  if (static_cast<long>(img.samples.size()) != static_cast<long>(img.width) * img.height)
    fail(ErrorKind::BadDimensions, "sample count does not match the image size");
  const Mat2& M = bank.dilation.matrix();
  const auto frames = level_frames(M, img.width, img.height, levels);
  std::vector<std::vector<Tap>> b;
  for (const auto& f : bank.filters) b.push_back(taps(f));

  CoeffPyramid pyr;
  pyr.width = img.width;
  pyr.height = img.height;
  pyr.dilation = M;
  pyr.filter_count = static_cast<int>(bank.filters.size());
  std::vector<Complex> c = img.samples;
  for (int j = 0; j < levels; ++j) {
    CoeffLevel lv;
    lv.frame = frames[static_cast<size_t>(j + 1)];
    for (size_t l = 1; l < b.size(); ++l) lv.high.push_back(down(c, frames[static_cast<size_t>(j)], lv.frame, M, b[l]));
    c = down(c, frames[static_cast<size_t>(j)], lv.frame, M, b[0]);
    pyr.levels.push_back(std::move(lv));
  }
  pyr.low = std::move(c);
  return pyr;
}

ImageGrid synthesize(const FilterBank& bank, const CoeffPyramid& pyr) {
  check_bank(bank);
  const Mat2& M = bank.dilation.matrix();
  if (pyr.dilation != M) fail(ErrorKind::MetadataMismatch, "pyramid dilation differs from the bank's");
  if (pyr.filter_count != static_cast<int>(bank.filters.size()))
    fail(ErrorKind::MetadataMismatch, "pyramid has " + std::to_string(pyr.filter_count) + " filters, bank has " +
                                          std::to_string(bank.filters.size()));
  const int levels = static_cast<int>(pyr.levels.size());
  std::vector<LatticeFrame> frames;
  try {
    frames = level_frames(M, pyr.width, pyr.height, levels);
  } catch (const Error& e) {
    fail(ErrorKind::MetadataMismatch, e.what());
  }
  for (int j = 0; j < levels; ++j) {
    const auto& lv = pyr.levels[static_cast<size_t>(j)];
    if (!(lv.frame == frames[static_cast<size_t>(j + 1)]))
      fail(ErrorKind::MetadataMismatch, "level " + std::to_string(j + 1) + " frame does not match the image size");
    if (static_cast<int>(lv.high.size()) != pyr.filter_count - 1)
      fail(ErrorKind::MetadataMismatch, "level " + std::to_string(j + 1) + " has the wrong number of bands");
    for (const auto& band : lv.high)
      if (static_cast<long>(band.size()) != lv.frame.size())
        fail(ErrorKind::MetadataMismatch, "band size does not match its frame at level " + std::to_string(j + 1));
  }
  if (static_cast<long>(pyr.low.size()) != frames.back().size())
    fail(ErrorKind::MetadataMismatch, "low band size does not match its frame");

  std::vector<std::vector<Tap>> b;
  for (const auto& f : bank.filters) b.push_back(taps(f));
  const double scale = bank.dilation.abs_det();
  std::vector<Complex> c = pyr.low;
  for (int j = levels - 1; j >= 0; --j) {
    const auto& fine = frames[static_cast<size_t>(j)];
    const auto& coarse = frames[static_cast<size_t>(j + 1)];
    std::vector<Complex> out(static_cast<size_t>(fine.size()));
    up_add(out, c, fine, coarse, M, b[0], scale);
    const auto& lv = pyr.levels[static_cast<size_t>(j)];
    for (size_t l = 1; l < b.size(); ++l) up_add(out, lv.high[l - 1], fine, coarse, M, b[l], scale);
    c = std::move(out);
  }
  ImageGrid img;
  img.width = pyr.width;
  img.height = pyr.height;
  img.samples = std::move(c);
  return img;
}

double frame_energy_residual(const CoeffPyramid& pyr, const ImageGrid& img) {
  const double total = energy(img.samples);
  const double det = std::abs(mat_det(pyr.dilation));
  double e = 0, w = 1;
  for (const auto& lv : pyr.levels) {
    w *= det;
    for (const auto& band : lv.high) e += w * energy(band);
  }
  e += w * energy(pyr.low);
  if (total == 0) return e == 0 ? 0.0 : 1.0;
  return std::abs(e - total) / total;
}

double frame_energy_check(const FilterBank& bank, const ImageGrid& img, int levels) {
  return frame_energy_residual(analyze(bank, img, levels), img);
}

double max_abs_error(const ImageGrid& x, const ImageGrid& y) {
  if (x.width != y.width || x.height != y.height || x.samples.size() != y.samples.size())
    fail(ErrorKind::DimensionMismatch, "images differ in size");
  double m = 0;
  for (size_t i = 0; i < x.samples.size(); ++i) m = std::max(m, std::abs(x.samples[i] - y.samples[i]));
  return m;
}

}  // namespace qfk
