#pragma once

#include "qfk/construct.hpp"
#include "qfk/lattice.hpp"

#include <vector>

namespace qfk {

/// Periodic image on Z^2 / (height Z x width Z).  Sample (n1, n2) is row n1, column n2 and is stored
/// at samples[n1 * width + n2].
struct ImageGrid {
  int width = 0;
  int height = 0;
  std::vector<Complex> samples;

  ImageGrid() = default;
  ImageGrid(int w, int h) : width(w), height(h), samples(static_cast<size_t>(w) * h) {}
  Complex& at(int n1, int n2) { return samples[static_cast<size_t>(n1) * width + n2]; }
  Complex at(int n1, int n2) const { return samples[static_cast<size_t>(n1) * width + n2]; }
};

/// Index map for Z^2 modulo a full-rank lattice given in Hermite form by the columns (p, q) and
/// (0, r), p, r > 0, 0 <= q < r.  The class of k is stored at i * r + j with i = k1 mod p and
/// j = (k2 - q (k1 - i) / p) mod r, so a rectangular p x r array holds one period.
struct LatticeFrame {
  int p = 0, q = 0, r = 0;

  static LatticeFrame from_basis(const Mat2& columns);
  long size() const { return static_cast<long>(p) * r; }
  long index(const Int2& k) const;
  Int2 point(long idx) const;
  bool operator==(const LatticeFrame&) const = default;
};

struct CoeffLevel {
  LatticeFrame frame;                      // periodicity of the coefficients on this level
  std::vector<std::vector<Complex>> high;  // one band per high-pass filter, indexed by frame
};

/// levels[j] holds the high bands after j + 1 analysis steps; low is the low-pass band of the last.
struct CoeffPyramid {
  int width = 0, height = 0;
  Mat2 dilation{};
  int filter_count = 0;  // low-pass plus high-pass filters of the bank
  std::vector<CoeffLevel> levels;
  std::vector<Complex> low;

  /// Stored coefficients divided by the number of input samples.
  double redundancy() const;
};

/// v_l(k) = sum_n c(n) conj(b_l(n - Mk)) with periodic indexing, recursing on the low band.
/// Throws BadDimensions unless levels >= 1 and every M^{-j} (height Z x width Z), j <= levels,
/// is contained in Z^2; for the quincunx matrices that is 2^{ceil(levels/2)} dividing both sides.
CoeffPyramid analyze(const FilterBank& bank, const ImageGrid& img, int levels);

/// c(n) = |det M| sum_l sum_k v_l(k) b_l(n - Mk), recursively.  Throws MetadataMismatch when the
/// pyramid does not fit the bank (dilation, filter count, band sizes).
ImageGrid synthesize(const FilterBank& bank, const CoeffPyramid& pyr);

/// |E - ||c||^2| / ||c||^2 with E = sum_j |det M|^j sum_{l >= 1} ||v_{l,j}||^2 + |det M|^J ||v_{0,J}||^2,
/// the discrete tight-frame energy identity.  Zero images give 0.
double frame_energy_check(const FilterBank& bank, const ImageGrid& img, int levels);
double frame_energy_residual(const CoeffPyramid& pyr, const ImageGrid& img);

/// Largest |x - y| over the samples; throws DimensionMismatch on different sizes.
double max_abs_error(const ImageGrid& x, const ImageGrid& y);

}  // namespace qfk
