#pragma once

#include "qfk/scalar.hpp"

#include <array>
#include <string>
#include <vector>

namespace qfk {

using Int2 = std::array<int, 2>;
using Mat2 = std::array<std::array<int, 2>, 2>;  // m[row][col]

/// Point with rational coordinates, used for coset representatives and symmetry centers.
using QPoint2 = std::array<Rational, 2>;

inline Int2 mat_apply(const Mat2& m, const Int2& k) {
  return {m[0][0] * k[0] + m[0][1] * k[1], m[1][0] * k[0] + m[1][1] * k[1]};
}
inline Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}
inline int mat_det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
inline Mat2 transpose(const Mat2& m) { return {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}}; }
inline Mat2 identity2() { return {{{1, 0}, {0, 1}}}; }

/// Integer expanding dilation matrix in two dimensions.
class DilationSpec {
 public:
  DilationSpec() : DilationSpec(quincunx_sqrt2()) {}
  DilationSpec(const Mat2& m, std::string name = "custom");

  static DilationSpec quincunx_sqrt2();  // [[1,1],[1,-1]]
  static DilationSpec quincunx_n();      // [[1,-1],[1,1]]
  static DilationSpec dyadic2();         // 2I
  static DilationSpec by_name(const std::string& name);

  const Mat2& matrix() const { return m_; }
  const std::string& name() const { return name_; }
  int det() const { return mat_det(m_); }
  int abs_det() const { return det() < 0 ? -det() : det(); }

  /// Omega_M = (M^T)^{-1} Z^2 intersected with [0,1)^2; the first element is the origin.
  const std::vector<QPoint2>& coset_reps() const { return cosets_; }

  /// True if k lies in M Z^2.
  bool in_lattice(const Int2& k) const;
  /// Solves M j = k; returns false if j is not integral.
  bool solve(const Int2& k, Int2& j) const;

 private:
  Mat2 m_;
  std::string name_;
  std::vector<QPoint2> cosets_;
};

/// e^{-2 pi i xi.k} as an exact or floating scalar.  Exact mode requires 4 xi.k to be an integer.
template <class S>
S character_phase(const QPoint2& xi, const Int2& k);

/// One-dimensional analogue for xi in [0,1).
template <class S>
S character_phase_1d(const Rational& xi, int k);

template <>
Complex character_phase<Complex>(const QPoint2& xi, const Int2& k);
template <>
QComplex character_phase<QComplex>(const QPoint2& xi, const Int2& k);
template <>
Complex character_phase_1d<Complex>(const Rational& xi, int k);
template <>
QComplex character_phase_1d<QComplex>(const Rational& xi, int k);

}  // namespace qfk
