#include "qfk/lattice.hpp"

#include "qfk/errors.hpp"

#include <cmath>
#include <numbers>

namespace qfk {

namespace {

Rational frac_part(const Rational& r) {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  Rational f = r - Rational(numerator(r) / denominator(r));
  if (f < 0) f += 1;
  if (f >= 1) f -= 1;
  return f;
}

}  // namespace

DilationSpec::DilationSpec(const Mat2& m, std::string name) : m_(m), name_(std::move(name)) {
  int d = mat_det(m_);
  if (d == 0) fail(ErrorKind::BadDilation, "dilation matrix is singular");
  // Expanding: every eigenvalue has modulus > 1.
  double tr = m_[0][0] + m_[1][1];
  double disc = tr * tr - 4.0 * d;
  if (disc >= 0) {
    double l1 = std::abs((tr + std::sqrt(disc)) / 2), l2 = std::abs((tr - std::sqrt(disc)) / 2);
    if (l1 <= 1.0 || l2 <= 1.0) fail(ErrorKind::BadDilation, "dilation matrix is not expanding");
  } else if (std::sqrt(static_cast<double>(d)) <= 1.0) {
    fail(ErrorKind::BadDilation, "dilation matrix is not expanding");
  }
  // Omega_M: points (M^T)^{-1} j in [0,1)^2.  (M^T)^{-1} = adj(M^T)/det.
  Mat2 mt = transpose(m_);
  int ad = std::abs(d);
  cosets_.push_back({Rational(0), Rational(0)});
  for (int j1 = -2 * ad; j1 <= 2 * ad; ++j1)
    for (int j2 = -2 * ad; j2 <= 2 * ad; ++j2) {
      // x = (M^T)^{-1} j
      Rational x1 = Rational(mt[1][1] * j1 - mt[0][1] * j2) / d;
      Rational x2 = Rational(-mt[1][0] * j1 + mt[0][0] * j2) / d;
      if (x1 < 0 || x1 >= 1 || x2 < 0 || x2 >= 1) continue;
      QPoint2 p{x1, x2};
      bool seen = false;
      for (const auto& q : cosets_) seen = seen || (q == p);
      if (!seen) cosets_.push_back(p);
    }
  if (static_cast<int>(cosets_.size()) != ad) fail(ErrorKind::BadDilation, "coset enumeration failed");
}

DilationSpec DilationSpec::quincunx_sqrt2() { return DilationSpec({{{1, 1}, {1, -1}}}, "M_sqrt2"); }
DilationSpec DilationSpec::quincunx_n() { return DilationSpec({{{1, -1}, {1, 1}}}, "N_sqrt2"); }
DilationSpec DilationSpec::dyadic2() { return DilationSpec({{{2, 0}, {0, 2}}}, "2I"); }

DilationSpec DilationSpec::by_name(const std::string& name) {
  if (name == "M_sqrt2" || name == "quincunx") return quincunx_sqrt2();
  if (name == "N_sqrt2") return quincunx_n();
  if (name == "2I" || name == "dyadic") return dyadic2();
  fail(ErrorKind::InvalidArgument, "unknown dilation '" + name + "'");
}

bool DilationSpec::solve(const Int2& k, Int2& j) const {
  int d = det();
  int n1 = m_[1][1] * k[0] - m_[0][1] * k[1];
  int n2 = -m_[1][0] * k[0] + m_[0][0] * k[1];
  if (n1 % d != 0 || n2 % d != 0) return false;
  j = {n1 / d, n2 / d};
  return true;
}

bool DilationSpec::in_lattice(const Int2& k) const {
  Int2 j;
  return solve(k, j);
}

template <>
Complex character_phase<Complex>(const QPoint2& xi, const Int2& k) {
  Rational r = frac_part(xi[0] * k[0] + xi[1] * k[1]);
  if (r == 0) return {1.0, 0.0};
  if (r == Rational(1, 2)) return {-1.0, 0.0};
  return std::polar(1.0, -2.0 * std::numbers::pi * r.convert_to<double>());
}

template <>
QComplex character_phase<QComplex>(const QPoint2& xi, const Int2& k) {
  Rational r = frac_part(xi[0] * k[0] + xi[1] * k[1]);
  if (r == 0) return QComplex(1);
  if (r == Rational(1, 2)) return QComplex(-1);
  if (r == Rational(1, 4)) return QComplex(Rational(0), Rational(-1));
  if (r == Rational(3, 4)) return QComplex(Rational(0), Rational(1));
  fail(ErrorKind::InvalidArgument, "phase is not a fourth root of unity; use float mode");
}

template <>
Complex character_phase_1d<Complex>(const Rational& xi, int k) {
  return character_phase<Complex>({xi, Rational(0)}, {k, 0});
}

template <>
QComplex character_phase_1d<QComplex>(const Rational& xi, int k) {
  return character_phase<QComplex>({xi, Rational(0)}, {k, 0});
}

}  // namespace qfk
