#pragma once

#include "qfk/filter.hpp"

#include <vector>

namespace qfk {

/// Which spectral factor fejer_riesz returns.
enum class FactorPhase {
  /// All non-circle roots of sum_k q(k) z^k (z = e^{-iw}) lie in the open unit disk.  Gives the
  /// Daubechies filter a^D_2 = ((1-sqrt3), (3-sqrt3), (3+sqrt3), (1+sqrt3))/8 on [-1, 2].
  MatchPaper,
  /// The conjugate reflection of MatchPaper: q'(k) = conj(q(N - k)) on the same support.
  Conjugate,
};

/// Which member of each complex-conjugate root pair goes into Q for real-line factorization.
enum class RootChoice {
  /// Roots with negative imaginary part, i.e. linear factors x + w with Im w > 0.  This is the
  /// choice that reproduces Q(x) = (3/8) x (x + (5 + 3i sqrt15)/6).
  NegativeImag,
  PositiveImag,
};

/// Roots of sum_j c[j] x^j via companion-matrix eigenvalues followed by Newton polishing.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

/// Evaluates sum_j c[j] x^j.
Complex poly_eval(const std::vector<Complex>& coeffs, Complex x);

/// Product of two polynomials given by ascending coefficients.
std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Returns q with |q^(w)|^2 = t^(w).  t must be Hermitian and nonnegative on the circle.
/// The result has N+1 taps, N = max |k| with t(k) != 0, starting at index -floor(N/2); its
/// largest-magnitude coefficient is real and positive.
Filter1D fejer_riesz(const Filter1D& t, FactorPhase phase = FactorPhase::MatchPaper);

/// Returns complex Q with |Q(x)|^2 = T(x) for real x.  T is given by ascending real
/// coefficients and must be nonnegative on the real line.
std::vector<Complex> abs_square_factor_realline(const std::vector<double>& T,
                                                RootChoice choice = RootChoice::NegativeImag);

/// Minimum of the real part of t^ over an equispaced grid.
double trig_grid_min(const Filter1D& t, int points = 4096);

}  // namespace qfk
