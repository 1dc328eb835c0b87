#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace qfk {

using Rational = boost::multiprecision::mpq_rational;
using Complex = std::complex<double>;

/// Exact complex number with rational real and imaginary parts.
struct QComplex {
  Rational re;
  Rational im;

  QComplex() = default;
  QComplex(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  QComplex(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  QComplex(int v) : re(v) {}   // NOLINT(google-explicit-constructor)

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
};

inline QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
inline QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
inline QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
inline QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
inline bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

inline QComplex conj(const QComplex& z) { return {z.re, -z.im}; }
inline Complex conj(const Complex& z) { return std::conj(z); }

inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(const QComplex& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const QComplex& z) { return std::abs(to_complex(z)); }

inline bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline bool is_zero(const QComplex& z) { return z.re == 0 && z.im == 0; }

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex from_rational(const Rational& r) { return {r.convert_to<double>(), 0.0}; }
  static Complex from_qcomplex(const QComplex& z) { return to_complex(z); }
};

template <>
struct ScalarTraits<QComplex> {
  static constexpr bool exact = true;
  static QComplex from_rational(const Rational& r) { return QComplex(r); }
  static QComplex from_qcomplex(const QComplex& z) { return z; }
};

template <class S>
inline S from_rational(const Rational& r) {
  return ScalarTraits<S>::from_rational(r);
}

template <class S>
inline S from_int(long v) {
  return ScalarTraits<S>::from_rational(Rational(v));
}

/// Integer power as a scalar, used for moments k^mu.
template <class S>
inline S int_pow(long base, int e) {
  if constexpr (ScalarTraits<S>::exact) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return QComplex(r);
  } else {
    return Complex(std::pow(static_cast<double>(base), e), 0.0);
  }
}

std::string to_string(const Rational& r);
std::string to_string(const QComplex& z);

}  // namespace qfk
