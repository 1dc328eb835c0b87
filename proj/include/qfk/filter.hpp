#pragma once

#include "qfk/errors.hpp"
#include "qfk/lattice.hpp"
#include "qfk/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace qfk {

/// Finitely supported sequence on Z.  Stored coefficients are trimmed so that the first and last
/// are nonzero; the zero filter has no coefficients.  Symbol: f^(w) = sum_k f(k) e^{-ikw}.
template <class S>
class BasicFilter1D {
 public:
  using scalar_type = S;

  BasicFilter1D() = default;
  BasicFilter1D(int support_min, std::vector<S> coeffs) : min_(support_min), c_(std::move(coeffs)) {
    trim();
  }

  static BasicFilter1D delta(int k = 0) { return BasicFilter1D(k, {from_int<S>(1)}); }

  bool empty() const { return c_.empty(); }
  int support_min() const { return min_; }
  int support_max() const { return min_ + static_cast<int>(c_.size()) - 1; }
  int size() const { return static_cast<int>(c_.size()); }
  const std::vector<S>& coeffs() const { return c_; }

  S operator[](int k) const {
    if (k < min_ || k > support_max()) return S{};
    return c_[static_cast<size_t>(k - min_)];
  }

  /// Zeroes coefficients with magnitude at most tol and trims again.
  BasicFilter1D trimmed(double tol) const {
    std::vector<S> c = c_;
    for (auto& x : c)
      if (magnitude(x) <= tol) x = S{};
    return BasicFilter1D(min_, std::move(c));
  }

 private:
  void trim() {
    size_t lo = 0;
    while (lo < c_.size() && is_zero(c_[lo])) ++lo;
    size_t hi = c_.size();
    while (hi > lo && is_zero(c_[hi - 1])) --hi;
    if (lo == hi) {
      c_.clear();
      min_ = 0;
      return;
    }
    c_ = std::vector<S>(c_.begin() + static_cast<long>(lo), c_.begin() + static_cast<long>(hi));
    min_ += static_cast<int>(lo);
  }

  int min_ = 0;
  std::vector<S> c_;
};

/// Finitely supported sequence on Z^2 stored densely over its bounding box [min, max].
/// Symbol: f^(w) = sum_k f(k) e^{-ik.w}.
template <class S>
class BasicFilter2D {
 public:
  using scalar_type = S;

  BasicFilter2D() = default;
  /// data is row-major over k1 (outer) and k2 (inner); n1 x n2 entries.
  BasicFilter2D(Int2 support_min, int n1, int n2, std::vector<S> data)
      : min_(support_min), n1_(n1), n2_(n2), d_(std::move(data)) {
    if (static_cast<long>(d_.size()) != static_cast<long>(n1) * n2)
      fail(ErrorKind::InvalidArgument, "filter data size does not match its extent");
    trim();
  }

  static BasicFilter2D delta(Int2 k = {0, 0}) { return BasicFilter2D(k, 1, 1, {from_int<S>(1)}); }

  /// Builds a filter from (position, value) pairs; repeated positions accumulate.
  static BasicFilter2D from_entries(const std::vector<std::pair<Int2, S>>& entries) {
    if (entries.empty()) return {};
    Int2 lo = entries[0].first, hi = entries[0].first;
    for (const auto& [k, v] : entries) {
      lo = {std::min(lo[0], k[0]), std::min(lo[1], k[1])};
      hi = {std::max(hi[0], k[0]), std::max(hi[1], k[1])};
    }
    int n1 = hi[0] - lo[0] + 1, n2 = hi[1] - lo[1] + 1;
    std::vector<S> d(static_cast<size_t>(n1) * n2);
    for (const auto& [k, v] : entries) d[static_cast<size_t>((k[0] - lo[0]) * n2 + (k[1] - lo[1]))] += v;
    return BasicFilter2D(lo, n1, n2, std::move(d));
  }

  bool empty() const { return d_.empty(); }
  Int2 support_min() const { return min_; }
  Int2 support_max() const { return {min_[0] + n1_ - 1, min_[1] + n2_ - 1}; }
  int extent1() const { return n1_; }
  int extent2() const { return n2_; }
  const std::vector<S>& data() const { return d_; }

  S at(int k1, int k2) const {
    int i = k1 - min_[0], j = k2 - min_[1];
    if (i < 0 || j < 0 || i >= n1_ || j >= n2_) return S{};
    return d_[static_cast<size_t>(i * n2_ + j)];
  }
  S operator[](const Int2& k) const { return at(k[0], k[1]); }

  /// Calls fn(k, value) for every nonzero coefficient.
  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (int i = 0; i < n1_; ++i)
      for (int j = 0; j < n2_; ++j) {
        const S& v = d_[static_cast<size_t>(i * n2_ + j)];
        if (!is_zero(v)) fn(Int2{min_[0] + i, min_[1] + j}, v);
      }
  }

  BasicFilter2D trimmed(double tol) const {
    std::vector<S> d = d_;
    for (auto& x : d)
      if (magnitude(x) <= tol) x = S{};
    return BasicFilter2D(min_, n1_, n2_, std::move(d));
  }

 private:
  void trim() {
    auto row_zero = [&](int i) {
      for (int j = 0; j < n2_; ++j)
        if (!is_zero(d_[static_cast<size_t>(i * n2_ + j)])) return false;
      return true;
    };
    auto col_zero = [&](int j) {
      for (int i = 0; i < n1_; ++i)
        if (!is_zero(d_[static_cast<size_t>(i * n2_ + j)])) return false;
      return true;
    };
    int i0 = 0, i1 = n1_;
    while (i0 < i1 && row_zero(i0)) ++i0;
    while (i1 > i0 && row_zero(i1 - 1)) --i1;
    if (i0 == i1) {
      min_ = {0, 0};
      n1_ = n2_ = 0;
      d_.clear();
      return;
    }
    int j0 = 0, j1 = n2_;
    while (j0 < j1 && col_zero(j0)) ++j0;
    while (j1 > j0 && col_zero(j1 - 1)) --j1;
    if (i0 == 0 && i1 == n1_ && j0 == 0 && j1 == n2_) return;
    std::vector<S> d(static_cast<size_t>(i1 - i0) * (j1 - j0));
    for (int i = i0; i < i1; ++i)
      for (int j = j0; j < j1; ++j)
        d[static_cast<size_t>((i - i0) * (j1 - j0) + (j - j0))] = d_[static_cast<size_t>(i * n2_ + j)];
    min_ = {min_[0] + i0, min_[1] + j0};
    n1_ = i1 - i0;
    n2_ = j1 - j0;
    d_ = std::move(d);
  }

  Int2 min_{0, 0};
  int n1_ = 0;
  int n2_ = 0;
  std::vector<S> d_;
};

using Filter1D = BasicFilter1D<Complex>;
using Filter2D = BasicFilter2D<Complex>;
using ExactFilter1D = BasicFilter1D<QComplex>;
using ExactFilter2D = BasicFilter2D<QComplex>;

// ---------------------------------------------------------------------------------------------
// Elementwise maps and conversions

template <class T, class S, class Fn>
BasicFilter1D<T> map_coeffs(const BasicFilter1D<S>& f, Fn&& fn) {
  std::vector<T> c;
  c.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) c.push_back(fn(x));
  return BasicFilter1D<T>(f.support_min(), std::move(c));
}

template <class T, class S, class Fn>
BasicFilter2D<T> map_coeffs(const BasicFilter2D<S>& f, Fn&& fn) {
  std::vector<T> d;
  d.reserve(f.data().size());
  for (const auto& x : f.data()) d.push_back(fn(x));
  return BasicFilter2D<T>(f.support_min(), f.extent1(), f.extent2(), std::move(d));
}

template <class S>
Filter1D to_float(const BasicFilter1D<S>& f) {
  return map_coeffs<Complex>(f, [](const S& x) { return to_complex(x); });
}
template <class S>
Filter2D to_float(const BasicFilter2D<S>& f) {
  return map_coeffs<Complex>(f, [](const S& x) { return to_complex(x); });
}

template <class F>
F scale(const typename F::scalar_type& s, const F& f) {
  return map_coeffs<typename F::scalar_type>(f, [&](const auto& x) { return s * x; });
}

template <class F>
F conj_coeffs(const F& f) {
  return map_coeffs<typename F::scalar_type>(f, [](const auto& x) { return conj(x); });
}

template <class S>
double max_abs_coeff(const BasicFilter1D<S>& f) {
  double m = 0;
  for (const auto& x : f.coeffs()) m = std::max(m, magnitude(x));
  return m;
}
template <class S>
double max_abs_coeff(const BasicFilter2D<S>& f) {
  double m = 0;
  for (const auto& x : f.data()) m = std::max(m, magnitude(x));
  return m;
}

// ---------------------------------------------------------------------------------------------
// Ring operations

template <class S>
BasicFilter1D<S> operator+(const BasicFilter1D<S>& f, const BasicFilter1D<S>& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  int lo = std::min(f.support_min(), g.support_min());
  int hi = std::max(f.support_max(), g.support_max());
  std::vector<S> c(static_cast<size_t>(hi - lo + 1));
  for (int k = f.support_min(); k <= f.support_max(); ++k) c[static_cast<size_t>(k - lo)] += f[k];
  for (int k = g.support_min(); k <= g.support_max(); ++k) c[static_cast<size_t>(k - lo)] += g[k];
  return BasicFilter1D<S>(lo, std::move(c));
}

template <class S>
BasicFilter1D<S> operator-(const BasicFilter1D<S>& f) {
  return map_coeffs<S>(f, [](const S& x) { return -x; });
}
template <class S>
BasicFilter1D<S> operator-(const BasicFilter1D<S>& f, const BasicFilter1D<S>& g) {
  return f + (-g);
}

template <class S>
BasicFilter2D<S> operator+(const BasicFilter2D<S>& f, const BasicFilter2D<S>& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  Int2 lo{std::min(f.support_min()[0], g.support_min()[0]), std::min(f.support_min()[1], g.support_min()[1])};
  Int2 hi{std::max(f.support_max()[0], g.support_max()[0]), std::max(f.support_max()[1], g.support_max()[1])};
  int n1 = hi[0] - lo[0] + 1, n2 = hi[1] - lo[1] + 1;
  std::vector<S> d(static_cast<size_t>(n1) * n2);
  auto acc = [&](const BasicFilter2D<S>& h) {
    for (int i = 0; i < h.extent1(); ++i)
      for (int j = 0; j < h.extent2(); ++j)
        d[static_cast<size_t>((h.support_min()[0] + i - lo[0]) * n2 + (h.support_min()[1] + j - lo[1]))] +=
            h.data()[static_cast<size_t>(i * h.extent2() + j)];
  };
  acc(f);
  acc(g);
  return BasicFilter2D<S>(lo, n1, n2, std::move(d));
}

template <class S>
BasicFilter2D<S> operator-(const BasicFilter2D<S>& f) {
  return map_coeffs<S>(f, [](const S& x) { return -x; });
}
template <class S>
BasicFilter2D<S> operator-(const BasicFilter2D<S>& f, const BasicFilter2D<S>& g) {
  return f + (-g);
}

/// Convolution; the symbol of the result is the product of the symbols.
template <class S>
BasicFilter1D<S> mul(const BasicFilter1D<S>& f, const BasicFilter1D<S>& g) {
  if (f.empty() || g.empty()) return {};
  std::vector<S> c(static_cast<size_t>(f.size() + g.size() - 1));
  for (int i = 0; i < f.size(); ++i) {
    const S& x = f.coeffs()[static_cast<size_t>(i)];
    if (is_zero(x)) continue;
    for (int j = 0; j < g.size(); ++j) c[static_cast<size_t>(i + j)] += x * g.coeffs()[static_cast<size_t>(j)];
  }
  return BasicFilter1D<S>(f.support_min() + g.support_min(), std::move(c));
}

template <class S>
BasicFilter2D<S> mul(const BasicFilter2D<S>& f, const BasicFilter2D<S>& g) {
  if (f.empty() || g.empty()) return {};
  int n1 = f.extent1() + g.extent1() - 1, n2 = f.extent2() + g.extent2() - 1;
  std::vector<S> d(static_cast<size_t>(n1) * n2);
  for (int i = 0; i < f.extent1(); ++i)
    for (int j = 0; j < f.extent2(); ++j) {
      const S& x = f.data()[static_cast<size_t>(i * f.extent2() + j)];
      if (is_zero(x)) continue;
      for (int p = 0; p < g.extent1(); ++p)
        for (int q = 0; q < g.extent2(); ++q) {
          const S& y = g.data()[static_cast<size_t>(p * g.extent2() + q)];
          if (is_zero(y)) continue;
          d[static_cast<size_t>((i + p) * n2 + (j + q))] += x * y;
        }
    }
  Int2 lo{f.support_min()[0] + g.support_min()[0], f.support_min()[1] + g.support_min()[1]};
  return BasicFilter2D<S>(lo, n1, n2, std::move(d));
}

/// f*(k) = conj(f(-k)); the symbol becomes the complex conjugate.
template <class S>
BasicFilter1D<S> adjoint(const BasicFilter1D<S>& f) {
  std::vector<S> c(f.coeffs().rbegin(), f.coeffs().rend());
  for (auto& x : c) x = conj(x);
  return BasicFilter1D<S>(-f.support_max(), std::move(c));
}

template <class S>
BasicFilter2D<S> adjoint(const BasicFilter2D<S>& f) {
  std::vector<S> d(f.data().rbegin(), f.data().rend());
  for (auto& x : d) x = conj(x);
  Int2 hi = f.support_max();
  return BasicFilter2D<S>({-hi[0], -hi[1]}, f.extent1(), f.extent2(), std::move(d));
}

template <class S>
BasicFilter1D<S> shift(const BasicFilter1D<S>& f, int s) {
  return BasicFilter1D<S>(f.support_min() + s, f.coeffs());
}

template <class S>
BasicFilter2D<S> shift(const BasicFilter2D<S>& f, const Int2& s) {
  Int2 lo = f.support_min();
  return BasicFilter2D<S>({lo[0] + s[0], lo[1] + s[1]}, f.extent1(), f.extent2(), f.data());
}

/// Coefficients of f^(w + 2 pi xi): f(k) e^{-2 pi i xi.k}.
template <class S>
BasicFilter2D<S> modulate(const BasicFilter2D<S>& f, const QPoint2& xi) {
  std::vector<S> d = f.data();
  Int2 lo = f.support_min();
  for (int i = 0; i < f.extent1(); ++i)
    for (int j = 0; j < f.extent2(); ++j) {
      auto& x = d[static_cast<size_t>(i * f.extent2() + j)];
      if (!is_zero(x)) x = x * character_phase<S>(xi, {lo[0] + i, lo[1] + j});
    }
  return BasicFilter2D<S>(lo, f.extent1(), f.extent2(), std::move(d));
}

/// Coefficients of f^(w + (pi, pi)).
template <class S>
BasicFilter2D<S> modulate_pi(const BasicFilter2D<S>& f) {
  return modulate(f, QPoint2{Rational(1, 2), Rational(1, 2)});
}

/// Coefficients of f^(w + 2 pi xi) in one dimension.
template <class S>
BasicFilter1D<S> modulate(const BasicFilter1D<S>& f, const Rational& xi) {
  std::vector<S> c = f.coeffs();
  for (int i = 0; i < f.size(); ++i) {
    auto& x = c[static_cast<size_t>(i)];
    if (!is_zero(x)) x = x * character_phase_1d<S>(xi, f.support_min() + i);
  }
  return BasicFilter1D<S>(f.support_min(), std::move(c));
}

/// Coefficients of f^(w + pi).
template <class S>
BasicFilter1D<S> modulate_pi(const BasicFilter1D<S>& f) {
  return modulate(f, Rational(1, 2));
}

template <class S>
Complex eval(const BasicFilter1D<S>& f, double w) {
  Complex s{};
  for (int i = 0; i < f.size(); ++i)
    s += to_complex(f.coeffs()[static_cast<size_t>(i)]) * std::polar(1.0, -w * (f.support_min() + i));
  return s;
}

template <class S>
Complex eval(const BasicFilter2D<S>& f, double w1, double w2) {
  Complex s{};
  f.for_each_nonzero([&](const Int2& k, const S& v) { s += to_complex(v) * std::polar(1.0, -(w1 * k[0] + w2 * k[1])); });
  return s;
}

/// Filter with symbol 2 f^(w/2) g^(w/2 + pi).  Odd-index terms of the underlying product must
/// vanish (exactly in rational mode, below tol in float mode); otherwise NonIntegerSpectrum.
template <class S>
BasicFilter1D<S> half_arg_product(const BasicFilter1D<S>& f, const BasicFilter1D<S>& g, double tol = 1e-12) {
  BasicFilter1D<S> c = mul(f, modulate_pi(g));
  if (c.empty()) return {};
  double scale_ref = std::max(1.0, max_abs_coeff(c));
  int lo = c.support_min(), hi = c.support_max();
  for (int k = lo; k <= hi; ++k) {
    if (((k % 2) + 2) % 2 != 0) {
      bool zero = ScalarTraits<S>::exact ? is_zero(c[k]) : magnitude(c[k]) <= tol * scale_ref;
      if (!zero) fail(ErrorKind::NonIntegerSpectrum, "odd-index term does not vanish in half-argument product");
    }
  }
  int first_even = ((lo % 2) + 2) % 2 == 0 ? lo : lo + 1;
  std::vector<S> v;
  for (int k = first_even; k <= hi; k += 2) v.push_back(from_int<S>(2) * c[k]);
  return BasicFilter1D<S>(first_even / 2, std::move(v));
}

/// Keeps the even-index coefficients and halves the index: t(k) = f(2k).  In float mode the
/// odd-index coefficients must be below tol relative to the largest; otherwise NonIntegerSpectrum.
template <class S>
BasicFilter1D<S> decimate_even(const BasicFilter1D<S>& f, double tol = 1e-12) {
  if (f.empty()) return {};
  double ref = std::max(1.0, max_abs_coeff(f));
  int lo = f.support_min(), hi = f.support_max();
  for (int k = lo; k <= hi; ++k)
    if (((k % 2) + 2) % 2 != 0) {
      bool zero = ScalarTraits<S>::exact ? is_zero(f[k]) : magnitude(f[k]) <= tol * ref;
      if (!zero) fail(ErrorKind::NonIntegerSpectrum, "odd-index coefficient does not vanish");
    }
  int first_even = ((lo % 2) + 2) % 2 == 0 ? lo : lo + 1;
  std::vector<S> v;
  for (int k = first_even; k <= hi; k += 2) v.push_back(f[k]);
  return BasicFilter1D<S>(first_even / 2, std::move(v));
}

/// Filter with symbol f^(m w): coefficients moved to multiples of m.
template <class S>
BasicFilter1D<S> upsample(const BasicFilter1D<S>& f, int m) {
  if (f.empty()) return {};
  std::vector<S> c(static_cast<size_t>((f.size() - 1) * m + 1));
  for (int i = 0; i < f.size(); ++i) c[static_cast<size_t>(i * m)] = f.coeffs()[static_cast<size_t>(i)];
  return BasicFilter1D<S>(f.support_min() * m, std::move(c));
}

/// Separable product: g(k1, k2) = f1(k1) f2(k2), symbol f1^(w1) f2^(w2).
template <class S>
BasicFilter2D<S> tensor(const BasicFilter1D<S>& f1, const BasicFilter1D<S>& f2) {
  if (f1.empty() || f2.empty()) return {};
  std::vector<S> d;
  d.reserve(static_cast<size_t>(f1.size()) * f2.size());
  for (const auto& x : f1.coeffs())
    for (const auto& y : f2.coeffs()) d.push_back(x * y);
  return BasicFilter2D<S>({f1.support_min(), f2.support_min()}, f1.size(), f2.size(), std::move(d));
}

/// Places a 1D filter on Z x {0}.
template <class S>
BasicFilter2D<S> embed_first_axis(const BasicFilter1D<S>& f) {
  return tensor(f, BasicFilter1D<S>::delta());
}

template <class S>
double max_abs_diff(const BasicFilter1D<S>& f, const BasicFilter1D<S>& g) {
  return max_abs_coeff(to_float(f) - to_float(g));
}
template <class S>
double max_abs_diff(const BasicFilter2D<S>& f, const BasicFilter2D<S>& g) {
  return max_abs_coeff(to_float(f) - to_float(g));
}

template <class S>
bool operator==(const BasicFilter1D<S>& f, const BasicFilter1D<S>& g) {
  return f.support_min() == g.support_min() && f.coeffs() == g.coeffs();
}
template <class S>
bool operator==(const BasicFilter2D<S>& f, const BasicFilter2D<S>& g) {
  return f.support_min() == g.support_min() && f.extent1() == g.extent1() && f.extent2() == g.extent2() &&
         f.data() == g.data();
}

}  // namespace qfk
