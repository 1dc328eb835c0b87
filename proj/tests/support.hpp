#pragma once

#include "qfk/filter.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace qfk::test {

/// Matrix in display order: columns run over k1 upward from min1, rows over k2 downward from max2.
template <class S>
BasicFilter2D<S> from_rows(const std::vector<std::vector<S>>& rows, int min1, int max2, const S& factor) {
  std::vector<std::pair<Int2, S>> e;
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c)
      e.push_back({{min1 + static_cast<int>(c), max2 - static_cast<int>(r)}, factor * rows[r][c]});
  return BasicFilter2D<S>::from_entries(e);
}

inline std::vector<std::vector<QComplex>> qrows(const std::vector<std::vector<int>>& m) {
  std::vector<std::vector<QComplex>> r;
  for (const auto& row : m) {
    r.emplace_back();
    for (int x : row) r.back().emplace_back(Rational(x));
  }
  return r;
}

/// Max deviation of the symbols of f and g on a pseudo-random set of frequencies.
template <class F>
double symbol_gap(const F& f, const F& g, unsigned seed = 1) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> w(-std::numbers::pi, std::numbers::pi);
  double m = 0;
  for (int i = 0; i < 64; ++i) {
    if constexpr (requires { eval(f, 0.0, 0.0); }) {
      double a = w(rng), b = w(rng);
      m = std::max(m, std::abs(eval(f, a, b) - eval(g, a, b)));
    } else {
      double a = w(rng);
      m = std::max(m, std::abs(eval(f, a) - eval(g, a)));
    }
  }
  return m;
}

inline Filter1D random_filter1d(std::mt19937& rng, int lo, int n) {
  std::normal_distribution<double> d;
  std::vector<Complex> c;
  for (int i = 0; i < n; ++i) c.emplace_back(d(rng), d(rng));
  return Filter1D(lo, c);
}

inline Filter2D random_filter2d(std::mt19937& rng, Int2 lo, int n1, int n2) {
  std::normal_distribution<double> d;
  std::vector<std::pair<Int2, Complex>> e;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) e.push_back({{lo[0] + i, lo[1] + j}, Complex(d(rng), d(rng))});
  return Filter2D::from_entries(e);
}

}  // namespace qfk::test
