#pragma once

#include "qfk/factorize.hpp"
#include "qfk/filter.hpp"

#include <utility>
#include <vector>

namespace qfk {

/// Real polynomial in x = sin^2(w/2), ascending coefficients.
using Poly1Real = std::vector<Rational>;

/// x = sin^2(w/2) as a filter: (-1/4, 1/2, -1/4) on [-1, 1].
ExactFilter1D sin2_filter();
/// cos^2(w/2) as a filter: (1/4, 1/2, 1/4) on [-1, 1].
ExactFilter1D cos2_filter();

/// Substitutes a filter x into the polynomial p: sum_j p[j] x^j.
template <class S>
BasicFilter1D<S> poly_of_filter(const std::vector<S>& p, const BasicFilter1D<S>& x) {
  BasicFilter1D<S> r;
  for (size_t j = p.size(); j-- > 0;) {
    r = mul(r, x);
    if (!is_zero(p[j])) r = r + BasicFilter1D<S>(0, {p[j]});
  }
  return r;
}

/// Interpolatory filter a^I_{2n}: cos^{2n}(w/2) sum_{j<n} C(n-1+j, j) sin^{2j}(w/2).
ExactFilter1D interpolatory(int n);

/// P(x) = sum_{j<n} (2j-1)!!/(2j)!! x^j + x^n R(x).
Poly1Real u_polynomial(int n, const Poly1Real& R = {});

/// u^(w) = (1 + e^{-iw})/2 P(sin^2(w/2)); symmetric about 1/2 with 2n linear-phase moments.
ExactFilter1D u_filter(int n, const Poly1Real& R = {});

/// Daubechies orthonormal filter a^D_n with |a^|^2 = a^I_{2n}, support [1-n, n].
Filter1D daubechies(int n, FactorPhase phase = FactorPhase::MatchPaper);

/// The pair u^ = (e^{ijw} + e^{-i(j+1)w})/2, v^ = e^{-ikw}(e^{ijw} - e^{-i(j+1)w})/2.
std::pair<ExactFilter1D, ExactFilter1D> haar_pair(int j, int k);

struct ComplexSymmetricPair {
  ExactFilter1D u;
  Filter1D v;
  Poly1Real P;
  Poly1Real T;               // (1 - (1-x) P^2) / x
  std::vector<Complex> Q;    // |Q(x)|^2 = T(x)
};

/// u^ = (1 + e^{-iw})/2 P(x), v^ = (1 - e^{-iw})/2 Q(x) with x |Q(x)|^2 = 1 - (1-x) P(x)^2.
ComplexSymmetricPair complex_symmetric_pair(int n, const Poly1Real& R = {},
                                            RootChoice choice = RootChoice::NegativeImag);

/// One-dimensional canonical partner: b^(w) = e^{-i gamma w} conj(h^(w + pi)), i.e.
/// b(k) = (-1)^{gamma-k} conj(h(gamma - k)).  gamma must be odd.
template <class S>
BasicFilter1D<S> canonical_1d(const BasicFilter1D<S>& h, int gamma = 1) {
  if (gamma % 2 == 0) fail(ErrorKind::BadShift, "canonical shift must be odd");
  if (h.empty()) return {};
  std::vector<S> c(static_cast<size_t>(h.size()));
  const int lo = gamma - h.support_max();
  for (int k = lo; k < lo + h.size(); ++k) {
    S x = conj(h[gamma - k]);
    if (((gamma - k) % 2 + 2) % 2 != 0) x = -x;
    c[static_cast<size_t>(k - lo)] = x;
  }
  return BasicFilter1D<S>(lo, std::move(c));
}

/// Double canonical 1D bank {a; b1, b2, b3}: v^(2w) = 1 - |a^(w)|^2 - |a^(w+pi)|^2 factored as
/// |u^|^2, b2^(w) = (u^(2w) + eps e^{-i c_b w} conj(u^(2w)))/2, b1 and b3 canonical partners.
std::vector<Filter1D> double_canonical_1d(const Filter1D& a, int eps = 1, int c_b = 1,
                                          FactorPhase phase = FactorPhase::MatchPaper);

/// u0 from |u0^|^2 = 1 - |a^|^2 via Fejer-Riesz.
Filter1D complement_factor(const Filter1D& a, FactorPhase phase = FactorPhase::MatchPaper);

/// u1^ = (u0^ + e^{-iw} conj(u0^))/2 and u2^ = (u0^ - e^{-iw} conj(u0^))/2.
template <class S>
std::pair<BasicFilter1D<S>, BasicFilter1D<S>> partition_split(const BasicFilter1D<S>& u0) {
  // e^{-iw} conj(u0^(w)) has coefficient conj(u0(1-k)) at k.
  const BasicFilter1D<S> r = shift(adjoint(u0), 1);
  const S half = from_rational<S>(Rational(1, 2));
  return {scale(half, u0 + r), scale(half, u0 - r)};
}

}  // namespace qfk
