#pragma once

#include "qfk/filter.hpp"
#include "qfk/filters1d.hpp"
#include "qfk/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace qfk {

/// Records b_to^(w) = e^{-i gamma.w} conj(b_from^(w + 2 pi xi)) with xi = (1/2, 1/2).
struct CanonicalPair {
  int from = 0;  // index into BasicFilterBank::filters (0 is the low-pass)
  int to = 0;
  Int2 gamma{1, 0};
};

/// Low-pass filters[0] followed by the high-pass filters.
template <class S>
struct BasicFilterBank {
  std::vector<BasicFilter2D<S>> filters;
  DilationSpec dilation;
  std::vector<CanonicalPair> canonical_pairs;
  std::string family;
  std::map<std::string, std::string> params;

  const BasicFilter2D<S>& lowpass() const { return filters.at(0); }
  int highpass_count() const { return static_cast<int>(filters.size()) - 1; }
};

using FilterBank = BasicFilterBank<Complex>;
using ExactFilterBank = BasicFilterBank<QComplex>;

template <class S>
FilterBank to_float(const BasicFilterBank<S>& b) {
  FilterBank r;
  for (const auto& f : b.filters) r.filters.push_back(to_float(f));
  r.dilation = b.dilation;
  r.canonical_pairs = b.canonical_pairs;
  r.family = b.family;
  r.params = b.params;
  return r;
}

/// a^(w1, w2) = (u^(w1 + w2) + u^(w1 - w2) e^{-i w2}) / 2: u(k)/2 at (k, k) and at (k, 1 - k).
template <class S>
BasicFilter2D<S> lift(const BasicFilter1D<S>& u) {
  std::vector<std::pair<Int2, S>> e;
  const S half = from_rational<S>(Rational(1, 2));
  for (int k = u.support_min(); k <= u.support_max(); ++k) {
    if (is_zero(u[k])) continue;
    e.push_back({{k, k}, half * u[k]});
    e.push_back({{k, 1 - k}, half * u[k]});
  }
  return BasicFilter2D<S>::from_entries(e);
}

/// Generalized lift: (u^(g1.w) + u^(g2.w) e^{-i g3.w}) / 2.
template <class S>
BasicFilter2D<S> lift_general(const BasicFilter1D<S>& u, const Int2& g1, const Int2& g2, const Int2& g3) {
  std::vector<std::pair<Int2, S>> e;
  const S half = from_rational<S>(Rational(1, 2));
  for (int k = u.support_min(); k <= u.support_max(); ++k) {
    if (is_zero(u[k])) continue;
    e.push_back({{k * g1[0], k * g1[1]}, half * u[k]});
    e.push_back({{k * g2[0] + g3[0], k * g2[1] + g3[1]}, half * u[k]});
  }
  return BasicFilter2D<S>::from_entries(e);
}

/// b^(w) = e^{-i gamma.w} conj(h^(w + 2 pi xi)): b(k) = conj(h(gamma - k) e^{-2 pi i xi.(gamma - k)}).
/// With xi = (1/2, 1/2) and gamma1 + gamma2 odd this is (-1)^{1+k1+k2} conj(h(gamma - k)).
template <class S>
BasicFilter2D<S> canonical_highpass(const BasicFilter2D<S>& h, const Int2& gamma = {1, 0},
                                    const QPoint2& xi = {Rational(1, 2), Rational(1, 2)}) {
  if (xi[0] == Rational(1, 2) && xi[1] == Rational(1, 2) && ((gamma[0] + gamma[1]) % 2 + 2) % 2 == 0)
    fail(ErrorKind::BadShift, "canonical shift must have odd coordinate sum");
  std::vector<std::pair<Int2, S>> e;
  h.for_each_nonzero([&](const Int2& k, const S& v) {
    e.push_back({{gamma[0] - k[0], gamma[1] - k[1]}, conj(v * character_phase<S>(xi, k))});
  });
  return BasicFilter2D<S>::from_entries(e);
}

/// Tests the recorded canonical relation b_to == canonical_highpass(b_from, gamma); returns the
/// max coefficient deviation (exactly 0 in rational mode when it holds).
template <class S>
double canonical_pair_deviation(const BasicFilterBank<S>& bank, const CanonicalPair& p) {
  return max_abs_diff(bank.filters.at(static_cast<size_t>(p.to)),
                      canonical_highpass(bank.filters.at(static_cast<size_t>(p.from)), p.gamma));
}

/// Largest coefficient of |u^|^2 + |v^|^2 - 1 viewed as a Laurent polynomial.
template <class S>
double partition_residual(const BasicFilter1D<S>& u, const BasicFilter1D<S>& v) {
  const BasicFilter1D<S> p = mul(u, adjoint(u)) + mul(v, adjoint(v)) - BasicFilter1D<S>::delta();
  return max_abs_coeff(p);
}

/// {lift(u); canonical(lift(u)), lift(v), canonical(lift(v))}, canonical pairs (0,1) and (2,3).
template <class S>
BasicFilterBank<S> double_canonical_from_uv(const BasicFilter1D<S>& u, const BasicFilter1D<S>& v) {
  const double res = partition_residual(u, v);
  if (ScalarTraits<S>::exact ? res != 0.0 : res > 1e-9)
    fail(ErrorKind::NotPartition, "|u|^2 + |v|^2 != 1 (residual " + std::to_string(res) + ")");
  BasicFilterBank<S> bank;
  const auto a = lift(u);
  const auto b2 = lift(v);
  bank.filters = {a, canonical_highpass(a), b2, canonical_highpass(b2)};
  bank.dilation = DilationSpec::quincunx_sqrt2();
  bank.canonical_pairs = {{0, 1, {1, 0}}, {2, 3, {1, 0}}};
  bank.family = "double-canonical-uv";
  return bank;
}

/// Low-pass a^{2D}_{2n,2n} = lift(u_filter(n)).
ExactFilter2D a2d(int n);

/// Double canonical bank with v^(w) = 2 a^D_n(w/2) a^D_n(w/2 + pi).
FilterBank thm22_bank(int n);

/// Double canonical bank from complex_symmetric_pair(n).
FilterBank complex_dc_bank(int n, RootChoice choice = RootChoice::NegativeImag);

/// Bank with a^ = (u^(g1.w) + u^(g2.w) e^{-i g3.w})/2, b1 = e^{-i g4.w} conj(a^(w + 2 pi xi)),
/// and b2, b3 built the same way from v.  Requires |det M| = 2.
template <class S>
BasicFilterBank<S> general_bank(const BasicFilter1D<S>& u, const BasicFilter1D<S>& v, const DilationSpec& M,
                                const Int2& g1, const Int2& g2, const Int2& g3, const Int2& g4,
                                const QPoint2& xi) {
  if (M.abs_det() != 2) fail(ErrorKind::InvalidArgument, "general bank requires |det M| = 2");
  if (!M.in_lattice(g1) || !M.in_lattice(g2) || (g1 == Int2{0, 0}) || (g2 == Int2{0, 0}))
    fail(ErrorKind::BadShift, "gamma1, gamma2 must be nonzero points of M Z^2");
  if (M.in_lattice(g3) || M.in_lattice(g4)) fail(ErrorKind::BadShift, "gamma3, gamma4 must lie outside M Z^2");
  bool xi_ok = false;
  for (size_t i = 1; i < M.coset_reps().size(); ++i) xi_ok = xi_ok || (M.coset_reps()[i] == xi);
  if (!xi_ok) fail(ErrorKind::InvalidArgument, "xi must be a nonzero coset representative");
  const double res = partition_residual(u, v);
  if (ScalarTraits<S>::exact ? res != 0.0 : res > 1e-9) fail(ErrorKind::NotPartition, "|u|^2 + |v|^2 != 1");

  BasicFilterBank<S> bank;
  const auto a = lift_general(u, g1, g2, g3);
  const auto b2 = lift_general(v, g1, g2, g3);
  bank.filters = {a, canonical_highpass(a, g4, xi), b2, canonical_highpass(b2, g4, xi)};
  bank.dilation = M;
  if (xi == QPoint2{Rational(1, 2), Rational(1, 2)}) bank.canonical_pairs = {{0, 1, g4}, {2, 3, g4}};
  bank.family = "general";
  return bank;
}

/// Multiple canonical tensor bank: b_{2j,k} = b_{2j}(w1) u_k(w2), b_{2j+1,k} = b_{2j+1}(w1) conj(u_k(w2+pi)).
/// Filter index j + 2s k, so filters[0] = b_{0,0}.
template <class S>
BasicFilterBank<S> tensor_multiple(const std::vector<BasicFilter1D<S>>& bank1d,
                                   const std::vector<BasicFilter1D<S>>& us) {
  if (bank1d.empty() || bank1d.size() % 2 != 0)
    fail(ErrorKind::NotCanonical, "one-dimensional bank must consist of canonical pairs");
  for (size_t j = 0; j + 1 < bank1d.size(); j += 2) {
    const double dev = max_abs_diff(bank1d[j + 1], canonical_1d(bank1d[j], 1));
    if (ScalarTraits<S>::exact ? dev != 0.0 : dev > 1e-12)
      fail(ErrorKind::NotCanonical, "one-dimensional bank violates the canonical pairing");
  }
  {
    BasicFilter1D<S> p;
    for (const auto& b : bank1d) {
      const auto bb = mul(b, adjoint(b));
      p = p + bb;
    }
    BasicFilter1D<S> q;
    for (const auto& b : bank1d) q = q + mul(adjoint(b), modulate_pi(b));
    const double res = std::max(max_abs_coeff(p - BasicFilter1D<S>::delta()), max_abs_coeff(q));
    if (ScalarTraits<S>::exact ? res != 0.0 : res > 1e-9)
      fail(ErrorKind::NotCanonical, "one-dimensional bank is not tight");
  }
  {
    BasicFilter1D<S> p;
    for (const auto& u : us) p = p + mul(u, adjoint(u));
    const double res = max_abs_coeff(p - BasicFilter1D<S>::delta());
    if (ScalarTraits<S>::exact ? res != 0.0 : res > 1e-9) fail(ErrorKind::NotPartition, "sum |u_k|^2 != 1");
  }
  const int two_s = static_cast<int>(bank1d.size());
  BasicFilterBank<S> bank;
  for (size_t k = 0; k < us.size(); ++k) {
    // conj(u^(w + pi)) has coefficient (-1)^k conj(u(-k)) at k.
    const BasicFilter1D<S> uc = modulate_pi(adjoint(us[k]));
    for (int j = 0; j < two_s; ++j) {
      const auto& b = bank1d[static_cast<size_t>(j)];
      bank.filters.push_back(j % 2 == 0 ? tensor(b, us[k]) : tensor(b, uc));
    }
  }
  for (size_t k = 0; k < us.size(); ++k)
    for (int j = 0; j < two_s; j += 2)
      bank.canonical_pairs.push_back({j + two_s * static_cast<int>(k), j + 1 + two_s * static_cast<int>(k), {1, 0}});
  bank.dilation = DilationSpec::quincunx_sqrt2();
  bank.family = "tensor";
  return bank;
}

/// Tensor bank from Daubechies filters: b0 = a^D_n (x) a^D_m, b1 canonical of b0,
/// b2 = a^D_n(w1) a^D_m(w2 + pi), b3 canonical of b2.
FilterBank daubechies_tensor_bank(int n, int m);

/// Twelve-filter bank from a symmetric low-pass a: tensor_multiple of double_canonical_1d(a)
/// with (a, u1, u2), where (u1, u2) = partition_split(u0) and |u0^|^2 = 1 - |a^|^2.
FilterBank six_multiple_bank(const Filter1D& a, FactorPhase phase = FactorPhase::MatchPaper);

/// The 6-tap low-pass (-3, 5, 30, 30, 5, -3)/64 on [-2, 3].
ExactFilter1D six_tap_lowpass();

/// Solves sum_{k in Lambda_eps} a(k) k^mu = c^mu / 2 for all |mu| < 2n, c = (1/2, 1/2), over
/// [1-n, n]^2 in exact arithmetic.  The system is overdetermined; rank deficiency or
/// inconsistency raises SingularSystem.
ExactFilter2D solve_minimal_filter(int n);

/// Size of Gamma_n = {|mu| < 2n, mu2 < 2n-1} minus {(0, 2j-1): j = 1..n-1}.
int moment_index_count(int n);

struct MomentSystemRanks {
  int unknowns = 0;           // 2 n^2 per parity class
  int gamma_rank[2] = {0, 0};  // rank of (k^mu), k in Lambda_eps, mu in Gamma_n
  int full_rank[2] = {0, 0};   // same with all |mu| < 2n
};

/// Exact ranks of the moment matrices for both parity classes.
MomentSystemRanks moment_system_ranks(int n);

}  // namespace qfk
