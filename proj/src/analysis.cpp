#include "qfk/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace qfk {

namespace {

template <class S>
struct Points {
  int dim = 2;
  std::vector<std::pair<Int2, S>> e;
  int diameter = 0;
};

template <class S>
Points<S> points_of(const BasicFilter2D<S>& f) {
  Points<S> p;
  f.for_each_nonzero([&](const Int2& k, const S& v) { p.e.push_back({k, v}); });
  p.diameter = std::max(f.extent1(), f.extent2());
  return p;
}

template <class S>
Points<S> points_of(const BasicFilter1D<S>& f) {
  Points<S> p;
  p.dim = 1;
  for (int k = f.support_min(); k <= f.support_max(); ++k)
    if (!is_zero(f[k])) p.e.push_back({{k, 0}, f[k]});
  p.diameter = f.size();
  return p;
}

std::vector<Int2> multi_indices(int dim, int t) {
  if (dim == 1) return {{t, 0}};
  std::vector<Int2> r;
  for (int i = t; i >= 0; --i) r.push_back({i, t - i});
  return r;
}

template <class S>
S monomial(const Int2& k, const Int2& mu) {
  return int_pow<S>(k[0], mu[0]) * int_pow<S>(k[1], mu[1]);
}

template <class S>
S power(const S& x, int e) {
  S r = from_int<S>(1);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

template <class S>
bool vanishes(const S& v, double scale) {
  if constexpr (ScalarTraits<S>::exact)
    return is_zero(v);
  else
    return magnitude(v) <= kMomentTol * scale;
}

template <class S>
void require_lowpass(const Points<S>& p) {
  S s{};
  double scale = 0;
  for (const auto& [k, v] : p.e) {
    s = s + v;
    scale += magnitude(v);
  }
  if (!vanishes(S(s - from_int<S>(1)), std::max(1.0, scale))) fail(ErrorKind::NotLowpass, "a^(0) != 1");
}

// Smallest t such that some |mu| = t moment weighted by one of the phase vectors is nonzero.
template <class S>
int first_nonvanishing(const Points<S>& p, const std::vector<std::vector<S>>& phases) {
  const int cap = 2 * p.diameter + 2;
  for (int t = 0; t <= cap; ++t)
    for (const auto& mu : multi_indices(p.dim, t))
      for (const auto& ph : phases) {
        S s{};
        double scale = 0;
        for (size_t i = 0; i < p.e.size(); ++i) {
          const S term = p.e[i].second * ph[i] * monomial<S>(p.e[i].first, mu);
          s = s + term;
          scale += magnitude(term);
        }
        if (!vanishes(s, scale)) return t;
      }
  return cap + 1;
}

template <class S>
std::vector<S> ones(size_t n) {
  return std::vector<S>(n, from_int<S>(1));
}

template <class S>
LpmResult lpm_core(const Points<S>& p, const std::array<S, 2>& c) {
  LpmResult r;
  r.center = {to_complex(c[0]), to_complex(c[1])};
  const int cap = 2 * p.diameter + 2;
  for (int t = 0; t <= cap; ++t)
    for (const auto& mu : multi_indices(p.dim, t)) {
      S s{};
      double scale = 0;
      for (const auto& [k, v] : p.e) {
        const S term = v * monomial<S>(k, mu);
        s = s + term;
        scale += magnitude(term);
      }
      const S rhs = power(c[0], mu[0]) * power(c[1], mu[1]);
      if (!vanishes(S(s - rhs), scale + magnitude(rhs))) {
        r.order = t;
        return r;
      }
    }
  r.order = cap + 1;
  return r;
}

template <class S>
std::array<S, 2> first_moment(const Points<S>& p) {
  std::array<S, 2> c{};
  for (const auto& [k, v] : p.e) {
    c[0] = c[0] + v * from_int<S>(k[0]);
    c[1] = c[1] + v * from_int<S>(k[1]);
  }
  return c;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace

template <class S>
int sum_rules(const BasicFilter2D<S>& a, const DilationSpec& M) {
  const Points<S> p = points_of(a);
  require_lowpass(p);
  std::vector<std::vector<S>> phases;
  for (size_t i = 1; i < M.coset_reps().size(); ++i) {
    std::vector<S> ph;
    for (const auto& [k, v] : p.e) ph.push_back(character_phase<S>(M.coset_reps()[i], k));
    phases.push_back(std::move(ph));
  }
  return first_nonvanishing(p, phases);
}

template <class S>
int sum_rules(const BasicFilter1D<S>& a) {
  const Points<S> p = points_of(a);
  require_lowpass(p);
  std::vector<S> ph;
  for (const auto& [k, v] : p.e) ph.push_back(from_int<S>(k[0] % 2 == 0 ? 1 : -1));
  return first_nonvanishing(p, {ph});
}

template <class S>
int vanishing_moments(const BasicFilter2D<S>& b) {
  const Points<S> p = points_of(b);
  if (p.e.empty()) return -1;
  return first_nonvanishing(p, {ones<S>(p.e.size())});
}

template <class S>
int vanishing_moments(const BasicFilter1D<S>& b) {
  const Points<S> p = points_of(b);
  if (p.e.empty()) return -1;
  return first_nonvanishing(p, {ones<S>(p.e.size())});
}

template <class S>
LpmResult linear_phase_moments(const BasicFilter2D<S>& a, std::optional<std::array<S, 2>> c) {
  const Points<S> p = points_of(a);
  require_lowpass(p);
  return lpm_core(p, c ? *c : first_moment(p));
}

template <class S>
LpmResult linear_phase_moments(const BasicFilter1D<S>& a, std::optional<S> c) {
  const Points<S> p = points_of(a);
  require_lowpass(p);
  std::array<S, 2> cc = first_moment(p);
  if (c) cc[0] = *c;
  cc[1] = S{};
  return lpm_core(p, cc);
}

const char* character_name(Character c) {
  switch (c) {
    case Character::Trivial: return "trivial";
    case Character::Det: return "det";
    case Character::E11: return "E11";
    case Character::E22: return "E22";
    case Character::EntryProduct: return "entry-product";
  }
  return "?";
}

SymmetrySpec SymmetrySpec::d4(const QPoint2& c, Character chi) {
  SymmetrySpec s;
  for (int a : {1, -1})
    for (int b : {1, -1}) {
      s.group.push_back({{{a, 0}, {0, b}}});
      s.group.push_back({{{0, a}, {b, 0}}});
    }
  s.center = c;
  s.character = chi;
  s.group_name = "D4";
  return s;
}

SymmetrySpec SymmetrySpec::d4_plus(const QPoint2& c, Character chi) {
  SymmetrySpec s;
  for (int a : {1, -1})
    for (int b : {1, -1}) s.group.push_back({{{a, 0}, {0, b}}});
  s.center = c;
  s.character = chi;
  s.group_name = "D4+";
  return s;
}

SymmetrySpec SymmetrySpec::reflect_second(const QPoint2& c, Character chi) {
  return {{identity2(), {{{1, 0}, {0, -1}}}}, c, chi, "reflect2"};
}

SymmetrySpec SymmetrySpec::reflect_first(const QPoint2& c, Character chi) {
  return {{identity2(), {{{-1, 0}, {0, 1}}}}, c, chi, "reflect1"};
}

SymmetrySpec SymmetrySpec::point(const QPoint2& c, Character chi) {
  return {{identity2(), {{{-1, 0}, {0, -1}}}}, c, chi, "point"};
}

int SymmetrySpec::chi(const Mat2& e) const {
  switch (character) {
    case Character::Trivial: return 1;
    case Character::Det: return mat_det(e);
    case Character::E11: return e[0][0];
    case Character::E22: return e[1][1];
    case Character::EntryProduct: return e[0][0] * e[1][1] + e[0][1] * e[1][0];
  }
  return 0;
}

void SymmetrySpec::validate() const {
  auto contains = [&](const Mat2& m) { return std::find(group.begin(), group.end(), m) != group.end(); };
  if (!contains(identity2())) fail(ErrorKind::InvalidArgument, "symmetry group lacks the identity");
  for (const auto& a : group) {
    if (chi(a) != 1 && chi(a) != -1) fail(ErrorKind::InvalidArgument, "character is not +-1 on the group");
    for (const auto& b : group) {
      const Mat2 ab = mat_mul(a, b);
      if (!contains(ab)) fail(ErrorKind::InvalidArgument, "symmetry group is not closed");
      if (chi(ab) != chi(a) * chi(b)) fail(ErrorKind::InvalidArgument, "character is not multiplicative");
    }
  }
}

template <class S>
SymmetryVerdict symmetry_check(const BasicFilter2D<S>& f, const SymmetrySpec& spec, double tol) {
  spec.validate();
  SymmetryVerdict v;
  bool exact_ok = true;
  for (const auto& e : spec.group) {
    // E(k - c) + c = E k + (I - E) c
    const Rational s1 = spec.center[0] - (e[0][0] * spec.center[0] + e[0][1] * spec.center[1]);
    const Rational s2 = spec.center[1] - (e[1][0] * spec.center[0] + e[1][1] * spec.center[1]);
    if (!is_integer(s1) || !is_integer(s2))
      fail(ErrorKind::IncompatibleCenter, "center is not compatible with the symmetry group");
    const Int2 sh{numerator(s1).convert_to<int>(), numerator(s2).convert_to<int>()};
    const S chi = from_int<S>(spec.chi(e));
    if (f.empty()) continue;
    const Int2 lo = f.support_min(), hi = f.support_max();
    for (int k1 = lo[0]; k1 <= hi[0]; ++k1)
      for (int k2 = lo[1]; k2 <= hi[1]; ++k2) {
        const Int2 ek = mat_apply(e, {k1, k2});
        const S d = f.at(ek[0] + sh[0], ek[1] + sh[1]) - chi * f.at(k1, k2);
        exact_ok = exact_ok && is_zero(d);
        v.deviation = std::max(v.deviation, magnitude(d));
      }
  }
  v.pass = ScalarTraits<S>::exact ? exact_ok : v.deviation <= tol;
  return v;
}

template <class S>
double symmetry_deviation_1d(const BasicFilter1D<S>& f, int twice_center, int sign) {
  if (f.empty()) return 0;
  const int lo = std::min(f.support_min(), twice_center - f.support_max());
  const int hi = std::max(f.support_max(), twice_center - f.support_min());
  const S sg = from_int<S>(sign);
  double dev = 0;
  for (int k = lo; k <= hi; ++k) dev = std::max(dev, magnitude(S(f[twice_center - k] - sg * f[k])));
  return dev;
}

template <class S>
double tight_residual(const BasicFilterBank<S>& bank) {
  const auto& cosets = bank.dilation.coset_reps();
  double res = 0;
  for (size_t i = 0; i < cosets.size(); ++i) {
    BasicFilter2D<S> p;
    for (const auto& b : bank.filters)
      p = p + (i == 0 ? mul(b, adjoint(b)) : mul(adjoint(b), modulate(b, cosets[i])));
    if (i == 0) p = p - BasicFilter2D<S>::delta();
    res = std::max(res, max_abs_coeff(p));
  }
  return res;
}

template <class S>
double tight_residual_1d(const std::vector<BasicFilter1D<S>>& bank) {
  BasicFilter1D<S> p, q;
  for (const auto& b : bank) {
    p = p + mul(b, adjoint(b));
    q = q + mul(adjoint(b), modulate_pi(b));
  }
  return std::max(max_abs_coeff(p - BasicFilter1D<S>::delta()), max_abs_coeff(q));
}

template <class S>
BasicFilter2D<S> orthonormality_defect(const BasicFilter2D<S>& a, const DilationSpec& M) {
  const BasicFilter2D<S> u = mul(a, adjoint(a));
  BasicFilter2D<S> r = BasicFilter2D<S>::delta();
  for (const auto& xi : M.coset_reps()) r = r - modulate(u, xi);
  return r;
}

template <class S>
double orthonormal_residual(const BasicFilter2D<S>& a, const DilationSpec& M) {
  return max_abs_coeff(orthonormality_defect(a, M));
}

template <class S>
double orthonormal_residual(const BasicFilter1D<S>& a) {
  const BasicFilter1D<S> u = mul(a, adjoint(a));
  return max_abs_coeff(BasicFilter1D<S>::delta() - u - modulate_pi(u));
}

template <class S>
RelationResult vm_sr_lpm_relation(const BasicFilterBank<S>& bank) {
  RelationResult r;
  r.sr = sum_rules(bank.lowpass(), bank.dilation);
  r.lpm = linear_phase_moments(bank.lowpass()).order;
  r.min_vmo = -1;
  for (size_t i = 1; i < bank.filters.size(); ++i) {
    const int v = vanishing_moments(bank.filters[i]);
    if (v >= 0) r.min_vmo = r.min_vmo < 0 ? v : std::min(r.min_vmo, v);
  }
  r.pass = r.min_vmo == std::min(r.sr, r.lpm / 2);
  return r;
}

template <class S>
PropertyReport analyze_bank(const BasicFilterBank<S>& bank, double tol) {
  PropertyReport rep;
  rep.tolerance = tol;
  rep.sr = sum_rules(bank.lowpass(), bank.dilation);
  rep.lpm = linear_phase_moments(bank.lowpass());
  for (size_t i = 1; i < bank.filters.size(); ++i) rep.vmo.push_back(vanishing_moments(bank.filters[i]));
  rep.tight_residual = tight_residual(bank);
  rep.orthonormal_residual = orthonormal_residual(bank.lowpass(), bank.dilation);
  rep.tight_pass = ScalarTraits<S>::exact ? rep.tight_residual == 0.0 : rep.tight_residual <= tol;
  rep.canonical_pass = true;
  for (const auto& p : bank.canonical_pairs) {
    const double d = canonical_pair_deviation(bank, p);
    rep.canonical_deviation.push_back(d);
    rep.canonical_pass = rep.canonical_pass && (ScalarTraits<S>::exact ? d == 0.0 : d <= tol);
  }

  using Factory = SymmetrySpec (*)(const QPoint2&, Character);
  const Factory factories[] = {&SymmetrySpec::d4, &SymmetrySpec::d4_plus, &SymmetrySpec::reflect_second,
                               &SymmetrySpec::reflect_first, &SymmetrySpec::point};
  const Character chars[] = {Character::Trivial, Character::Det, Character::EntryProduct, Character::E11,
                             Character::E22};
  for (size_t i = 0; i < bank.filters.size(); ++i) {
    const auto& f = bank.filters[i];
    NamedSymmetry found;
    found.filter = static_cast<int>(i);
    found.group = "none";
    if (!f.empty()) {
      const QPoint2 c{Rational(f.support_min()[0] + f.support_max()[0], 2),
                      Rational(f.support_min()[1] + f.support_max()[1], 2)};
      found.center = "(" + to_string(c[0]) + "," + to_string(c[1]) + ")";
      const double ftol = tol * std::max(1.0, max_abs_coeff(f));
      for (auto make : factories) {
        for (auto chi : chars) {
          const SymmetrySpec spec = make(c, chi);
          try {
            spec.validate();
          } catch (const Error&) {
            continue;
          }
          SymmetryVerdict v;
          try {
            v = symmetry_check(f, spec, ftol);
          } catch (const Error&) {
            continue;
          }
          if (v.pass) {
            found.group = spec.group_name;
            found.character = character_name(chi);
            found.pass = true;
            found.deviation = v.deviation;
            break;
          }
        }
        if (found.pass) break;
      }
    }
    rep.symmetries.push_back(found);
  }
  return rep;
}

#define QFK_INSTANTIATE(S)                                                                           \
  template int sum_rules(const BasicFilter2D<S>&, const DilationSpec&);                              \
  template int sum_rules(const BasicFilter1D<S>&);                                                   \
  template int vanishing_moments(const BasicFilter2D<S>&);                                           \
  template int vanishing_moments(const BasicFilter1D<S>&);                                           \
  template LpmResult linear_phase_moments(const BasicFilter2D<S>&, std::optional<std::array<S, 2>>); \
  template LpmResult linear_phase_moments(const BasicFilter1D<S>&, std::optional<S>);                \
  template SymmetryVerdict symmetry_check(const BasicFilter2D<S>&, const SymmetrySpec&, double);     \
  template double symmetry_deviation_1d(const BasicFilter1D<S>&, int, int);                          \
  template double tight_residual(const BasicFilterBank<S>&);                                         \
  template double tight_residual_1d(const std::vector<BasicFilter1D<S>>&);                           \
  template BasicFilter2D<S> orthonormality_defect(const BasicFilter2D<S>&, const DilationSpec&);     \
  template double orthonormal_residual(const BasicFilter2D<S>&, const DilationSpec&);                \
  template double orthonormal_residual(const BasicFilter1D<S>&);                                     \
  template RelationResult vm_sr_lpm_relation(const BasicFilterBank<S>&);                             \
  template PropertyReport analyze_bank(const BasicFilterBank<S>&, double);

QFK_INSTANTIATE(Complex)
QFK_INSTANTIATE(QComplex)

#undef QFK_INSTANTIATE

}  // namespace qfk
