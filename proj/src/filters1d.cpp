#include "qfk/filters1d.hpp"

#include <cmath>

namespace qfk {

namespace {

Rational binom(int n, int k) {
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Rational> rpoly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<QComplex> to_q(const Poly1Real& p) { return {p.begin(), p.end()}; }

}  // namespace

ExactFilter1D sin2_filter() { return ExactFilter1D(-1, {Rational(-1, 4), Rational(1, 2), Rational(-1, 4)}); }
ExactFilter1D cos2_filter() { return ExactFilter1D(-1, {Rational(1, 4), Rational(1, 2), Rational(1, 4)}); }

ExactFilter1D interpolatory(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "interpolatory filter needs n >= 1");
  Poly1Real p(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) p[static_cast<size_t>(j)] = binom(n - 1 + j, j);
  ExactFilter1D c = ExactFilter1D::delta();
  for (int i = 0; i < n; ++i) c = mul(c, cos2_filter());
  return mul(c, poly_of_filter(to_q(p), sin2_filter()));
}

Poly1Real u_polynomial(int n, const Poly1Real& R) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "u filter needs n >= 1");
  Poly1Real p(static_cast<size_t>(n) + R.size());
  Rational quarter_pow(1);
  for (int j = 0; j < n; ++j) {
    p[static_cast<size_t>(j)] = binom(2 * j, j) * quarter_pow;
    quarter_pow /= 4;
  }
  for (size_t j = 0; j < R.size(); ++j) p[static_cast<size_t>(n) + j] += R[j];
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

ExactFilter1D u_filter(int n, const Poly1Real& R) {
  Poly1Real p = u_polynomial(n, R);
  ExactFilter1D half(0, {Rational(1, 2), Rational(1, 2)});
  return mul(half, poly_of_filter(to_q(p), sin2_filter()));
}

Filter1D daubechies(int n, FactorPhase phase) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "Daubechies filter needs n >= 1");
  return fejer_riesz(to_float(interpolatory(n)), phase);
}

std::pair<ExactFilter1D, ExactFilter1D> haar_pair(int j, int k) {
  const QComplex h = Rational(1, 2);
  ExactFilter1D u = ExactFilter1D(-j, {h}) + ExactFilter1D(j + 1, {h});
  ExactFilter1D v = ExactFilter1D(k - j, {h}) + ExactFilter1D(k + j + 1, {-h});
  return {u, v};
}

ComplexSymmetricPair complex_symmetric_pair(int n, const Poly1Real& R, RootChoice choice) {
  ComplexSymmetricPair out;
  out.P = u_polynomial(n, R);
  out.u = u_filter(n, R);
  // 1 - (1 - x) P^2, then divide by x.
  Poly1Real num = rpoly_mul({Rational(1), Rational(-1)}, rpoly_mul(out.P, out.P));
  for (auto& c : num) c = -c;
  num[0] += 1;
  if (num[0] != 0) fail(ErrorKind::InvalidArgument, "P(0) must equal 1");
  out.T.assign(num.begin() + 1, num.end());
  while (out.T.size() > 1 && out.T.back() == 0) out.T.pop_back();

  std::vector<double> Tf;
  for (const auto& c : out.T) Tf.push_back(c.convert_to<double>());
  out.Q = abs_square_factor_realline(Tf, choice);

  Filter1D x = to_float(sin2_filter());
  Filter1D half_diff(0, {Complex(0.5), Complex(-0.5)});
  out.v = mul(half_diff, poly_of_filter(out.Q, x));
  return out;
}

Filter1D complement_factor(const Filter1D& a, FactorPhase phase) {
  Filter1D t = Filter1D::delta() - mul(a, adjoint(a));
  return fejer_riesz(t.trimmed(1e-14), phase);
}

std::vector<Filter1D> double_canonical_1d(const Filter1D& a, int eps, int c_b, FactorPhase phase) {
  if (eps != 1 && eps != -1) fail(ErrorKind::InvalidArgument, "epsilon must be +1 or -1");
  if (c_b % 2 == 0) fail(ErrorKind::InvalidArgument, "c_b must be odd");
  const Filter1D aa = mul(a, adjoint(a));
  const Filter1D t2 = (Filter1D::delta() - aa - modulate_pi(aa)).trimmed(1e-14);
  Filter1D b2;
  if (!t2.empty()) {
    if (trig_grid_min(t2) < -1e-6) fail(ErrorKind::NegativePoly, "1 - |a(w)|^2 - |a(w+pi)|^2 is negative");
    const Filter1D u = fejer_riesz(decimate_even(t2), phase);
    const Filter1D up = upsample(u, 2);
    // e^{-i c_b w} conj(u^(2w)) has coefficient conj(u(k)) at c_b - 2k.
    const Filter1D refl = shift(adjoint(up), c_b);
    b2 = scale(Complex(0.5), up + scale(Complex(static_cast<double>(eps)), refl));
  }
  return {a, canonical_1d(a, 1), b2, canonical_1d(b2, 1)};
}

}  // namespace qfk
