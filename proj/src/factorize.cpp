#include "qfk/factorize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qfk {

namespace {

constexpr double kCircleTol = 1e-6;
constexpr double kPairTol = 1e-5;

double abs_sum(const std::vector<Complex>& p) {
  double s = 0;
  for (const auto& c : p) s += std::abs(c);
  return s;
}

// p(z) = (z - r) q(z); returns q, discarding the remainder.
std::vector<Complex> deflate(const std::vector<Complex>& p, Complex r) {
  size_t d = p.size() - 1;
  std::vector<Complex> q(d);
  Complex acc = p[d];
  for (size_t i = d; i-- > 0;) {
    q[i] = acc;
    acc = p[i] + acc * r;
  }
  return q;
}

// Removes every root at r whose residual is below tol relative to the coefficient mass.
int deflate_all(std::vector<Complex>& p, Complex r, double tol) {
  int count = 0;
  while (p.size() > 1 && std::abs(poly_eval(p, r)) <= tol * abs_sum(p)) {
    p = deflate(p, r);
    ++count;
  }
  return count;
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> p{Complex(1.0)};
  for (const auto& r : roots) p = poly_mul(p, {-r, Complex(1.0)});
  return p;
}

}  // namespace

Complex poly_eval(const std::vector<Complex>& coeffs, Complex x) {
  Complex s{};
  for (size_t i = coeffs.size(); i-- > 0;) s = s * x + coeffs[i];
  return s;
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Complex> r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> p = coeffs;
  double mass = abs_sum(p);
  while (!p.empty() && std::abs(p.back()) <= 1e-300 * std::max(1.0, mass)) p.pop_back();
  if (p.size() <= 1) return {};
  const int d = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[static_cast<size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);

  std::vector<Complex> dp(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * static_cast<double>(i);
  for (auto& r : roots) {
    for (int it = 0; it < 4; ++it) {
      Complex f = poly_eval(p, r), df = poly_eval(dp, r);
      if (std::abs(df) == 0.0) break;
      Complex cand = r - f / df;
      if (std::abs(poly_eval(p, cand)) < std::abs(f))
        r = cand;
      else
        break;
    }
  }
  return roots;
}

double trig_grid_min(const Filter1D& t, int points) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    double w = 2.0 * std::numbers::pi * i / points;
    m = std::min(m, eval(t, w).real());
  }
  return m;
}

Filter1D fejer_riesz(const Filter1D& t_in, FactorPhase phase) {
  if (t_in.empty()) fail(ErrorKind::InvalidArgument, "cannot factor the zero polynomial");
  const double ref = max_abs_coeff(t_in);
  const Filter1D t = t_in.trimmed(1e-14 * ref);
  const int N = std::max(-t.support_min(), t.support_max());
  for (int k = 0; k <= N; ++k)
    if (std::abs(t[-k] - std::conj(t[k])) > 1e-9 * ref)
      fail(ErrorKind::InvalidArgument, "trigonometric polynomial is not Hermitian");
  if (trig_grid_min(t) < -1e-6 * std::max(1.0, ref))
    fail(ErrorKind::NegativePoly, "trigonometric polynomial is negative somewhere on the circle");
  if (N == 0) return Filter1D(0, {Complex(std::sqrt(std::max(0.0, t[0].real())))});

  // z^N t^(w) as an algebraic polynomial in z = e^{-iw}, with Hermitian-symmetrized coefficients.
  std::vector<Complex> p(static_cast<size_t>(2 * N + 1));
  for (int k = -N; k <= N; ++k) p[static_cast<size_t>(k + N)] = 0.5 * (t[k] + std::conj(t[-k]));

  const int m_plus = deflate_all(p, Complex(1.0), 1e-9);
  const int m_minus = deflate_all(p, Complex(-1.0), 1e-9);
  if (m_plus % 2 != 0 || m_minus % 2 != 0)
    fail(ErrorKind::RootClusterFailure, "root at z = +-1 has odd multiplicity");

  std::vector<Complex> roots = polynomial_roots(p);
  std::vector<Complex> inside, outside, circle;
  for (const auto& r : roots) {
    double m = std::abs(r);
    if (std::abs(m - 1.0) <= kCircleTol)
      circle.push_back(r / m);
    else if (m < 1.0)
      inside.push_back(r);
    else
      outside.push_back(r);
  }
  if (inside.size() != outside.size())
    fail(ErrorKind::RootClusterFailure, "roots do not pair under reflection in the unit circle");
  if (circle.size() % 2 != 0) fail(ErrorKind::RootClusterFailure, "odd number of unit-circle roots");
  std::sort(circle.begin(), circle.end(), [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });

  std::vector<Complex> chosen = inside;
  // Greedy pairing by argument; the wrap-around pair (arg near +-pi) is handled by rotating.
  if (!circle.empty()) {
    size_t start = 0;
    if (std::abs(circle.front() - circle.back()) < std::abs(circle[0] - circle[1])) start = 1;
    for (size_t i = 0; i < circle.size(); i += 2) {
      Complex a = circle[(start + i) % circle.size()], b = circle[(start + i + 1) % circle.size()];
      if (std::abs(a - b) > kPairTol) fail(ErrorKind::RootClusterFailure, "unit-circle roots cannot be paired");
      Complex mid = a + b;
      chosen.push_back(mid / std::abs(mid));
    }
  }
  for (int i = 0; i < m_plus / 2; ++i) chosen.emplace_back(1.0);
  for (int i = 0; i < m_minus / 2; ++i) chosen.emplace_back(-1.0);
  if (static_cast<int>(chosen.size()) != N)
    fail(ErrorKind::RootClusterFailure, "spectral factor has the wrong degree");

  std::vector<Complex> c = poly_from_roots(chosen);
  const int start = -(N / 2);
  Filter1D q0(start, c);

  // Least-squares scale so that |q^|^2 matches t^ on a grid.
  double num = 0, den = 0;
  for (int i = 0; i < 512; ++i) {
    double w = 2.0 * std::numbers::pi * i / 512;
    double qq = std::norm(eval(q0, w));
    num += eval(t, w).real() * qq;
    den += qq * qq;
  }
  double s = std::sqrt(num / den);
  for (auto& x : c) x *= s;

  if (phase == FactorPhase::Conjugate) {
    std::vector<Complex> r(c.size());
    for (size_t j = 0; j < c.size(); ++j) r[j] = std::conj(c[c.size() - 1 - j]);
    c = r;
  }

  // Largest-magnitude coefficient real and positive.
  size_t imax = 0;
  double cmax = 0;
  for (size_t j = 0; j < c.size(); ++j)
    if (std::abs(c[j]) > cmax * (1 + 1e-9)) {
      cmax = std::abs(c[j]);
      imax = j;
    }
  Complex rot = std::conj(c[imax]) / std::abs(c[imax]);
  for (auto& x : c) x *= rot;

  bool real_input = true;
  for (const auto& x : t.coeffs()) real_input = real_input && std::abs(x.imag()) <= 1e-14 * ref;
  if (real_input) {
    bool real_output = true;
    for (const auto& x : c) real_output = real_output && std::abs(x.imag()) <= 1e-9 * cmax;
    if (real_output)
      for (auto& x : c) x = Complex(x.real(), 0.0);
  }

  Filter1D q(start, c);
  for (int i = 0; i < 4096; ++i) {
    double w = 2.0 * std::numbers::pi * i / 4096;
    if (std::abs(std::norm(eval(q, w)) - eval(t, w).real()) > 1e-8 * std::max(1.0, ref))
      fail(ErrorKind::RootClusterFailure, "spectral factor does not reproduce the input");
  }
  return q;
}

std::vector<Complex> abs_square_factor_realline(const std::vector<double>& T_in, RootChoice choice) {
  std::vector<double> T = T_in;
  double ref = 0;
  for (double x : T) ref = std::max(ref, std::abs(x));
  if (ref == 0) fail(ErrorKind::InvalidArgument, "cannot factor the zero polynomial");
  while (std::abs(T.back()) <= 1e-15 * ref) T.pop_back();
  const int deg = static_cast<int>(T.size()) - 1;
  if (deg % 2 != 0) fail(ErrorKind::OddRealRoot, "odd-degree polynomial changes sign on the real line");
  if (T.back() < 0) fail(ErrorKind::NegativePoly, "leading coefficient is negative");

  size_t z0 = 0;
  while (z0 < T.size() && std::abs(T[z0]) <= 1e-15 * ref) ++z0;
  if (z0 % 2 != 0) fail(ErrorKind::OddRealRoot, "root at x = 0 has odd multiplicity");

  std::vector<Complex> reduced(T.begin() + static_cast<long>(z0), T.end());
  std::vector<Complex> roots = polynomial_roots(reduced);

  std::vector<double> real_roots;
  std::vector<Complex> chosen;
  size_t pos = 0, neg = 0;
  for (const auto& r : roots) {
    if (std::abs(r.imag()) <= 1e-7 * std::max(1.0, std::abs(r))) {
      real_roots.push_back(r.real());
    } else if (r.imag() > 0) {
      ++pos;
      if (choice == RootChoice::PositiveImag) chosen.push_back(r);
    } else {
      ++neg;
      if (choice == RootChoice::NegativeImag) chosen.push_back(r);
    }
  }
  if (pos != neg) fail(ErrorKind::RootClusterFailure, "complex roots do not come in conjugate pairs");
  std::sort(real_roots.begin(), real_roots.end());
  for (size_t i = 0; i < real_roots.size();) {
    size_t j = i + 1;
    while (j < real_roots.size() && std::abs(real_roots[j] - real_roots[i]) <= kPairTol * std::max(1.0, std::abs(real_roots[i])))
      ++j;
    if ((j - i) % 2 != 0) fail(ErrorKind::OddRealRoot, "real root has odd multiplicity");
    double mean = 0;
    for (size_t k = i; k < j; ++k) mean += real_roots[k];
    mean /= static_cast<double>(j - i);
    for (size_t k = 0; k < (j - i) / 2; ++k) chosen.emplace_back(mean, 0.0);
    i = j;
  }
  for (size_t k = 0; k < z0 / 2; ++k) chosen.emplace_back(0.0, 0.0);

  std::vector<Complex> Q = poly_from_roots(chosen);
  for (auto& x : Q) x *= std::sqrt(T.back());

  for (int i = 0; i <= 400; ++i) {
    double x = -2.0 + 4.0 * i / 400;
    double tv = 0;
    for (size_t k = T.size(); k-- > 0;) tv = tv * x + T[k];
    if (std::abs(std::norm(poly_eval(Q, Complex(x))) - tv) > 1e-8 * std::max(1.0, ref))
      fail(ErrorKind::RootClusterFailure, "real-line factor does not reproduce the input");
  }
  return Q;
}

}  // namespace qfk
