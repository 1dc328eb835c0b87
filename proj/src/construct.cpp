#include "qfk/construct.hpp"

#include <string>

namespace qfk {

ExactFilter2D a2d(int n) { return lift(u_filter(n)); }

FilterBank thm22_bank(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "thm22 bank needs n >= 1");
  const Filter2D a = to_float(a2d(n));
  const Filter1D aD = daubechies(n);
  const Filter2D b2 = lift(half_arg_product(aD, aD));
  FilterBank bank;
  bank.filters = {a, canonical_highpass(a), b2, canonical_highpass(b2)};
  bank.dilation = DilationSpec::quincunx_sqrt2();
  bank.canonical_pairs = {{0, 1, {1, 0}}, {2, 3, {1, 0}}};
  bank.family = "thm22";
  bank.params = {{"n", std::to_string(n)}};
  return bank;
}

FilterBank complex_dc_bank(int n, RootChoice choice) {
  const ComplexSymmetricPair p = complex_symmetric_pair(n, {}, choice);
  FilterBank bank = double_canonical_from_uv(to_float(p.u), p.v);
  bank.family = "complex-dc";
  bank.params = {{"n", std::to_string(n)}};
  return bank;
}

FilterBank daubechies_tensor_bank(int n, int m) {
  const Filter1D an = daubechies(n), am = daubechies(m);
  FilterBank bank = tensor_multiple<Complex>({an, canonical_1d(an, 1)}, {am, modulate_pi(am)});
  bank.family = "tensor";
  bank.params = {{"n", std::to_string(n)}, {"m", std::to_string(m)}};
  return bank;
}

ExactFilter1D six_tap_lowpass() {
  std::vector<QComplex> c;
  for (int x : {-3, 5, 30, 30, 5, -3}) c.emplace_back(Rational(x, 64));
  return ExactFilter1D(-2, c);
}

FilterBank six_multiple_bank(const Filter1D& a, FactorPhase phase) {
  const std::vector<Filter1D> bank1d = double_canonical_1d(a, 1, 1, phase);
  const Filter1D u0 = complement_factor(a, phase);
  const auto [u1, u2] = partition_split(u0);
  FilterBank bank = tensor_multiple<Complex>(bank1d, {a, u1, u2});
  bank.family = "six-multiple";
  return bank;
}

namespace {

std::vector<Int2> gamma_set(int n) {
  std::vector<Int2> g;
  for (int m1 = 0; m1 < 2 * n; ++m1)
    for (int m2 = 0; m1 + m2 < 2 * n; ++m2) {
      if (m2 >= 2 * n - 1) continue;
      if (m1 == 0 && m2 % 2 == 1 && m2 <= 2 * n - 3) continue;
      g.push_back({m1, m2});
    }
  return g;
}

std::vector<Int2> full_moment_set(int n) {
  std::vector<Int2> g;
  for (int m1 = 0; m1 < 2 * n; ++m1)
    for (int m2 = 0; m1 + m2 < 2 * n; ++m2) g.push_back({m1, m2});
  return g;
}

std::vector<Int2> lambda_set(int n, int eps) {
  std::vector<Int2> l;
  for (int k1 = 1 - n; k1 <= n; ++k1)
    for (int k2 = 1 - n; k2 <= n; ++k2)
      if ((((k1 + k2) % 2) + 2) % 2 == eps) l.push_back({k1, k2});
  return l;
}

Rational rpow(int base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

struct Reduced {
  int rank = 0;
  bool consistent = true;
  std::vector<Rational> x;  // valid when rank == unknowns and consistent
};

// Reduced row echelon form of [k^mu | c^mu / 2] over the rationals.
Reduced reduce(const std::vector<Int2>& mus, const std::vector<Int2>& ks) {
  const size_t rows = mus.size(), cols = ks.size();
  std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols + 1));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) A[r][c] = rpow(ks[c][0], mus[r][0]) * rpow(ks[c][1], mus[r][1]);
    A[r][cols] = Rational(1) / (2 * rpow(2, mus[r][0] + mus[r][1]));
  }
  Reduced out;
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < rows; ++c) {
    size_t piv = row;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[row]);
    const Rational inv = 1 / A[row][c];
    for (size_t j = c; j <= cols; ++j) A[row][j] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || A[r][c] == 0) continue;
      const Rational f = A[r][c];
      for (size_t j = c; j <= cols; ++j) A[r][j] -= f * A[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  out.rank = static_cast<int>(row);
  for (size_t r = row; r < rows; ++r) out.consistent = out.consistent && A[r][cols] == 0;
  if (out.rank == static_cast<int>(cols)) {
    out.x.resize(cols);
    for (size_t r = 0; r < cols; ++r) out.x[pivot_col[r]] = A[r][cols];
  }
  return out;
}

}  // namespace

int moment_index_count(int n) { return static_cast<int>(gamma_set(n).size()); }

MomentSystemRanks moment_system_ranks(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "moment system needs n >= 1");
  MomentSystemRanks r;
  r.unknowns = 2 * n * n;
  for (int eps = 0; eps < 2; ++eps) {
    const auto l = lambda_set(n, eps);
    r.gamma_rank[eps] = reduce(gamma_set(n), l).rank;
    r.full_rank[eps] = reduce(full_moment_set(n), l).rank;
  }
  return r;
}

ExactFilter2D solve_minimal_filter(int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "moment system needs n >= 1");
  std::vector<std::pair<Int2, QComplex>> entries;
  for (int eps = 0; eps < 2; ++eps) {
    const auto l = lambda_set(n, eps);
    const Reduced red = reduce(full_moment_set(n), l);
    if (!red.consistent) fail(ErrorKind::SingularSystem, "moment system is inconsistent for n = " + std::to_string(n));
    if (red.rank != static_cast<int>(l.size()))
      fail(ErrorKind::SingularSystem, "moment system is rank deficient for n = " + std::to_string(n));
    for (size_t c = 0; c < l.size(); ++c) entries.push_back({l[c], QComplex(red.x[c])});
  }
  return ExactFilter2D::from_entries(entries);
}

}  // namespace qfk
