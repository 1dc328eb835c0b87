#include "qfk/smoothness.hpp"

#include "qfk/analysis.hpp"
#include "qfk/construct.hpp"
#include "qfk/errors.hpp"
#include "qfk/filters1d.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <type_traits>

namespace qfk {

const char* method_name(SmoothnessMethod m) {
  switch (m) {
    case SmoothnessMethod::TransitionSpectrum: return "transition-spectrum";
    case SmoothnessMethod::SubdivisionIteration: return "subdivision-iteration";
  }
  return "unknown";
}

namespace {

constexpr double kRemovalTol = 1e-6;
// Differences below this fraction of ||S^n delta||_2 are dominated by rounding in the symbol.
constexpr double kPrecisionGuard = 1e-12;
constexpr long kMaxGridPoints = 1L << 22;

// ---------------------------------------------------------------------------------------------
// Integer vectors and matrices in dimension D

template <int D>
using Vec = std::array<int, D>;
template <int D>
using IMat = std::array<std::array<int, D>, D>;

template <int D>
Vec<D> mv(const IMat<D>& m, const Vec<D>& k) {
  Vec<D> r{};
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) r[i] += m[i][j] * k[j];
  return r;
}

template <int D>
IMat<D> mm(const IMat<D>& a, const IMat<D>& b) {
  IMat<D> r{};
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int l = 0; l < D; ++l) r[i][j] += a[i][l] * b[l][j];
  return r;
}

template <int D>
IMat<D> identity() {
  IMat<D> r{};
  for (int i = 0; i < D; ++i) r[i][i] = 1;
  return r;
}

template <int D>
IMat<D> negate(IMat<D> m) {
  for (auto& row : m)
    for (auto& x : row) x = -x;
  return m;
}

template <int D>
IMat<D> transpose_of(const IMat<D>& m) {
  IMat<D> r{};
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) r[i][j] = m[j][i];
  return r;
}

template <int D>
struct Dilation {
  IMat<D> m{};
  IMat<D> adj{};
  int det = 0;

  explicit Dilation(const IMat<D>& mat) : m(mat) {
    if constexpr (D == 1) {
      adj = {{{1}}};
      det = m[0][0];
    } else {
      adj = {{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
      det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    }
    if (std::abs(det) < 2) fail(ErrorKind::BadDilation, "dilation must have |det| >= 2");
  }

  int abs_det() const { return std::abs(det); }

  /// Solves M j = x over the integers.
  bool solve(const Vec<D>& x, Vec<D>& j) const {
    const Vec<D> y = mv<D>(adj, x);
    for (int i = 0; i < D; ++i) {
      if (y[i] % det != 0) return false;
      j[i] = y[i] / det;
    }
    return true;
  }

  /// M^{-1} E M when it is an integer matrix.
  bool conjugate(const IMat<D>& e, IMat<D>& out) const {
    const IMat<D> t = mm<D>(mm<D>(adj, e), m);
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        if (t[i][j] % det != 0) return false;
        out[i][j] = t[i][j] / det;
      }
    return true;
  }

  /// sum_{j >= 1} ||M^{-j}||_2; every point of an invariant set lies within this multiple of
  /// max ||s||_2 over the support.
  double inverse_series() const {
    Eigen::Matrix<double, D, D> inv, p;
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) inv(i, j) = static_cast<double>(adj[i][j]) / det;
    p = inv;
    double c = 0;
    for (int j = 0; j < 400; ++j) {
      const double nrm = Eigen::JacobiSVD<Eigen::Matrix<double, D, D>>(p).singularValues()(0);
      c += nrm;
      if (nrm < 1e-9) return c;
      p = p * inv;
    }
    fail(ErrorKind::BadDilation, "dilation is not expanding");
  }
};

IMat<2> to_imat(const Mat2& m) { return m; }

template <int D, class Sc>
using Taps = std::vector<std::pair<Vec<D>, Sc>>;

Taps<2, Complex> taps_of(const Filter2D& f) {
  Taps<2, Complex> t;
  f.for_each_nonzero([&](const Int2& k, const Complex& v) { t.push_back({k, v}); });
  return t;
}

Taps<1, Complex> taps_of(const Filter1D& f) {
  Taps<1, Complex> t;
  for (int k = f.support_min(); k <= f.support_max(); ++k)
    if (!is_zero(f[k])) t.push_back({{k}, f[k]});
  return t;
}

/// Drops rounding-level entries and reports whether the taps are real.
template <int D>
Taps<D, Complex> clean(Taps<D, Complex> t, bool& real) {
  double mx = 0;
  for (const auto& [k, v] : t) mx = std::max(mx, std::abs(v));
  Taps<D, Complex> r;
  real = true;
  for (const auto& [k, v] : t) {
    if (std::abs(v) <= 1e-15 * mx) continue;
    if (std::abs(v.imag()) > 1e-15 * mx) real = false;
    r.push_back({k, v});
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Invariant set and transition operator

template <int D>
struct Box {
  int radius = 0;
  int side = 0;
  long total = 0;

  explicit Box(int r) : radius(r), side(2 * r + 1) {
    total = 1;
    for (int i = 0; i < D; ++i) total *= side;
  }
  long index(const Vec<D>& k) const {
    long idx = 0;
    for (int i = D; i-- > 0;) {
      if (k[i] < -radius || k[i] > radius) return -1;
      idx = idx * side + (k[i] + radius);
    }
    return idx;
  }
  Vec<D> point(long idx) const {
    Vec<D> k{};
    for (int i = 0; i < D; ++i) {
      k[i] = static_cast<int>(idx % side) - radius;
      idx /= side;
    }
    return k;
  }
};

/// Largest subset of a box containing the attractor that satisfies M^{-1}(K + supp u) cap Z^D cap K = K.
template <int D>
std::vector<Vec<D>> invariant_set(const std::vector<Vec<D>>& supp, const Dilation<D>& M) {
  double smax = 0;
  for (const auto& s : supp) {
    double r2 = 0;
    for (int x : s) r2 += static_cast<double>(x) * x;
    smax = std::max(smax, std::sqrt(r2));
  }
  const Box<D> box(static_cast<int>(std::ceil(M.inverse_series() * smax)) + 1);
  std::vector<char> in(static_cast<size_t>(box.total), 1), next;
  while (true) {
    next.assign(in.size(), 0);
    for (long idx = 0; idx < box.total; ++idx) {
      if (!in[static_cast<size_t>(idx)]) continue;
      const Vec<D> k = box.point(idx);
      for (const auto& s : supp) {
        Vec<D> x, j;
        for (int i = 0; i < D; ++i) x[i] = k[i] + s[i];
        if (!M.solve(x, j)) continue;
        const long t = box.index(j);
        if (t >= 0 && in[static_cast<size_t>(t)]) next[static_cast<size_t>(t)] = 1;
      }
    }
    if (next == in) break;
    in.swap(next);
  }
  std::vector<Vec<D>> K;
  for (long idx = 0; idx < box.total; ++idx)
    if (in[static_cast<size_t>(idx)]) K.push_back(box.point(idx));
  std::sort(K.begin(), K.end());
  return K;
}

template <class Sc>
Sc cast_scalar(const Complex& v) {
  if constexpr (std::is_same_v<Sc, double>)
    return v.real();
  else
    return v;
}

/// Diagonal similarity that equalizes row and column norms (Parlett-Reinsch), which keeps the
/// rounding error of the eigenvalue iteration proportional to the balanced norm.
template <class Sc>
void balance(Eigen::Matrix<Sc, Eigen::Dynamic, Eigen::Dynamic>& B) {
  const Eigen::Index n = B.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double c = B.col(i).cwiseAbs().sum() - std::abs(B(i, i));
      const double r = B.row(i).cwiseAbs().sum() - std::abs(B(i, i));
      if (c == 0 || r == 0) continue;
      double g = r / radix, f = 1, s = c + r;
      double cc = c;
      while (cc < g) {
        f *= radix;
        cc *= radix * radix;
      }
      g = r * radix;
      while (cc > g) {
        f /= radix;
        cc /= radix * radix;
      }
      if ((cc + r) / f < 0.95 * s) {
        converged = false;
        B.row(i) /= Sc(f);
        B.col(i) *= Sc(f);
      }
    }
  }
}

template <class Sc>
std::vector<double> eigen_moduli(Eigen::Matrix<Sc, Eigen::Dynamic, Eigen::Dynamic> B) {
  std::vector<double> out;
  if (B.rows() == 0) return out;
  balance<Sc>(B);
  if constexpr (std::is_same_v<Sc, double>) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(B, false);
    if (es.info() != Eigen::Success) fail(ErrorKind::SpectrumRemovalMismatch, "eigenvalue iteration did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::abs(es.eigenvalues()[i]));
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, false);
    if (es.info() != Eigen::Success) fail(ErrorKind::SpectrumRemovalMismatch, "eigenvalue iteration did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(std::abs(es.eigenvalues()[i]));
  }
  return out;
}

struct Spectrum {
  std::vector<double> moduli;  // |lambda| for every eigenvalue of T, with multiplicity
  int size = 0;
  int sectors = 0;
};

/// Candidate symmetry groups, largest first.  Each is listed as {I, g1, g2, g1 g2} or {I, g1}.
template <int D>
std::vector<std::vector<IMat<D>>> candidate_groups() {
  const IMat<D> I = identity<D>(), J = negate<D>(I);
  if constexpr (D == 1) {
    return {{I, J}, {I}};
  } else {
    const IMat<2> S{{{0, 1}, {1, 0}}}, R{{{1, 0}, {0, -1}}};
    return {{I, J, S, negate<2>(S)}, {I, J, R, negate<2>(R)}, {I, J}, {I}};
  }
}

/// Spectrum of T with T(j, k) = |det M| u(Mj - k) on K.  When the taps are invariant under a
/// group G of signed permutations commuting with M, P_E T = T P_E and T splits by the characters
/// of G.  (Squaring T would admit all of D4 for the quincunx matrices, but it merges the polynomial
/// eigenvalue clusters and costs the accuracy the removal step needs.)
template <int D, class Sc>
Spectrum transition_spectrum(const Taps<D, Complex>& u, const Dilation<D>& M) {
  std::vector<Vec<D>> supp;
  for (const auto& [k, v] : u) supp.push_back(k);
  const std::vector<Vec<D>> K = invariant_set<D>(supp, M);
  const int n = static_cast<int>(K.size());

  std::map<Vec<D>, int> pos;
  for (int i = 0; i < n; ++i) pos[K[i]] = i;
  std::map<Vec<D>, Complex> umap;
  double umax = 0;
  for (const auto& [k, v] : u) {
    umap[k] = v;
    umax = std::max(umax, std::abs(v));
  }

  using SparseT = Eigen::SparseMatrix<Sc, Eigen::RowMajor>;
  std::vector<Eigen::Triplet<Sc>> trip;
  const double scale = M.abs_det();
  for (int r = 0; r < n; ++r) {
    const Vec<D> Mj = mv<D>(M.m, K[r]);
    for (const auto& [s, v] : u) {
      Vec<D> k;
      for (int i = 0; i < D; ++i) k[i] = Mj[i] - s[i];
      const auto it = pos.find(k);
      if (it != pos.end()) trip.emplace_back(r, it->second, cast_scalar<Sc>(scale * v));
    }
  }
  SparseT T(n, n);
  T.setFromTriplets(trip.begin(), trip.end());

  auto fixes_u = [&](const IMat<D>& e) {
    for (const auto& [k, v] : u) {
      const auto it = umap.find(mv<D>(e, k));
      const Complex w = it == umap.end() ? Complex{} : it->second;
      if (std::abs(w - v) > 1e-13 * umax) return false;
    }
    return true;
  };
  auto fixes_K = [&](const IMat<D>& e) {
    for (const auto& k : K)
      if (!pos.count(mv<D>(e, k))) return false;
    return true;
  };
  auto valid = [&](const IMat<D>& e) { return fixes_u(e) && fixes_K(e) && mm<D>(e, M.m) == mm<D>(M.m, e); };

  std::vector<IMat<D>> group{identity<D>()};
  for (const auto& g : candidate_groups<D>())
    if (std::all_of(g.begin(), g.end(), valid)) {
      group = g;
      break;
    }

  // Orbits of G on K and the image table img[e][i].
  const int gs = static_cast<int>(group.size());
  std::vector<std::vector<int>> img(static_cast<size_t>(gs), std::vector<int>(static_cast<size_t>(n)));
  for (int e = 0; e < gs; ++e)
    for (int i = 0; i < n; ++i) img[e][i] = pos.at(mv<D>(group[e], K[i]));
  std::vector<int> reps;
  std::vector<char> seen(static_cast<size_t>(n), 0);
  // The largest orbit element represents the orbit.  The eigenvalue iteration is sensitive to the
  // ordering near the polynomial clusters, and this choice is the one validated against LAPACK.
  for (int i = n - 1; i >= 0; --i) {
    if (seen[i]) continue;
    reps.push_back(i);
    for (int e = 0; e < gs; ++e) seen[img[e][i]] = 1;
  }
  std::reverse(reps.begin(), reps.end());

  // Characters of {I, g1, g2, g1 g2} or {I, g1}.
  std::vector<std::vector<int>> chars;
  if (gs == 4) {
    for (int c1 : {1, -1})
      for (int c2 : {1, -1}) chars.push_back({1, c1, c2, c1 * c2});
  } else if (gs == 2) {
    chars = {{1, 1}, {1, -1}};
  } else {
    chars = {{1}};
  }

  Spectrum sp;
  sp.size = n;
  for (const auto& chi : chars) {
    std::vector<int> cols, stab;
    for (int rep : reps) {
      bool ok = true;
      int st = 0;
      for (int e = 0; e < gs; ++e)
        if (img[e][rep] == rep) {
          ++st;
          ok = ok && chi[e] == 1;
        }
      if (ok) {
        cols.push_back(rep);
        stab.push_back(st);
      }
    }
    const int m = static_cast<int>(cols.size());
    if (m == 0) continue;
    using Dense = Eigen::Matrix<Sc, Eigen::Dynamic, Eigen::Dynamic>;
    Dense P = Dense::Zero(n, m);
    for (int c = 0; c < m; ++c)
      for (int e = 0; e < gs; ++e) P(img[e][cols[c]], c) += Sc(chi[e]);
    const Dense W = T * P;
    Dense B(m, m);
    for (int r = 0; r < m; ++r) B.row(r) = W.row(cols[r]) / Sc(stab[r]);
    for (double mod : eigen_moduli<Sc>(B)) sp.moduli.push_back(mod);
    ++sp.sectors;
  }
  if (static_cast<int>(sp.moduli.size()) != n)
    fail(ErrorKind::SpectrumRemovalMismatch, "symmetry sectors do not account for the whole spectrum");
  return sp;
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Removes |det|^{-t/d} with multiplicity C(t + d - 1, d - 1) for t < two_sr; returns the largest
/// remaining modulus.
double remaining_max(std::vector<double> moduli, int d, int abs_det, int two_sr) {
  for (int t = 0; t < two_sr; ++t) {
    const double target = std::pow(static_cast<double>(abs_det), -static_cast<double>(t) / d);
    const long mult = binomial(t + d - 1, d - 1);
    for (long c = 0; c < mult; ++c) {
      if (moduli.empty())
        fail(ErrorKind::SpectrumRemovalMismatch, "spectrum exhausted at t = " + std::to_string(t));
      auto best = std::min_element(moduli.begin(), moduli.end(), [&](double x, double y) {
        return std::abs(x - target) < std::abs(y - target);
      });
      if (std::abs(*best - target) > kRemovalTol)
        fail(ErrorKind::SpectrumRemovalMismatch, "no eigenvalue of modulus " + std::to_string(target) +
                                                     " (t = " + std::to_string(t) + ")");
      moduli.erase(best);
    }
  }
  if (moduli.empty()) fail(ErrorKind::SpectrumRemovalMismatch, "no eigenvalue left after removal");
  return *std::max_element(moduli.begin(), moduli.end());
}

template <int D, class F>
SmoothnessResult transition_generic(const F& a, const Dilation<D>& M, int sr) {
  bool real = true;
  const auto u = clean<D>(taps_of(mul(a, adjoint(a))), real);
  const Spectrum sp = real ? transition_spectrum<D, double>(u, M) : transition_spectrum<D, Complex>(u, M);
  const double lambda = remaining_max(sp.moduli, D, M.abs_det(), 2 * sr);
  SmoothnessResult r;
  r.method = SmoothnessMethod::TransitionSpectrum;
  r.m_used = sr;
  r.matrix_size = sp.size;
  r.sectors = sp.sectors;
  r.rho_m = std::sqrt(M.abs_det() * lambda);
  r.sm2 = -(D / 2.0) * std::log(lambda) / std::log(static_cast<double>(M.abs_det()));
  return r;
}

// ---------------------------------------------------------------------------------------------
// Subdivision iteration on a periodic grid

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(int D, const int* dims, Complex* buf, int sign) {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(buf);
    plan_ = fftw_plan_dft(D, dims, p, p, sign, FFTW_ESTIMATE);
    if (!plan_) fail(ErrorKind::InvalidArgument, "FFT planning failed");
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  void run() { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

template <int D>
struct Grid {
  int N = 0;
  long total = 0;
  explicit Grid(int n) : N(n) {
    total = 1;
    for (int i = 0; i < D; ++i) total *= N;
  }
  // Row-major with the first coordinate outermost, matching FFTW's layout.
  long flat(const Vec<D>& q) const {
    long idx = 0;
    for (int i = 0; i < D; ++i) idx = idx * N + (((q[i] % N) + N) % N);
    return idx;
  }
  Vec<D> unflat(long idx) const {
    Vec<D> q{};
    for (int i = D; i-- > 0;) {
      q[i] = static_cast<int>(idx % N);
      idx /= N;
    }
    return q;
  }
};

/// Side of a grid on which S^n delta followed by an m-th difference does not alias.
template <int D>
long grid_side(const Taps<D, Complex>& a, const Dilation<D>& M, int n, int m) {
  Vec<D> lo{}, hi{};
  for (int i = 0; i < D; ++i) {
    lo[i] = std::numeric_limits<int>::max();
    hi[i] = std::numeric_limits<int>::min();
  }
  for (const auto& [k, v] : a)
    for (int i = 0; i < D; ++i) {
      lo[i] = std::min(lo[i], k[i]);
      hi[i] = std::max(hi[i], k[i]);
    }
  std::array<long, D> width{};
  IMat<D> P = identity<D>();
  for (int j = 0; j < n; ++j) {
    // Width of M^j applied to the bounding box of supp a.
    for (int i = 0; i < D; ++i) {
      long w = 0;
      for (int c = 0; c < D; ++c) w += static_cast<long>(std::abs(P[i][c])) * (hi[c] - lo[c]);
      width[i] += w;
    }
    P = mm<D>(M.m, P);
    for (const auto& row : P)
      for (int x : row)
        if (std::abs(x) > (1 << 28)) return std::numeric_limits<long>::max();
  }
  long side = 0;
  for (int i = 0; i < D; ++i) side = std::max(side, width[i] + m + 1);
  return side + (side % 2);
}

template <int D>
std::vector<Vec<D>> multi_indices(int m) {
  std::vector<Vec<D>> r;
  if constexpr (D == 1) {
    r.push_back({m});
  } else {
    for (int j = 0; j <= m; ++j) r.push_back({j, m - j});
  }
  return r;
}

template <int D>
SubdivisionEstimate subdivision_generic(const Taps<D, Complex>& a, const Dilation<D>& M, int m, NormKind p,
                                        int n_iters) {
  if (n_iters < 4) fail(ErrorKind::InvalidArgument, "subdivision needs at least 4 iterations");
  if (m < 0) fail(ErrorKind::InvalidArgument, "difference order must be nonnegative");
  if (a.empty()) fail(ErrorKind::InvalidArgument, "empty filter");

  // Largest iteration count whose grid fits the memory cap.
  int n_eff = 0;
  long side = 0;
  for (int n = 1; n <= n_iters; ++n) {
    const long s = grid_side<D>(a, M, n, m);
    double pts = 1;
    for (int i = 0; i < D; ++i) pts *= static_cast<double>(s);
    if (pts > static_cast<double>(kMaxGridPoints)) break;
    n_eff = n;
    side = s;
  }
  if (n_eff < 4) fail(ErrorKind::InvalidArgument, "filter support too large for the subdivision grid");

  const Grid<D> grid(static_cast<int>(side));
  const int N = grid.N;
  int dims[D];
  for (int i = 0; i < D; ++i) dims[i] = N;
  const double two_pi = 2 * std::numbers::pi;

  // Symbol of a on the grid.
  std::vector<Complex> A(static_cast<size_t>(grid.total));
  {
    for (const auto& [k, v] : a) A[static_cast<size_t>(grid.flat(k))] += v;
    FftPlan fwd(D, dims, A.data(), FFTW_FORWARD);
    fwd.run();
  }
  const IMat<D> MT = transpose_of<D>(M.m);
  const auto mus = multi_indices<D>(m);

  // |2 sin(pi q / N)|^{2 j} per axis and j <= m.
  std::vector<std::vector<double>> spow(static_cast<size_t>(m + 1), std::vector<double>(static_cast<size_t>(N)));
  for (int q = 0; q < N; ++q) {
    const double s = std::pow(2 * std::sin(std::numbers::pi * q / N), 2);
    double acc = 1;
    for (int j = 0; j <= m; ++j) {
      spow[j][q] = acc;
      acc *= s;
    }
  }

  struct State {
    std::vector<Complex> prod;
    std::vector<long> qmap;
    double logscale = 0;
  };
  auto init = [&](State& st) {
    st.prod.assign(static_cast<size_t>(grid.total), Complex(1.0));
    st.qmap.resize(static_cast<size_t>(grid.total));
    for (long i = 0; i < grid.total; ++i) st.qmap[i] = i;
    st.logscale = 0;
  };
  const double det_scale = M.abs_det();
  // prod(w) <- prod(w) |det M| a^((M^T)^j w), renormalized to max modulus 1.
  auto advance = [&](State& st) {
    double mx = 0;
    for (long i = 0; i < grid.total; ++i) {
      st.prod[i] *= det_scale * A[static_cast<size_t>(st.qmap[i])];
      mx = std::max(mx, std::abs(st.prod[i]));
      st.qmap[i] = grid.flat(mv<D>(MT, grid.unflat(st.qmap[i])));
    }
    if (mx > 0) {
      for (auto& x : st.prod) x /= mx;
      st.logscale += std::log(mx);
    }
  };
  // log ||S^n delta||_2 and log ||nabla^mu S^n delta||_2 via Parseval.
  auto l2_norms = [&](const State& st, double& log_ref, std::vector<double>& log_mu) {
    double ref = 0;
    std::vector<double> acc(mus.size(), 0.0);
    for (long i = 0; i < grid.total; ++i) {
      const double P = std::norm(st.prod[i]);
      if (P == 0) continue;
      ref += P;
      const Vec<D> q = grid.unflat(i);
      for (size_t u = 0; u < mus.size(); ++u) {
        double w = P;
        for (int c = 0; c < D; ++c) w *= spow[mus[u][c]][q[c]];
        acc[u] += w;
      }
    }
    const double inv = 1.0 / static_cast<double>(grid.total);
    log_ref = st.logscale + 0.5 * std::log(ref * inv);
    log_mu.resize(mus.size());
    for (size_t u = 0; u < mus.size(); ++u)
      log_mu[u] = acc[u] > 0 ? st.logscale + 0.5 * std::log(acc[u] * inv) : -std::numeric_limits<double>::infinity();
  };

  // First pass: L2 norms and the precision guard decide the last usable step.
  State st;
  init(st);
  std::vector<std::vector<double>> log_norms(1);
  {
    double lr;
    l2_norms(st, lr, log_norms[0]);
  }
  int last = 0;
  bool limited = false;
  for (int n = 1; n <= n_eff; ++n) {
    advance(st);
    double lr;
    std::vector<double> lm;
    l2_norms(st, lr, lm);
    const double worst = *std::min_element(lm.begin(), lm.end());
    if (n > 4 && worst - lr < std::log(kPrecisionGuard)) {
      limited = true;
      break;
    }
    log_norms.push_back(lm);
    last = n;
  }

  if (p == NormKind::LInf) {
    // Second pass: sup norms from the inverse transform at steps last - 4 and last.
    std::vector<Complex> buf(static_cast<size_t>(grid.total));
    FftPlan inv(D, dims, buf.data(), FFTW_BACKWARD);
    std::vector<std::vector<Complex>> dsym(static_cast<size_t>(m + 1), std::vector<Complex>(static_cast<size_t>(N)));
    for (int q = 0; q < N; ++q) {
      const Complex d1 = 1.0 - std::polar(1.0, -two_pi * q / N);
      Complex acc(1.0);
      for (int j = 0; j <= m; ++j) {
        dsym[j][q] = acc;
        acc *= d1;
      }
    }
    auto sup_norms = [&](const State& s, std::vector<double>& out) {
      out.assign(mus.size(), 0);
      for (size_t u = 0; u < mus.size(); ++u) {
        for (long i = 0; i < grid.total; ++i) {
          const Vec<D> q = grid.unflat(i);
          Complex w = s.prod[i];
          for (int c = 0; c < D; ++c) w *= dsym[mus[u][c]][q[c]];
          buf[i] = w;
        }
        inv.run();
        double mx = 0;
        for (const auto& x : buf) mx = std::max(mx, std::abs(x));
        out[u] = s.logscale + std::log(mx / static_cast<double>(grid.total));
      }
    };
    State s2;
    init(s2);
    std::vector<double> first, second;
    for (int n = 0; n <= last; ++n) {
      if (n > 0) advance(s2);
      if (n == last - 4) sup_norms(s2, first);
      if (n == last) sup_norms(s2, second);
    }
    log_norms.assign(static_cast<size_t>(last + 1), {});
    log_norms[last - 4] = first;
    log_norms[last] = second;
  }

  SubdivisionEstimate est;
  est.iterations = last;
  est.grid = N;
  est.precision_limited = limited;
  est.rho = 0;
  for (size_t u = 0; u < mus.size(); ++u)
    est.rho = std::max(est.rho, std::exp((log_norms[last][u] - log_norms[last - 4][u]) / 4));
  return est;
}

template <int D, class F>
SmoothnessResult subdivision_result(const F& a, const Dilation<D>& M, int sr, NormKind p, int n_iters) {
  const auto est = subdivision_generic<D>(taps_of(a), M, sr, p, n_iters);
  SmoothnessResult r;
  r.method = SmoothnessMethod::SubdivisionIteration;
  r.m_used = sr;
  r.rho_m = est.rho;
  r.iterations = est.iterations;
  r.grid = est.grid;
  const double d_over_p = p == NormKind::L2 ? D / 2.0 : 0.0;
  r.sm2 = d_over_p - D * std::log(est.rho) / std::log(static_cast<double>(M.abs_det()));
  if (est.precision_limited) r.note = "stopped at the rounding floor";
  return r;
}

const Dilation<1>& dyadic1() {
  static const Dilation<1> d(IMat<1>{{{2}}});
  return d;
}

}  // namespace

SmoothnessResult transition_sm(const Filter2D& a, const DilationSpec& M) {
  const int sr = sum_rules(a, M);
  const Dilation<2> dil(to_imat(M.matrix()));
  try {
    return transition_generic<2>(a, dil, sr);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SpectrumRemovalMismatch) throw;
    SmoothnessResult r = subdivision_result<2>(a, dil, sr, NormKind::L2, 16);
    r.note = e.what();
    return r;
  }
}

SmoothnessResult transition_sm(const Filter1D& a) {
  const int sr = sum_rules(a);
  try {
    return transition_generic<1>(a, dyadic1(), sr);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SpectrumRemovalMismatch) throw;
    SmoothnessResult r = subdivision_result<1>(a, dyadic1(), sr, NormKind::L2, 24);
    r.note = e.what();
    return r;
  }
}

SubdivisionEstimate subdivision_estimate(const Filter2D& a, const DilationSpec& M, int m, NormKind p, int n_iters) {
  return subdivision_generic<2>(taps_of(a), Dilation<2>(to_imat(M.matrix())), m, p, n_iters);
}

SubdivisionEstimate subdivision_estimate(const Filter1D& a, int m, NormKind p, int n_iters) {
  return subdivision_generic<1>(taps_of(a), dyadic1(), m, p, n_iters);
}

double subdivision_rho(const Filter2D& a, const DilationSpec& M, int m, NormKind p, int n_iters) {
  return subdivision_estimate(a, M, m, p, n_iters).rho;
}

double subdivision_rho(const Filter1D& a, int m, NormKind p, int n_iters) {
  return subdivision_estimate(a, m, p, n_iters).rho;
}

SmoothnessResult subdivision_sm(const Filter2D& a, const DilationSpec& M, NormKind p, int n_iters) {
  return subdivision_result<2>(a, Dilation<2>(to_imat(M.matrix())), sum_rules(a, M), p, n_iters);
}

SmoothnessResult subdivision_sm(const Filter1D& a, NormKind p, int n_iters) {
  return subdivision_result<1>(a, dyadic1(), sum_rules(a), p, n_iters);
}

std::vector<Table1Row> table1(int n_max, bool cross_check) {
  if (n_max < 1 || n_max > 8) fail(ErrorKind::InvalidArgument, "table rows are limited to n = 1..8");
  std::vector<Table1Row> rows;
  const DilationSpec M = DilationSpec::quincunx_sqrt2();
  for (int n = 1; n <= n_max; ++n) {
    Table1Row row;
    row.n = n;
    const Filter2D a = to_float(a2d(n));
    const Filter1D b = to_float(interpolatory(n));
    row.quincunx = transition_sm(a, M);
    row.dyadic = transition_sm(b);
    if (cross_check) {
      row.cross_checked = true;
      row.quincunx_subdivision = subdivision_sm(a, M);
      row.dyadic_subdivision = subdivision_sm(b);
    }
    rows.push_back(row);
  }
  return rows;
}

Thm42Report thm42_checks(const Filter1D& u, const Filter1D& v, double tol) {
  if (std::abs(eval(u, 0.0) - 1.0) > 1e-12 || std::abs(eval(v, 0.0) - 1.0) > 1e-12)
    fail(ErrorKind::NotLowpass, "both filters must satisfy f^(0) = 1");
  const DilationSpec M = DilationSpec::quincunx_sqrt2();
  Thm42Report r;
  r.tolerance = tol;
  r.sm_u = transition_sm(u).sm2;
  r.sm_v = transition_sm(v).sm2;
  r.sm_u_embedded = transition_sm(embed_first_axis(u), M).sm2;
  r.sm_conv = transition_sm(mul(u, v)).sm2;
  const Filter2D t = tensor(u, v);
  r.sm_tensor = transition_sm(t, M).sm2;
  r.sr_u = sum_rules(u);
  r.sr_v = sum_rules(v);
  r.sr_tensor = sum_rules(t, M);
  r.embedded_equal = r.sm_u < 0 || std::abs(r.sm_u_embedded - r.sm_u) <= tol;
  r.conv_superadditive = r.sm_conv >= r.sm_u + r.sm_v - tol;
  r.tensor_superadditive = r.sm_tensor >= r.sm_u + r.sm_v - tol;
  r.sr_additive = r.sr_tensor >= r.sr_u + r.sr_v;
  return r;
}

}  // namespace qfk
