// Acceptance run: one PASS/FAIL line per criterion, with the measured values behind it.
#include "qfk/analysis.hpp"
#include "qfk/construct.hpp"
#include "qfk/errors.hpp"
#include "qfk/filters1d.hpp"
#include "qfk/smoothness.hpp"
#include "qfk/transform.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace qfk;

namespace {

const double kSm2D[] = {2.0, 3.0365, 3.5457, 4.0269, 4.4970};
const double kSm1D[] = {1.5, 2.4408, 3.1751, 3.7931, 4.3441};
const QPoint2 kHalf{Rational(1, 2), Rational(1, 2)};
const QPoint2 kHalfMinus{Rational(1, 2), Rational(-1, 2)};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects sub-checks of one criterion; any failed sub-check fails the criterion.
class Criterion {
 public:
  explicit Criterion(int id) : id_(id) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failed_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool finish() const {
    std::printf("criterion %d: %s\n", id_, pass_ ? "PASS" : "FAIL");
    for (const auto& s : notes_) std::printf("    %s\n", s.c_str());
    for (const auto& s : failed_) std::printf("    failed: %s\n", s.c_str());
    std::fflush(stdout);
    return pass_;
  }

 private:
  int id_;
  bool pass_ = true;
  std::vector<std::string> notes_, failed_;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Runs fn and reports an escaped library error as a failed sub-check.
void guarded(Criterion& c, const std::string& what, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    c.check(false, what + ": " + e.what());
  }
}

template <class S>
BasicFilter2D<S> rows(const std::vector<std::vector<S>>& r, int min1, int max2, const S& factor) {
  std::vector<std::pair<Int2, S>> e;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j)
      e.push_back({{min1 + static_cast<int>(j), max2 - static_cast<int>(i)}, factor * r[i][j]});
  return BasicFilter2D<S>::from_entries(e);
}

ExactFilter2D qrows(const std::vector<std::vector<int>>& m, int min1, int max2, Rational factor) {
  std::vector<std::vector<QComplex>> r;
  for (const auto& row : m) {
    r.emplace_back();
    for (int x : row) r.back().emplace_back(Rational(x));
  }
  return rows(r, min1, max2, QComplex(factor));
}

Filter2D frows(const std::vector<std::vector<Complex>>& r, int min1, int max2, double factor) {
  return rows(r, min1, max2, Complex(factor));
}

// ------------------------------------------------------------------------------------------------

struct SmoothnessTable {
  double transition2d[5], transition1d[5];
};

bool smoothness_table(SmoothnessTable& t) {
  Criterion c(1);
  const auto t0 = Clock::now();
  const auto M = DilationSpec::quincunx_sqrt2();
  for (int n = 1; n <= 5; ++n) {
    guarded(c, fmt("n=%d", n), [&] {
      const auto q = Clock::now();
      const auto r2 = transition_sm(to_float(a2d(n)), M);
      const double dt2 = seconds_since(q);
      const auto r1 = transition_sm(to_float(interpolatory(n)));
      t.transition2d[n - 1] = r2.sm2;
      t.transition1d[n - 1] = r1.sm2;
      c.note(fmt("n=%d  2D %.5f (want %.4f, |K|=%d, %s, %.1fs)  1D %.5f (want %.4f)", n, r2.sm2, kSm2D[n - 1],
                 r2.matrix_size, method_name(r2.method), dt2, r1.sm2, kSm1D[n - 1]));
      c.check(std::abs(r2.sm2 - kSm2D[n - 1]) <= 1e-3, fmt("2D n=%d off by %.2e", n, std::abs(r2.sm2 - kSm2D[n - 1])));
      c.check(std::abs(r1.sm2 - kSm1D[n - 1]) <= 1e-3, fmt("1D n=%d off by %.2e", n, std::abs(r1.sm2 - kSm1D[n - 1])));
      c.check(r2.method == SmoothnessMethod::TransitionSpectrum && r1.method == SmoothnessMethod::TransitionSpectrum,
              fmt("n=%d fell back to subdivision", n));
    });
  }
  const double total = seconds_since(t0);
  c.note(fmt("total runtime %.1fs (limit 120s)", total));
  c.check(total < 120.0, "runtime");
  return c.finish();
}

bool exact_examples() {
  Criterion c(2);
  guarded(c, "rational Haar bank", [&] {
    const auto [u, v] = haar_pair(0, 0);
    const auto bank = double_canonical_from_uv(u, v);
    const Rational q(1, 4);
    const bool ok = bank.filters[0] == qrows({{1, 1}, {1, 1}}, 0, 1, q) &&
                    bank.filters[1] == qrows({{-1, 1}, {1, -1}}, 0, 0, q) &&
                    bank.filters[2] == qrows({{1, -1}, {1, -1}}, 0, 1, q) &&
                    bank.filters[3] == qrows({{1, 1}, {-1, -1}}, 0, 0, q);
    c.note(fmt("rational 2x2 bank: %s", ok ? "identical" : "differs"));
    c.check(ok, "rational 2x2 bank");
  });
  guarded(c, "sqrt3 bank", [&] {
    const auto bank = thm22_bank(2);
    const double s = std::sqrt(3.0);
    const Filter2D want[4] = {
        frows({{-1, 0, 0, -1}, {0, 9, 9, 0}, {0, 9, 9, 0}, {-1, 0, 0, -1}}, -1, 2, 1.0 / 32),
        frows({{1, 0, 0, -1}, {0, -9, 9, 0}, {0, 9, -9, 0}, {-1, 0, 0, 1}}, -1, 1, 1.0 / 32),
        frows({{s - 2, 0, 0, 2 + s}, {0, 6 - s, -s - 6, 0}, {0, 6 - s, -s - 6, 0}, {s - 2, 0, 0, 2 + s}}, -1, 2, 1.0 / 32),
        frows({{-2 - s, 0, 0, s - 2}, {0, s + 6, 6 - s, 0}, {0, -s - 6, s - 6, 0}, {2 + s, 0, 0, 2 - s}}, -1, 1, 1.0 / 32)};
    double dev = 0;
    for (int i = 0; i < 4; ++i) dev = std::max(dev, max_abs_diff(bank.filters[i], want[i]));
    c.note(fmt("4x4 bank with sqrt3 entries: max deviation %.2e", dev));
    c.check(dev <= 1e-12, "4x4 bank with sqrt3 entries");
  });
  guarded(c, "complex 6x6 bank", [&] {
    const double s = std::sqrt(15.0);
    const auto pair = complex_symmetric_pair(3);
    std::vector<QComplex> u_taps;
    for (int x : {3, -25, 150, 150, -25, 3}) u_taps.emplace_back(Rational(x, 256));
    const bool u_ok = pair.u == ExactFilter1D(-2, u_taps);
    const Complex c1(60, 18 * s), c2(25, 6 * s);
    const Filter1D v_want(-2, {Complex(3) / 256.0, -c2 / 256.0, c1 / 256.0, -c1 / 256.0, c2 / 256.0, Complex(-3) / 256.0});
    const double dv = max_abs_diff(pair.v, v_want);

    const auto bank = complex_dc_bank(3);
    const Complex p(60, 18 * s), q(25, 6 * s), pc = std::conj(p), qc = std::conj(q);
    const Filter2D want[4] = {
        frows({{3, 0, 0, 0, 0, 3}, {0, -25, 0, 0, -25, 0}, {0, 0, 150, 150, 0, 0}, {0, 0, 150, 150, 0, 0},
               {0, -25, 0, 0, -25, 0}, {3, 0, 0, 0, 0, 3}},
              -2, 3, 1.0 / 512),
        frows({{-3, 0, 0, 0, 0, 3}, {0, 25, 0, 0, -25, 0}, {0, 0, -150, 150, 0, 0}, {0, 0, 150, -150, 0, 0},
               {0, -25, 0, 0, 25, 0}, {3, 0, 0, 0, 0, -3}},
              -2, 2, 1.0 / 512),
        frows({{3, 0, 0, 0, 0, -3}, {0, -q, 0, 0, q, 0}, {0, 0, p, -p, 0, 0}, {0, 0, p, -p, 0, 0}, {0, -q, 0, 0, q, 0},
               {3, 0, 0, 0, 0, -3}},
              -2, 3, 1.0 / 512),
        frows({{3, 0, 0, 0, 0, 3}, {0, -qc, 0, 0, -qc, 0}, {0, 0, pc, pc, 0, 0}, {0, 0, -pc, -pc, 0, 0},
               {0, qc, 0, 0, qc, 0}, {-3, 0, 0, 0, 0, -3}},
              -2, 2, 1.0 / 512)};
    double dev = 0;
    for (int i = 0; i < 4; ++i) dev = std::max(dev, max_abs_diff(bank.filters[i], want[i]));
    c.note(fmt("6x6 complex bank: u %s, v deviation %.2e, filter deviation %.2e", u_ok ? "exact" : "differs", dv, dev));
    c.check(u_ok, "u taps of the complex pair");
    c.check(dv <= 1e-12, "v taps with i sqrt15");
    c.check(dev <= 1e-12, "a, b1, b2, b3 with i sqrt15");
  });
  guarded(c, "one-dimensional banks", [&] {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    // b2^(w) = (u^(2w) + e^{-iw} conj(u^(2w)))/2, so u(k) = 2 b2(2k).
    const auto bank = double_canonical_1d(to_float(interpolatory(2)));
    const double t[4] = {2 - s3, -6 + s3, 6 + s3, -2 - s3};
    double du = 0;
    for (int k = -1; k <= 2; ++k) du = std::max(du, std::abs(2.0 * bank[2][2 * k] - s2 / 32 * t[k + 1]));
    c.note(fmt("u taps (sqrt2/32)(2-sqrt3, -6+sqrt3, 6+sqrt3, -2-sqrt3): max deviation %.2e", du));
    c.check(du <= 1e-12, "u taps from the interpolatory(2) complement");

    const auto six = double_canonical_1d(to_float(six_tap_lowpass()));
    const double f = std::sqrt(15.0) / 64;
    const Filter1D b2(-2, {Complex(-f), Complex(-f), Complex(2 * f), Complex(2 * f), Complex(-f), Complex(-f)});
    const double d2 = max_abs_diff(six[2], b2);
    c.note(fmt("six-tap b2 with sqrt15/64 coefficients: max deviation %.2e", d2));
    c.check(d2 <= 1e-12, "six-tap b2");
  });
  return c.finish();
}

bool uniqueness() {
  Criterion c(3);
  for (int n = 1; n <= 4; ++n)
    guarded(c, fmt("solve n=%d", n), [&] {
      const bool eq = solve_minimal_filter(n) == a2d(n);
      c.check(eq, fmt("minimal filter n=%d differs from the lifted u filter", n));
      if (n == 4) c.note("solve_minimal_filter(n) == lift(u_filter(n)) exactly for n = 1..4: " +
                         std::string(eq ? "yes" : "no"));
    });
  for (int n = 1; n <= 6; ++n)
    guarded(c, fmt("ranks n=%d", n), [&] {
      const auto r = moment_system_ranks(n);
      const bool gamma_ok = r.gamma_rank[0] == r.unknowns && r.gamma_rank[1] == r.unknowns;
      const bool full_ok = r.full_rank[0] == r.unknowns && r.full_rank[1] == r.unknowns;
      c.note(fmt("n=%d  unknowns %d  index-set rank %d/%d  all-moments rank %d/%d", n, r.unknowns, r.gamma_rank[0],
                 r.gamma_rank[1], r.full_rank[0], r.full_rank[1]));
      c.check(gamma_ok, fmt("moment matrix on the restricted index set is singular for n=%d", n));
      c.check(full_ok, fmt("full moment system rank deficient for n=%d", n));
    });
  return c.finish();
}

FilterBank drop_last(FilterBank b) {
  b.filters.pop_back();
  return b;
}

FilterBank perturb(FilterBank b) {
  const auto& f = b.filters[1];
  std::vector<std::pair<Int2, Complex>> e{{f.support_min(), Complex(1e-3)}};
  b.filters[1] = f + Filter2D::from_entries(e);
  return b;
}

bool tightness() {
  Criterion c(4);
  double worst = 0, weakest_broken = 1e300;
  int banks = 0;
  auto run = [&](const std::string& name, const std::function<FilterBank()>& make) {
    guarded(c, name, [&] {
      const auto bank = make();
      const double r = tight_residual(bank);
      const double rd = tight_residual(drop_last(bank));
      const double rp = tight_residual(perturb(bank));
      worst = std::max(worst, r);
      weakest_broken = std::min({weakest_broken, rd, rp});
      ++banks;
      c.check(r <= 1e-10, fmt("%s residual %.2e", name.c_str(), r));
      c.check(rd >= 1e-4, fmt("%s with a dropped filter: %.2e", name.c_str(), rd));
      c.check(rp >= 1e-4, fmt("%s perturbed: %.2e", name.c_str(), rp));
    });
  };
  for (int n = 1; n <= 5; ++n) run(fmt("thm22 n=%d", n), [n] { return thm22_bank(n); });
  for (int n = 1; n <= 4; ++n) run(fmt("complex-dc n=%d", n), [n] { return complex_dc_bank(n); });
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m)
      run(fmt("tensor n=%d m=%d", n, m), [n, m] { return daubechies_tensor_bank(n, m); });
  run("six-multiple interp2", [] { return six_multiple_bank(to_float(interpolatory(2))); });
  run("six-multiple six-tap", [] { return six_multiple_bank(to_float(six_tap_lowpass())); });
  c.note(fmt("%d of 20 banks constructed; worst residual %.2e; smallest broken residual %.2e", banks, worst,
             weakest_broken));
  return c.finish();
}

bool orders() {
  Criterion c(5);
  for (int n = 1; n <= 5; ++n)
    guarded(c, fmt("thm22 n=%d", n), [&] {
      const auto bank = thm22_bank(n);
      const int v1 = vanishing_moments(bank.filters[1]);
      const int v2 = vanishing_moments(bank.filters[2]);
      const int v3 = vanishing_moments(bank.filters[3]);
      c.note(fmt("thm22 n=%d  vmo = %d, %d, %d", n, v1, v2, v3));
      c.check(v1 == 2 * n, fmt("vmo(b1) = %d for n=%d", v1, n));
      c.check(v2 == v3 && v2 >= n, fmt("vmo(b2), vmo(b3) = %d, %d for n=%d", v2, v3, n));
    });

  auto relation = [&](const std::string& name, const FilterBank& bank) {
    const auto r = vm_sr_lpm_relation(bank);
    c.note(fmt("%s  min vmo %d, sr %d, lpm %d", name.c_str(), r.min_vmo, r.sr, r.lpm));
    c.check(r.pass, name + " violates min vmo = min(sr, lpm/2)");
  };
  for (int n = 1; n <= 5; ++n) guarded(c, "relation", [&] { relation(fmt("thm22 n=%d", n), thm22_bank(n)); });
  for (int n : {1, 3, 5}) guarded(c, "relation", [&] { relation(fmt("complex-dc n=%d", n), complex_dc_bank(n)); });
  guarded(c, "relation", [&] { relation("six-multiple interp2", six_multiple_bank(to_float(interpolatory(2)))); });
  guarded(c, "relation", [&] { relation("six-multiple six-tap", six_multiple_bank(to_float(six_tap_lowpass()))); });

  int checked = 0;
  std::string orders_seen;
  guarded(c, "lpm parity", [&] {
    auto parity1 = [&](const ExactFilter1D& f, const std::string& name) {
      c.check(symmetry_deviation_1d(f, 1, 1) == 0.0, name + " is not symmetric about 1/2");
      const int o = linear_phase_moments(f).order;
      orders_seen += " " + std::to_string(o);
      ++checked;
      c.check(o % 2 == 0, fmt("%s has odd lpm %d", name.c_str(), o));
    };
    for (int n = 1; n <= 5; ++n) parity1(u_filter(n), fmt("u_filter(%d)", n));
    parity1(six_tap_lowpass(), "six-tap filter");
    parity1(haar_pair(0, 0).first, "Haar u");
    for (int n = 1; n <= 5; ++n) {
      const auto a = a2d(n);
      c.check(symmetry_check(a, SymmetrySpec::d4(kHalf)).pass, fmt("a2d(%d) is not symmetric", n));
      const int o = linear_phase_moments(a).order;
      orders_seen += " " + std::to_string(o);
      ++checked;
      c.check(o % 2 == 0, fmt("a2d(%d) has odd lpm %d", n, o));
    }
  });
  c.note(fmt("lpm of %d filters symmetric about 1/2:%s", checked, orders_seen.c_str()));
  return c.finish();
}

bool symmetry() {
  Criterion c(6);
  for (int n = 1; n <= 5; ++n)
    guarded(c, "D4", [&] {
      const auto v = symmetry_check(a2d(n), SymmetrySpec::d4(kHalf));
      c.check(v.pass, fmt("a2d(%d) not D4-symmetric about (1/2,1/2)", n));
    });
  c.note("a2d(n), n = 1..5: D4-symmetric about (1/2,1/2) in rational arithmetic");

  guarded(c, "rational b1", [&] {
    const auto [u, v] = haar_pair(0, 0);
    const auto b1 = double_canonical_from_uv(u, v).filters[1];
    const auto det = symmetry_check(b1, SymmetrySpec::d4(kHalfMinus, Character::Det));
    const auto det_plus = symmetry_check(b1, SymmetrySpec::d4_plus(kHalfMinus, Character::Det));
    const auto entry = symmetry_check(b1, SymmetrySpec::d4(kHalfMinus, Character::EntryProduct));
    c.note(fmt("rational b1 (n=1) about (1/2,-1/2): det on D4 %s, det on {+-I, +-diag(1,-1)} %s, entry product on D4 %s",
               det.pass ? "holds" : "fails", det_plus.pass ? "holds" : "fails", entry.pass ? "holds" : "fails"));
    c.check(det.pass, "b1 det character on D4 (n=1, exact)");
  });
  for (int n = 2; n <= 5; ++n)
    guarded(c, "b1", [&] {
      const auto b1 = thm22_bank(n).filters[1];
      const auto det = symmetry_check(b1, SymmetrySpec::d4(kHalfMinus, Character::Det), 1e-12);
      const auto det_plus = symmetry_check(b1, SymmetrySpec::d4_plus(kHalfMinus, Character::Det), 1e-12);
      const auto entry = symmetry_check(b1, SymmetrySpec::d4(kHalfMinus, Character::EntryProduct), 1e-12);
      c.note(fmt("b1 n=%d: det on D4 deviation %.2e, det on D4+ %.2e, entry product on D4 %.2e", n, det.deviation,
                 det_plus.deviation, entry.deviation));
      c.check(det.pass, fmt("b1 det character on D4 (n=%d)", n));
    });

  for (int n = 1; n <= 5; ++n)
    guarded(c, "b2/b3", [&] {
      const auto bank = thm22_bank(n);
      const auto s2 = symmetry_check(bank.filters[2], SymmetrySpec::reflect_second(kHalf), 1e-12);
      const auto s3 = symmetry_check(bank.filters[3],
                                     SymmetrySpec::reflect_second({Rational(0), Rational(-1, 2)}, Character::E22), 1e-12);
      c.check(s2.pass, fmt("b2(k1, 1-k2) != b2(k) for n=%d (%.2e)", n, s2.deviation));
      c.check(s3.pass, fmt("b3(k1, -1-k2) != -b3(k) for n=%d (%.2e)", n, s3.deviation));
    });
  c.note("b2(k1, 1-k2) = b2(k) and b3(k1, -1-k2) = -b3(k) checked for n = 1..5");

  guarded(c, "complex characters", [&] {
    const auto bank = complex_dc_bank(3);
    const auto e11 = symmetry_check(bank.filters[2], SymmetrySpec::d4_plus(kHalf, Character::E11), 1e-12);
    const auto e22 = symmetry_check(bank.filters[3], SymmetrySpec::d4_plus(kHalfMinus, Character::E22), 1e-12);
    c.note(fmt("complex-dc n=3: b2 E11 about (1/2,1/2) deviation %.2e, b3 E22 about (1/2,-1/2) deviation %.2e",
               e11.deviation, e22.deviation));
    c.check(e11.pass, "E11 character of the complex b2");
    c.check(e22.pass, "E22 character of the complex b3");
  });
  return c.finish();
}

bool transforms() {
  Criterion c(7);
  auto run = [&](const std::string& name, const FilterBank& bank) {
    const auto t0 = Clock::now();
    double err = 0, energy = 0;
    for (unsigned seed : {1u, 2u, 3u}) {
      std::mt19937 gen(seed);
      std::uniform_real_distribution<double> d(-1, 1);
      ImageGrid img(64, 64);
      for (auto& x : img.samples) x = d(gen);
      const auto pyr = analyze(bank, img, 4);
      err = std::max(err, max_abs_error(synthesize(bank, pyr), img));
      energy = std::max(energy, frame_energy_residual(pyr, img));
    }
    const double dt = seconds_since(t0);
    c.note(fmt("%-22s round trip %.2e  energy %.2e  %.2fs", name.c_str(), err, energy, dt));
    c.check(err <= 1e-10, name + " round trip");
    c.check(energy <= 1e-10, name + " energy identity");
    c.check(dt < 5.0, name + " runtime");
  };
  guarded(c, "thm22", [&] { run("thm22 n=2", thm22_bank(2)); });
  guarded(c, "complex-dc", [&] { run("complex-dc n=3", complex_dc_bank(3)); });
  guarded(c, "six-multiple", [&] { run("six-multiple interp2", six_multiple_bank(to_float(interpolatory(2)))); });
  return c.finish();
}

bool dimension_relations() {
  Criterion c(8);
  for (int n = 1; n <= 3; ++n)
    guarded(c, fmt("n=%d", n), [&] {
      const Filter1D u = to_float(interpolatory(n));
      const auto r = thm42_checks(u, u);
      c.note(fmt("n=%d  sm(u,2) %.4f  embedded %.4f  tensor %.4f (>= %.4f)  sr %d + %d -> %d", n, r.sm_u,
                 r.sm_u_embedded, r.sm_tensor, 2 * r.sm_u - 0.05, r.sr_u, r.sr_v, r.sr_tensor));
      c.check(std::abs(r.sm_u_embedded - r.sm_u) <= 0.05, fmt("embedded exponent differs for n=%d", n));
      c.check(r.sm_tensor >= 2 * r.sm_u - 0.05, fmt("tensor exponent too small for n=%d", n));
      c.check(r.sr_tensor >= r.sr_u + r.sr_v, fmt("sum rules not additive for n=%d", n));
      if (n == 2) c.check(r.sr_tensor >= 8, "sr of the interpolatory(2) tensor below 8");
    });
  return c.finish();
}

bool orthonormality() {
  Criterion c(9);
  const auto M = DilationSpec::quincunx_sqrt2();
  for (int n = 1; n <= 4; ++n)
    guarded(c, fmt("n=%d", n), [&] {
      const auto a = a2d(n);
      const double r = orthonormal_residual(a, M);
      const auto defect = orthonormality_defect(a, M);
      c.note(fmt("a2d(%d): orthonormality residual %.4f, defect polynomial %s", n, r,
                 defect.empty() ? "zero" : "nonzero"));
      c.check(r > 1e-3, fmt("a2d(%d) looks orthonormal", n));
      c.check(!defect.empty(), fmt("defect polynomial of a2d(%d) vanishes", n));
    });
  return c.finish();
}

bool cross_validation(const SmoothnessTable& t) {
  Criterion c(10);
  const auto M = DilationSpec::quincunx_sqrt2();
  for (int n = 1; n <= 5; ++n)
    guarded(c, fmt("n=%d", n), [&] {
      const auto s2 = subdivision_sm(to_float(a2d(n)), M);
      const auto s1 = subdivision_sm(to_float(interpolatory(n)));
      const double d2 = std::abs(s2.sm2 - t.transition2d[n - 1]);
      const double d1 = std::abs(s1.sm2 - t.transition1d[n - 1]);
      c.note(fmt("n=%d  2D subdivision %.4f (delta %.4f, %d steps)  1D subdivision %.4f (delta %.4f, %d steps)", n,
                 s2.sm2, d2, s2.iterations, s1.sm2, d1, s1.iterations));
      c.check(d2 <= 0.05, fmt("2D n=%d", n));
      c.check(d1 <= 0.05, fmt("1D n=%d", n));
    });
  return c.finish();
}

}  // namespace

int main() {
  SmoothnessTable table{};
  int failed = 0;
  failed += !smoothness_table(table);
  failed += !exact_examples();
  failed += !uniqueness();
  failed += !tightness();
  failed += !orders();
  failed += !symmetry();
  failed += !transforms();
  failed += !dimension_relations();
  failed += !orthonormality();
  failed += !cross_validation(table);
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
