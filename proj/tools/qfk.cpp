// Command-line front end.  Talks to the library only through the C interface.
#include "qfk/qframelet.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kParse = 3, kConstruction = 4, kVerification = 5, kDimension = 6 };

int exit_for(qfk_status s) {
  switch (s) {
    case QFK_OK:
      return kOk;
    case QFK_ERR_PARSE:
    case QFK_ERR_IO:
      return kParse;
    case QFK_ERR_BAD_DIMENSIONS:
    case QFK_ERR_DIMENSION_MISMATCH:
    case QFK_ERR_METADATA_MISMATCH:
      return kDimension;
    case QFK_ERR_NULL_POINTER:
    case QFK_ERR_INTERNAL:
      return kInternal;
    default:
      return kConstruction;
  }
}

/// Thrown after a failed library call; carries the exit code.
struct Failure {
  int code;
};

void check(qfk_status s) {
  if (s == QFK_OK) return;
  std::fprintf(stderr, "error: %s\n", qfk_last_error());
  throw Failure{exit_for(s)};
}

struct BankDeleter {
  void operator()(qfk_bank* b) const { qfk_bank_free(b); }
};
struct ImageDeleter {
  void operator()(qfk_image* i) const { qfk_image_free(i); }
};
struct PyramidDeleter {
  void operator()(qfk_pyramid* p) const { qfk_pyramid_free(p); }
};
using Bank = std::unique_ptr<qfk_bank, BankDeleter>;
using Image = std::unique_ptr<qfk_image, ImageDeleter>;
using Pyramid = std::unique_ptr<qfk_pyramid, PyramidDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  qfk_string_free(s);
  return out;
}

Bank load_bank(const std::string& path) {
  qfk_bank* b = nullptr;
  check(qfk_bank_load(path.c_str(), &b));
  return Bank(b);
}

/// QFK_TOLERANCE overrides the default verification threshold.
double tolerance() {
  const char* env = std::getenv("QFK_TOLERANCE");
  if (!env || !*env) return 1e-10;
  char* end = nullptr;
  const double t = std::strtod(env, &end);
  if (*end != '\0' || !(t > 0) || !std::isfinite(t)) {
    std::fprintf(stderr, "error: QFK_TOLERANCE must be a positive number, got '%s'\n", env);
    throw Failure{kUsage};
  }
  return t;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
    throw Failure{kParse};
  }
}

std::string fmt(double x, const char* f = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void print_summary(qfk_bank* bank, double tol) {
  int count = 0;
  check(qfk_bank_filter_count(bank, &count));
  std::printf("filters: %d\n", count);
  for (int i = 0; i < count; ++i) {
    int m1, m2, n1, n2;
    check(qfk_bank_filter_extent(bank, i, &m1, &m2, &n1, &n2));
    std::printf("  %s %d: support [%d,%d] x [%d,%d]\n", i == 0 ? "low-pass " : "high-pass", i, m1, m1 + n1 - 1, m2,
                m2 + n2 - 1);
  }
  qfk_verify_result r{};
  check(qfk_bank_verify(bank, tol, &r, nullptr));
  std::printf("sum rules: %d, linear-phase moments: %d, min vanishing moments: %d\n", r.sum_rules,
              r.linear_phase_moments, r.min_vanishing_moments);
  std::printf("tight residual: %s\n", fmt(r.tight_residual, "%.3e").c_str());
}

// ---- gen ------------------------------------------------------------------------------------

struct GenOptions {
  std::string family;
  int n = 1, m = 1, j = 0, k = 0;
  std::string a = "interp2", phase = "match", root = "negative", dilation = "M_sqrt2";
  std::string out;
  bool with_report = false;
};

int run_gen(const GenOptions& o) {
  std::ostringstream p;
  p << "{\"n\":" << o.n << ",\"m\":" << o.m << ",\"j\":" << o.j << ",\"k\":" << o.k << ",\"a\":\"" << json_escape(o.a)
    << "\",\"phase\":\"" << json_escape(o.phase) << "\",\"root\":\"" << json_escape(o.root) << "\",\"dilation\":\""
    << json_escape(o.dilation) << "\"}";
  qfk_bank* raw = nullptr;
  check(qfk_bank_generate(o.family.c_str(), p.str().c_str(), &raw));
  Bank bank(raw);
  const double tol = tolerance();
  const std::string path = o.out.empty() ? o.family + ".json" : o.out;
  check(qfk_bank_save(bank.get(), path.c_str(), o.with_report, tol));
  std::printf("wrote %s\n", path.c_str());
  print_summary(bank.get(), tol);
  return kOk;
}

// ---- verify ---------------------------------------------------------------------------------

int run_verify(const std::string& path, const std::string& json_out) {
  Bank bank = load_bank(path);
  const double tol = tolerance();
  qfk_verify_result r{};
  char* js = nullptr;
  check(qfk_bank_verify(bank.get(), tol, &r, &js));
  const std::string report = take(js);
  auto verdict = [](int ok) { return ok ? "pass" : "FAIL"; };
  std::printf("tolerance: %s\n", fmt(tol, "%.3e").c_str());
  std::printf("tight residual: %s  %s\n", fmt(r.tight_residual, "%.3e").c_str(), verdict(r.tight_pass));
  std::printf("canonical pairs: max deviation %s  %s\n", fmt(r.canonical_max_deviation, "%.3e").c_str(),
              verdict(r.canonical_pass));
  std::printf("sum rules: %d\nlinear-phase moments: %d\nmin vanishing moments: %d\n", r.sum_rules,
              r.linear_phase_moments, r.min_vanishing_moments);
  std::printf("order relation min vmo = min(sr, lpm/2): %s\n", r.order_relation_pass ? "holds" : "does not hold");
  std::printf("filters with a detected symmetry: %d\n", r.symmetric_filters);
  if (!json_out.empty()) write_text(json_out, report + "\n");
  std::printf("verdict: %s\n", r.pass ? "PASS" : "FAIL");
  return r.pass ? kOk : kVerification;
}

// ---- smoothness -----------------------------------------------------------------------------

struct SmoothOptions {
  bool table1 = false;
  int nmax = 5;
  std::string bank;
  int n = 0;
  std::string method = "spectrum";
};

const char* method_label(const qfk_smoothness& s) {
  if (s.method == QFK_SUBDIVISION) return s.note[0] ? "subdivision-iteration(fallback)" : "subdivision-iteration";
  return "transition-spectrum";
}

struct Estimate {
  qfk_smoothness primary{};
  qfk_smoothness other{};
  bool both = false;
};

template <class Fn>
Estimate estimate(const std::string& method, Fn&& run) {
  Estimate e;
  if (method == "subdivision") {
    run(QFK_SUBDIVISION, &e.primary);
  } else {
    run(QFK_TRANSITION_SPECTRUM, &e.primary);
    if (method == "both") {
      run(QFK_SUBDIVISION, &e.other);
      e.both = true;
    }
  }
  return e;
}

int run_smoothness(const SmoothOptions& o) {
  std::printf("n,sm_quincunx,sm_dyadic,method,delta\n");
  if (o.table1 || o.n > 0) {
    const int lo = o.table1 ? 1 : o.n, hi = o.table1 ? o.nmax : o.n;
    for (int n = lo; n <= hi; ++n) {
      const Estimate q = estimate(o.method, [&](qfk_smoothness_method m, qfk_smoothness* s) {
        check(qfk_smoothness_family(n, 1, m, s));
      });
      const Estimate d = estimate(o.method, [&](qfk_smoothness_method m, qfk_smoothness* s) {
        check(qfk_smoothness_family(n, 0, m, s));
      });
      std::string method = method_label(q.primary);
      if (method != method_label(d.primary)) method += "/" + std::string(method_label(d.primary));
      std::string delta;
      if (q.both)
        delta = fmt(std::max(std::abs(q.primary.sm - q.other.sm), std::abs(d.primary.sm - d.other.sm)), "%.4f");
      std::printf("%d,%s,%s,%s,%s\n", n, fmt(q.primary.sm, "%.4f").c_str(), fmt(d.primary.sm, "%.4f").c_str(),
                  method.c_str(), delta.c_str());
    }
    return kOk;
  }
  Bank bank = load_bank(o.bank);
  const Estimate e = estimate(o.method, [&](qfk_smoothness_method m, qfk_smoothness* s) {
    check(qfk_smoothness_bank(bank.get(), m, s));
  });
  char* np = nullptr;
  check(qfk_bank_param(bank.get(), "n", &np));
  const std::string n = take(np);
  const std::string delta = e.both ? fmt(std::abs(e.primary.sm - e.other.sm), "%.4f") : "";
  std::printf("%s,%s,,%s,%s\n", n.c_str(), fmt(e.primary.sm, "%.4f").c_str(), method_label(e.primary), delta.c_str());
  return kOk;
}

// ---- transform ------------------------------------------------------------------------------

struct TransformOptions {
  std::string bank, image, out, recon;
  int levels = 1;
  bool roundtrip = false;
};

int run_transform(const TransformOptions& o) {
  Bank bank = load_bank(o.bank);
  qfk_image* raw = nullptr;
  check(qfk_image_load_pgm(o.image.c_str(), &raw));
  Image img(raw);
  qfk_pyramid* praw = nullptr;
  check(qfk_analyze(bank.get(), img.get(), o.levels, &praw));
  Pyramid pyr(praw);

  std::string base = o.out;
  if (base.empty()) {
    base = o.image;
    const auto dot = base.find_last_of('.'), slash = base.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) base.resize(dot);
    base += ".coeffs";
  }
  check(qfk_pyramid_save(pyr.get(), base.c_str()));
  int levels = 0, bands = 0;
  check(qfk_pyramid_levels(pyr.get(), &levels, &bands));
  double red = 0;
  check(qfk_pyramid_redundancy(pyr.get(), &red));
  std::printf("wrote %s.json and %s.bin (redundancy %.4f)\n", base.c_str(), base.c_str(), red);
  for (int j = 1; j <= levels; ++j) {
    std::printf("level %d high-band max-abs:", j);
    for (int b = 1; b <= bands; ++b) {
      double m = 0;
      check(qfk_pyramid_band_max_abs(pyr.get(), j, b, &m));
      std::printf(" %s", fmt(m, "%.3e").c_str());
    }
    std::printf("\n");
  }
  double low = 0;
  check(qfk_pyramid_band_max_abs(pyr.get(), levels, 0, &low));
  std::printf("low band max-abs: %s\n", fmt(low, "%.6g").c_str());

  if (!o.roundtrip) return kOk;
  qfk_image* rraw = nullptr;
  check(qfk_synthesize(bank.get(), pyr.get(), &rraw));
  Image rec(rraw);
  double err = 0, energy = 0;
  check(qfk_max_abs_error(rec.get(), img.get(), &err));
  check(qfk_frame_energy_residual(pyr.get(), img.get(), &energy));
  if (!o.recon.empty()) check(qfk_image_save_pgm(rec.get(), o.recon.c_str(), 255));
  const double tol = tolerance();
  // Errors are relative to the image scale, since PGM samples run up to maxval.
  int w = 0, h = 0;
  check(qfk_image_size(img.get(), &w, &h));
  std::vector<double> re(static_cast<size_t>(w) * h);
  check(qfk_image_samples(img.get(), re.data(), nullptr));
  double scale = 1;
  for (double x : re) scale = std::max(scale, std::abs(x));
  std::printf("max-abs error: %s\n", fmt(err, "%.3e").c_str());
  std::printf("relative max-abs error: %s\n", fmt(err / scale, "%.3e").c_str());
  std::printf("energy residual: %s\n", fmt(energy, "%.3e").c_str());
  const bool ok = err / scale <= tol && energy <= tol;
  std::printf("roundtrip: %s\n", ok ? "PASS" : "FAIL");
  return ok ? kOk : kVerification;
}

// ---- export ---------------------------------------------------------------------------------

int run_export(const std::string& path, const std::string& format, const std::string& out) {
  Bank bank = load_bank(path);
  std::ostringstream s;
  if (format == "csv") {
    int count = 0;
    check(qfk_bank_filter_count(bank.get(), &count));
    s << "filter,role,k1,k2,re,im\n";
    for (int i = 0; i < count; ++i) {
      int m1, m2, n1, n2;
      check(qfk_bank_filter_extent(bank.get(), i, &m1, &m2, &n1, &n2));
      std::vector<double> re(static_cast<size_t>(n1) * n2), im(re.size());
      check(qfk_bank_filter_coeffs(bank.get(), i, re.data(), im.data()));
      for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b) {
          const size_t t = static_cast<size_t>(a) * n2 + b;
          if (re[t] == 0 && im[t] == 0) continue;
          s << i << ',' << (i == 0 ? "lowpass" : "highpass") << ',' << m1 + a << ',' << m2 + b << ','
            << fmt(re[t], "%.17g") << ',' << fmt(im[t], "%.17g") << '\n';
        }
    }
  } else if (format == "json") {
    char* js = nullptr;
    check(qfk_bank_to_json(bank.get(), 1, tolerance(), &js));
    s << take(js) << '\n';
  } else {
    qfk_verify_result r{};
    char* js = nullptr;
    check(qfk_bank_verify(bank.get(), tolerance(), &r, &js));
    s << take(js) << '\n';
  }
  if (out.empty() || out == "-")
    std::cout << s.str();
  else
    write_text(out, s.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quincunx tight framelet toolkit: generate banks, verify them, estimate smoothness, transform images."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qfk_version()));

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a filter bank and write it as JSON");
  g->add_option("family", gen.family, "Bank family")
      ->required()
      ->check(CLI::IsMember({"a2d", "thm22", "complex-dc", "tensor", "six-multiple", "general"}));
  g->add_option("--n", gen.n, "Order parameter n")->check(CLI::Range(1, 64));
  g->add_option("--m", gen.m, "Second order parameter (tensor)")->check(CLI::Range(1, 64));
  g->add_option("--a", gen.a, "Low-pass seed for six-multiple")->check(CLI::IsMember({"interp2", "six-tap"}));
  g->add_option("--phase", gen.phase, "Spectral factor phase")->check(CLI::IsMember({"match", "conjugate"}));
  g->add_option("--root", gen.root, "Root choice for complex-dc")->check(CLI::IsMember({"negative", "positive"}));
  g->add_option("--j", gen.j, "Haar pair shift j (general)");
  g->add_option("--k", gen.k, "Haar pair shift k (general)");
  g->add_option("--dilation", gen.dilation, "Dilation (general)")->check(CLI::IsMember({"M_sqrt2", "N_sqrt2"}));
  g->add_option("-o,--out", gen.out, "Output path (default <family>.json)");
  g->add_flag("--with-report", gen.with_report, "Embed the verification report");

  std::string verify_path, verify_json;
  auto* v = app.add_subcommand("verify", "Check tightness, orders, symmetry and canonical pairs of a bank file");
  v->add_option("bank", verify_path, "Bank file")->required();
  v->add_option("--json", verify_json, "Also write the report to this path");

  SmoothOptions sm;
  auto* s = app.add_subcommand("smoothness", "Sobolev smoothness as CSV");
  auto* t1 = s->add_flag("--table1", sm.table1, "Interpolatory families n = 1..nmax");
  s->add_option("--nmax", sm.nmax, "Last row of --table1")->check(CLI::Range(1, 8));
  auto* sb = s->add_option("--bank", sm.bank, "Low-pass of this bank file");
  auto* sn = s->add_option("--n", sm.n, "Single interpolatory row")->check(CLI::Range(1, 8));
  s->add_option("--method", sm.method, "Estimator")->check(CLI::IsMember({"both", "spectrum", "subdivision"}));
  t1->excludes(sb)->excludes(sn);
  sb->excludes(sn);

  TransformOptions tr;
  auto* t = app.add_subcommand("transform", "Analyze a PGM image and write a coefficient bundle");
  t->add_option("bank", tr.bank, "Bank file")->required();
  t->add_option("image", tr.image, "PGM image (P2 or P5)")->required();
  t->add_option("--levels", tr.levels, "Decomposition levels")->check(CLI::Range(1, 30));
  t->add_option("-o,--out", tr.out, "Bundle base path (default <image>.coeffs)");
  t->add_flag("--roundtrip", tr.roundtrip, "Reconstruct and report error and energy residual");
  t->add_option("--recon", tr.recon, "Write the reconstruction as PGM (with --roundtrip)");

  std::string export_path, export_format = "csv", export_out;
  auto* e = app.add_subcommand("export", "Write a bank as coefficient CSV, JSON with report, or the report alone");
  e->add_option("bank", export_path, "Bank file")->required();
  e->add_option("--format", export_format, "Output format")->check(CLI::IsMember({"csv", "json", "report"}));
  e->add_option("-o,--out", export_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kUsage;
  }
  if (*s && !sm.table1 && sm.bank.empty() && sm.n == 0) {
    std::fprintf(stderr, "error: smoothness needs one of --table1, --bank, --n\n");
    return kUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*v) return run_verify(verify_path, verify_json);
    if (*s) return run_smoothness(sm);
    if (*t) return run_transform(tr);
    if (*e) return run_export(export_path, export_format, export_out);
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
