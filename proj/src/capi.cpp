#include "qfk/qframelet.h"

#include "qfk/analysis.hpp"
#include "qfk/construct.hpp"
#include "qfk/errors.hpp"
#include "qfk/filters1d.hpp"
#include "qfk/io.hpp"
#include "qfk/smoothness.hpp"
#include "qfk/transform.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <new>
#include <string>

struct qfk_bank {
  qfk::FilterBank bank;
};
struct qfk_image {
  qfk::ImageGrid img;
};
struct qfk_pyramid {
  qfk::CoeffPyramid pyr;
};

namespace {

thread_local std::string g_last_error;

qfk_status null_arg() {
  g_last_error = "NULL argument";
  return QFK_ERR_NULL_POINTER;
}

qfk_status status_of(qfk::ErrorKind k) { return static_cast<qfk_status>(static_cast<int>(k) + 1); }

/// Runs fn, translating exceptions into status codes and recording the message.
template <class Fn>
qfk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QFK_OK;
  } catch (const qfk::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("Parse: ") + e.what();
    return QFK_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QFK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QFK_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw qfk::Error(qfk::ErrorKind::InvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int int_param(const nlohmann::json& p, const char* key, int def) {
  if (!p.contains(key)) return def;
  const auto& v = p.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const long x = std::strtol(s.c_str(), &end, 10);
    if (end && *end == '\0' && !s.empty()) return static_cast<int>(x);
  }
  qfk::fail(qfk::ErrorKind::InvalidArgument, std::string("parameter '") + key + "' must be an integer");
}

std::string str_param(const nlohmann::json& p, const char* key, const std::string& def) {
  if (!p.contains(key)) return def;
  if (!p.at(key).is_string()) qfk::fail(qfk::ErrorKind::InvalidArgument, std::string("parameter '") + key + "' must be a string");
  return p.at(key).get<std::string>();
}

qfk::Int2 pair_param(const nlohmann::json& p, const char* key, qfk::Int2 def) {
  if (!p.contains(key)) return def;
  const auto& v = p.at(key);
  if (!v.is_array() || v.size() != 2)
    qfk::fail(qfk::ErrorKind::InvalidArgument, std::string("parameter '") + key + "' must be [x, y]");
  return {v[0].get<int>(), v[1].get<int>()};
}

void require_positive(int n, const char* key) {
  if (n < 1) qfk::fail(qfk::ErrorKind::InvalidArgument, std::string("parameter '") + key + "' must be at least 1");
}

qfk::FilterBank generate(const std::string& family, const nlohmann::json& p) {
  using namespace qfk;
  FilterBank bank;
  if (family == "a2d") {
    const int n = int_param(p, "n", 1);
    require_positive(n, "n");
    bank.filters = {to_float(a2d(n))};
    bank.dilation = DilationSpec::quincunx_sqrt2();
    bank.family = "a2d";
    bank.params = {{"n", std::to_string(n)}};
  } else if (family == "thm22") {
    const int n = int_param(p, "n", 1);
    require_positive(n, "n");
    bank = thm22_bank(n);
  } else if (family == "complex-dc") {
    const int n = int_param(p, "n", 1);
    require_positive(n, "n");
    const std::string root = str_param(p, "root", "negative");
    if (root != "negative" && root != "positive")
      fail(ErrorKind::InvalidArgument, "root must be 'negative' or 'positive'");
    bank = complex_dc_bank(n, root == "negative" ? RootChoice::NegativeImag : RootChoice::PositiveImag);
    bank.params["root"] = root;
  } else if (family == "tensor") {
    const int n = int_param(p, "n", 1), m = int_param(p, "m", 1);
    require_positive(n, "n");
    require_positive(m, "m");
    bank = daubechies_tensor_bank(n, m);
  } else if (family == "six-multiple") {
    const std::string a = str_param(p, "a", "interp2");
    const std::string phase = str_param(p, "phase", "match");
    if (phase != "match" && phase != "conjugate") fail(ErrorKind::InvalidArgument, "phase must be 'match' or 'conjugate'");
    Filter1D lp;
    if (a == "interp2")
      lp = to_float(interpolatory(2));
    else if (a == "six-tap")
      lp = to_float(six_tap_lowpass());
    else
      fail(ErrorKind::InvalidArgument, "a must be 'interp2' or 'six-tap'");
    bank = six_multiple_bank(lp, phase == "match" ? FactorPhase::MatchPaper : FactorPhase::Conjugate);
    bank.params["a"] = a;
    bank.params["phase"] = phase;
  } else if (family == "general") {
    const int j = int_param(p, "j", 0), k = int_param(p, "k", 0);
    const std::string dil = str_param(p, "dilation", "M_sqrt2");
    const DilationSpec M = DilationSpec::by_name(dil);
    const bool is_m = M.matrix() == DilationSpec::quincunx_sqrt2().matrix();
    const Int2 g1 = pair_param(p, "g1", {1, 1}), g2 = pair_param(p, "g2", is_m ? Int2{1, -1} : Int2{-1, 1});
    const Int2 g3 = pair_param(p, "g3", {0, 1}), g4 = pair_param(p, "g4", {1, 0});
    const auto [u, v] = haar_pair(j, k);
    bank = to_float(general_bank(u, v, M, g1, g2, g3, g4, QPoint2{Rational(1, 2), Rational(1, 2)}));
    bank.params = {{"j", std::to_string(j)}, {"k", std::to_string(k)}, {"dilation", dil}};
  } else {
    fail(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
  }
  return bank;
}

const qfk::Filter2D& filter_at(const qfk_bank* b, int i) {
  require(b, "bank");
  if (i < 0 || i >= static_cast<int>(b->bank.filters.size()))
    qfk::fail(qfk::ErrorKind::InvalidArgument, "filter index " + std::to_string(i) + " out of range");
  return b->bank.filters[static_cast<size_t>(i)];
}

void fill_smoothness(const qfk::SmoothnessResult& r, qfk_smoothness* out) {
  out->sm = r.sm2;
  out->rho = r.rho_m;
  out->method = r.method == qfk::SmoothnessMethod::TransitionSpectrum ? QFK_TRANSITION_SPECTRUM : QFK_SUBDIVISION;
  out->sum_rules = r.m_used;
  out->matrix_size = r.matrix_size;
  out->iterations = r.iterations;
  std::snprintf(out->note, sizeof(out->note), "%s", r.note.c_str());
}

}  // namespace

extern "C" {

const char* qfk_version(void) { return "1.0.0"; }

const char* qfk_status_name(qfk_status s) {
  switch (s) {
    case QFK_OK:
      return "Ok";
    case QFK_ERR_NULL_POINTER:
      return "NullPointer";
    case QFK_ERR_INTERNAL:
      return "Internal";
    default:
      if (s > QFK_OK && s < QFK_ERR_NULL_POINTER) return qfk::error_kind_name(static_cast<qfk::ErrorKind>(s - 1));
      return "Unknown";
  }
}

const char* qfk_last_error(void) { return g_last_error.c_str(); }

void qfk_string_free(char* s) { std::free(s); }

qfk_status qfk_bank_generate(const char* family, const char* params_json, qfk_bank** out) {
  if (!family || !out) return null_arg();
  *out = nullptr;
  return guarded([&] {
    nlohmann::json p = nlohmann::json::object();
    if (params_json && *params_json) {
      try {
        p = nlohmann::json::parse(params_json);
      } catch (const nlohmann::json::exception& e) {
        qfk::fail(qfk::ErrorKind::InvalidArgument, std::string("parameters are not valid JSON: ") + e.what());
      }
      if (!p.is_object()) qfk::fail(qfk::ErrorKind::InvalidArgument, "parameters must be a JSON object");
    }
    *out = new qfk_bank{generate(family, p)};
  });
}

qfk_status qfk_bank_load(const char* path, qfk_bank** out) {
  if (!path || !out) return null_arg();
  *out = nullptr;
  return guarded([&] { *out = new qfk_bank{qfk::read_bank_file(path)}; });
}

qfk_status qfk_bank_from_json(const char* text, qfk_bank** out) {
  if (!text || !out) return null_arg();
  *out = nullptr;
  return guarded([&] { *out = new qfk_bank{qfk::bank_from_json(text)}; });
}

qfk_status qfk_bank_save(const qfk_bank* bank, const char* path, int with_report, double tol) {
  if (!bank || !path) return null_arg();
  return guarded([&] {
    if (with_report) {
      const auto rep = qfk::analyze_bank(bank->bank, tol);
      qfk::write_bank_file(path, bank->bank, &rep);
    } else {
      qfk::write_bank_file(path, bank->bank);
    }
  });
}

qfk_status qfk_bank_to_json(const qfk_bank* bank, int with_report, double tol, char** out) {
  if (!bank || !out) return null_arg();
  *out = nullptr;
  return guarded([&] {
    if (with_report) {
      const auto rep = qfk::analyze_bank(bank->bank, tol);
      *out = dup_string(qfk::bank_to_json(bank->bank, &rep));
    } else {
      *out = dup_string(qfk::bank_to_json(bank->bank));
    }
  });
}

void qfk_bank_free(qfk_bank* bank) { delete bank; }

qfk_status qfk_bank_filter_count(const qfk_bank* bank, int* count) {
  if (!bank || !count) return null_arg();
  return guarded([&] { *count = static_cast<int>(bank->bank.filters.size()); });
}

qfk_status qfk_bank_family(const qfk_bank* bank, char** out) {
  if (!bank || !out) return null_arg();
  return guarded([&] { *out = dup_string(bank->bank.family); });
}

qfk_status qfk_bank_param(const qfk_bank* bank, const char* key, char** out) {
  if (!bank || !key || !out) return null_arg();
  return guarded([&] {
    const auto it = bank->bank.params.find(key);
    *out = dup_string(it == bank->bank.params.end() ? std::string() : it->second);
  });
}

qfk_status qfk_bank_dilation(const qfk_bank* bank, int dilation[4]) {
  if (!bank || !dilation) return null_arg();
  return guarded([&] {
    const auto& m = bank->bank.dilation.matrix();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) dilation[2 * r + c] = m[r][c];
  });
}

qfk_status qfk_bank_filter_extent(const qfk_bank* bank, int i, int* min1, int* min2, int* n1, int* n2) {
  if (!bank || !min1 || !min2 || !n1 || !n2) return null_arg();
  return guarded([&] {
    const auto& f = filter_at(bank, i);
    *min1 = f.support_min()[0];
    *min2 = f.support_min()[1];
    *n1 = f.extent1();
    *n2 = f.extent2();
  });
}

qfk_status qfk_bank_filter_coeffs(const qfk_bank* bank, int i, double* re, double* im) {
  if (!bank || !re) return null_arg();
  return guarded([&] {
    const auto& d = filter_at(bank, i).data();
    for (size_t t = 0; t < d.size(); ++t) {
      re[t] = d[t].real();
      if (im) im[t] = d[t].imag();
    }
  });
}

qfk_status qfk_bank_verify(const qfk_bank* bank, double tol, qfk_verify_result* out, char** report_json_out) {
  if (!bank || !out) return null_arg();
  if (report_json_out) *report_json_out = nullptr;
  return guarded([&] {
    const auto& b = bank->bank;
    qfk_verify_result r{};
    r.tolerance = tol;
    r.sum_rules = -1;
    r.linear_phase_moments = -1;
    r.min_vanishing_moments = -1;
    std::string json;
    try {
      const auto rep = qfk::analyze_bank(b, tol);
      r.tight_residual = rep.tight_residual;
      r.tight_pass = rep.tight_pass;
      r.canonical_pass = rep.canonical_pass;
      for (double d : rep.canonical_deviation) r.canonical_max_deviation = std::max(r.canonical_max_deviation, d);
      r.sum_rules = rep.sr;
      r.linear_phase_moments = rep.lpm.order;
      for (int v : rep.vmo) r.min_vanishing_moments = r.min_vanishing_moments < 0 ? v : std::min(r.min_vanishing_moments, v);
      for (const auto& s : rep.symmetries) r.symmetric_filters += s.pass ? 1 : 0;
      if (b.filters.size() > 1) r.order_relation_pass = qfk::vm_sr_lpm_relation(b).pass;
      json = qfk::report_to_json(rep);
    } catch (const qfk::Error& e) {
      if (e.kind() != qfk::ErrorKind::NotLowpass) throw;
      // Without a low-pass filter only the bank-level identities can be evaluated.
      r.tight_residual = qfk::tight_residual(b);
      r.tight_pass = r.tight_residual <= tol;
      r.canonical_pass = 1;
      for (const auto& p : b.canonical_pairs) {
        const double d = qfk::canonical_pair_deviation(b, p);
        r.canonical_max_deviation = std::max(r.canonical_max_deviation, d);
        r.canonical_pass = r.canonical_pass && d <= tol;
      }
      nlohmann::json j{{"error", e.what()}, {"tight_residual", r.tight_residual}, {"tolerance", tol}};
      json = j.dump(2);
    }
    r.pass = r.tight_pass && r.canonical_pass && r.sum_rules >= 0;
    *out = r;
    if (report_json_out) *report_json_out = dup_string(json);
  });
}

qfk_status qfk_smoothness_bank(const qfk_bank* bank, qfk_smoothness_method method, qfk_smoothness* out) {
  if (!bank || !out) return null_arg();
  return guarded([&] {
    const auto& b = bank->bank;
    const auto r = method == QFK_SUBDIVISION ? qfk::subdivision_sm(b.lowpass(), b.dilation)
                                             : qfk::transition_sm(b.lowpass(), b.dilation);
    fill_smoothness(r, out);
  });
}

qfk_status qfk_smoothness_family(int n, int quincunx, qfk_smoothness_method method, qfk_smoothness* out) {
  if (!out) return null_arg();
  return guarded([&] {
    require_positive(n, "n");
    qfk::SmoothnessResult r;
    if (quincunx) {
      const auto a = qfk::to_float(qfk::a2d(n));
      const auto M = qfk::DilationSpec::quincunx_sqrt2();
      r = method == QFK_SUBDIVISION ? qfk::subdivision_sm(a, M) : qfk::transition_sm(a, M);
    } else {
      const auto a = qfk::to_float(qfk::interpolatory(n));
      r = method == QFK_SUBDIVISION ? qfk::subdivision_sm(a) : qfk::transition_sm(a);
    }
    fill_smoothness(r, out);
  });
}

qfk_status qfk_image_create(int width, int height, const double* re, const double* im, qfk_image** out) {
  if (!re || !out) return null_arg();
  *out = nullptr;
  return guarded([&] {
    if (width <= 0 || height <= 0) qfk::fail(qfk::ErrorKind::BadDimensions, "image sides must be positive");
    qfk::ImageGrid g(width, height);
    for (size_t t = 0; t < g.samples.size(); ++t) g.samples[t] = qfk::Complex(re[t], im ? im[t] : 0.0);
    *out = new qfk_image{std::move(g)};
  });
}

qfk_status qfk_image_load_pgm(const char* path, qfk_image** out) {
  if (!path || !out) return null_arg();
  *out = nullptr;
  return guarded([&] { *out = new qfk_image{qfk::read_pgm(path)}; });
}

qfk_status qfk_image_save_pgm(const qfk_image* img, const char* path, int maxval) {
  if (!img || !path) return null_arg();
  return guarded([&] { qfk::write_pgm(path, img->img, maxval); });
}

qfk_status qfk_image_size(const qfk_image* img, int* width, int* height) {
  if (!img || !width || !height) return null_arg();
  return guarded([&] {
    *width = img->img.width;
    *height = img->img.height;
  });
}

qfk_status qfk_image_samples(const qfk_image* img, double* re, double* im) {
  if (!img || !re) return null_arg();
  return guarded([&] {
    const auto& s = img->img.samples;
    for (size_t t = 0; t < s.size(); ++t) {
      re[t] = s[t].real();
      if (im) im[t] = s[t].imag();
    }
  });
}

void qfk_image_free(qfk_image* img) { delete img; }

qfk_status qfk_max_abs_error(const qfk_image* a, const qfk_image* b, double* out) {
  if (!a || !b || !out) return null_arg();
  return guarded([&] { *out = qfk::max_abs_error(a->img, b->img); });
}

qfk_status qfk_analyze(const qfk_bank* bank, const qfk_image* img, int levels, qfk_pyramid** out) {
  if (!bank || !img || !out) return null_arg();
  *out = nullptr;
  return guarded([&] { *out = new qfk_pyramid{qfk::analyze(bank->bank, img->img, levels)}; });
}

qfk_status qfk_synthesize(const qfk_bank* bank, const qfk_pyramid* pyr, qfk_image** out) {
  if (!bank || !pyr || !out) return null_arg();
  *out = nullptr;
  return guarded([&] { *out = new qfk_image{qfk::synthesize(bank->bank, pyr->pyr)}; });
}

qfk_status qfk_frame_energy_residual(const qfk_pyramid* pyr, const qfk_image* img, double* out) {
  if (!pyr || !img || !out) return null_arg();
  return guarded([&] { *out = qfk::frame_energy_residual(pyr->pyr, img->img); });
}

qfk_status qfk_pyramid_levels(const qfk_pyramid* pyr, int* levels, int* high_bands) {
  if (!pyr || !levels || !high_bands) return null_arg();
  return guarded([&] {
    *levels = static_cast<int>(pyr->pyr.levels.size());
    *high_bands = pyr->pyr.filter_count - 1;
  });
}

qfk_status qfk_pyramid_band_max_abs(const qfk_pyramid* pyr, int level, int band, double* out) {
  if (!pyr || !out) return null_arg();
  return guarded([&] {
    const auto& p = pyr->pyr;
    const int L = static_cast<int>(p.levels.size());
    if (level < 1 || level > L) qfk::fail(qfk::ErrorKind::InvalidArgument, "level out of range");
    const std::vector<qfk::Complex>* v = nullptr;
    if (band == 0) {
      if (level != L) qfk::fail(qfk::ErrorKind::InvalidArgument, "the low band exists only at the deepest level");
      v = &p.low;
    } else {
      const auto& hs = p.levels[static_cast<size_t>(level - 1)].high;
      if (band < 0 || band > static_cast<int>(hs.size())) qfk::fail(qfk::ErrorKind::InvalidArgument, "band out of range");
      v = &hs[static_cast<size_t>(band - 1)];
    }
    double m = 0;
    for (const auto& x : *v) m = std::max(m, std::abs(x));
    *out = m;
  });
}

qfk_status qfk_pyramid_redundancy(const qfk_pyramid* pyr, double* out) {
  if (!pyr || !out) return null_arg();
  return guarded([&] { *out = pyr->pyr.redundancy(); });
}

qfk_status qfk_pyramid_save(const qfk_pyramid* pyr, const char* base) {
  if (!pyr || !base) return null_arg();
  return guarded([&] { qfk::write_coeff_bundle(base, pyr->pyr); });
}

qfk_status qfk_pyramid_load(const char* base, qfk_pyramid** out) {
  if (!base || !out) return null_arg();
  *out = nullptr;
  return guarded([&] { *out = new qfk_pyramid{qfk::read_coeff_bundle(base)}; });
}

void qfk_pyramid_free(qfk_pyramid* pyr) { delete pyr; }

}  // extern "C"
