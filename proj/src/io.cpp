#include "qfk/io.hpp"

#include "qfk/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qfk {

using nlohmann::json;

namespace {

std::string read_all(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& data, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) fail(ErrorKind::Io, "write to '" + path + "' failed");
}

json mat_json(const Mat2& m) { return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})}); }

Mat2 mat_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
    fail(ErrorKind::Parse, "dilation must be a 2 x 2 integer array");
  Mat2 m{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m[a][b] = j[a][b].get<int>();
  return m;
}

DilationSpec dilation_from(const Mat2& m) {
  for (const auto& d : {DilationSpec::quincunx_sqrt2(), DilationSpec::quincunx_n(), DilationSpec::dyadic2()})
    if (d.matrix() == m) return d;
  return DilationSpec(m);
}

json complex_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

json frame_json(const LatticeFrame& f) { return json{{"p", f.p}, {"q", f.q}, {"r", f.r}}; }

void put_f64(std::string& out, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double get_f64(const std::string& in, size_t pos) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string report_to_json(const PropertyReport& r) {
  json syms = json::array();
  for (const auto& s : r.symmetries)
    syms.push_back({{"filter", s.filter},
                    {"group", s.group},
                    {"center", s.center},
                    {"character", s.character},
                    {"pass", s.pass},
                    {"deviation", s.deviation}});
  const json j{{"sr", r.sr},
               {"lpm", {{"order", r.lpm.order}, {"center", {complex_json(r.lpm.center[0]), complex_json(r.lpm.center[1])}}}},
               {"vmo", r.vmo},
               {"tight_residual", r.tight_residual},
               {"orthonormal_residual", r.orthonormal_residual},
               {"canonical_deviation", r.canonical_deviation},
               {"symmetries", syms},
               {"tolerance", r.tolerance},
               {"tight_pass", r.tight_pass},
               {"canonical_pass", r.canonical_pass}};
  return j.dump(2);
}

std::string bank_to_json(const FilterBank& bank, const PropertyReport* report) {
  json filters = json::array();
  for (size_t i = 0; i < bank.filters.size(); ++i) {
    const auto& f = bank.filters[i];
    json re = json::array(), im = json::array();
    for (int a = 0; a < f.extent1(); ++a) {
      json rr = json::array(), ii = json::array();
      for (int b = 0; b < f.extent2(); ++b) {
        const Complex c = f.data()[static_cast<size_t>(a * f.extent2() + b)];
        rr.push_back(c.real());
        ii.push_back(c.imag());
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    json e{{"role", i == 0 ? "lowpass" : "highpass"},
           {"support_min", {f.support_min()[0], f.support_min()[1]}},
           {"re", re},
           {"im", im}};
    for (const auto& p : bank.canonical_pairs) {
      if (p.to == static_cast<int>(i)) {
        e["canonical_partner"] = p.from;
        e["canonical_shift"] = {p.gamma[0], p.gamma[1]};
      } else if (p.from == static_cast<int>(i)) {
        e["canonical_partner"] = p.to;
      }
    }
    filters.push_back(e);
  }
  json j{{"format_version", 1},
         {"family", bank.family},
         {"params", bank.params},
         {"dilation", mat_json(bank.dilation.matrix())},
         {"filters", filters}};
  if (report) j["report"] = json::parse(report_to_json(*report));
  return j.dump(2);
}

FilterBank bank_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) fail(ErrorKind::Parse, "bank file must be a JSON object");
    if (j.value("format_version", 0) != 1) fail(ErrorKind::Parse, "unsupported format_version");
    FilterBank bank;
    bank.family = j.value("family", std::string());
    if (j.contains("params")) {
      if (!j["params"].is_object()) fail(ErrorKind::Parse, "params must be an object");
      for (const auto& [k, v] : j["params"].items())
        bank.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    bank.dilation = dilation_from(mat_from(j.at("dilation")));
    const json& fs = j.at("filters");
    if (!fs.is_array() || fs.empty()) fail(ErrorKind::Parse, "filters must be a nonempty array");
    for (size_t i = 0; i < fs.size(); ++i) {
      const json& e = fs[i];
      const std::string role = e.at("role").get<std::string>();
      if (role != (i == 0 ? "lowpass" : "highpass"))
        fail(ErrorKind::Parse, "filter " + std::to_string(i) + " has role '" + role + "'");
      const json &re = e.at("re"), &im = e.at("im");
      const json& sm = e.at("support_min");
      if (!re.is_array() || !im.is_array() || re.size() != im.size() || !sm.is_array() || sm.size() != 2)
        fail(ErrorKind::Parse, "filter " + std::to_string(i) + " arrays are malformed");
      const int n1 = static_cast<int>(re.size());
      const int n2 = n1 == 0 ? 0 : static_cast<int>(re[0].size());
      std::vector<Complex> d;
      d.reserve(static_cast<size_t>(n1) * n2);
      for (int a = 0; a < n1; ++a) {
        if (!re[a].is_array() || !im[a].is_array() || static_cast<int>(re[a].size()) != n2 ||
            static_cast<int>(im[a].size()) != n2)
          fail(ErrorKind::Parse, "filter " + std::to_string(i) + " arrays are not rectangular");
        for (int b = 0; b < n2; ++b) d.emplace_back(re[a][b].get<double>(), im[a][b].get<double>());
      }
      bank.filters.emplace_back(Int2{sm[0].get<int>(), sm[1].get<int>()}, n1, n2, std::move(d));
      if (e.contains("canonical_shift")) {
        const json& g = e.at("canonical_shift");
        const int from = e.at("canonical_partner").get<int>();
        if (from < 0 || from >= static_cast<int>(fs.size())) fail(ErrorKind::Parse, "canonical_partner out of range");
        bank.canonical_pairs.push_back({from, static_cast<int>(i), {g.at(0).get<int>(), g.at(1).get<int>()}});
      }
    }
    return bank;
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

void write_bank_file(const std::string& path, const FilterBank& bank, const PropertyReport* report) {
  write_all(path, bank_to_json(bank, report) + "\n", false);
}

FilterBank read_bank_file(const std::string& path) { return bank_from_json(read_all(path, false)); }

ImageGrid read_pgm(const std::string& path) {
  const std::string data = read_all(path, true);
  size_t pos = 0;
  auto skip = [&] {
    while (pos < data.size()) {
      if (std::isspace(static_cast<unsigned char>(data[pos]))) {
        ++pos;
      } else if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&] {
    skip();
    long v = 0;
    const size_t start = pos;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
      v = v * 10 + (data[pos] - '0');
      if (v > (1L << 30)) fail(ErrorKind::Parse, "PGM number too large in '" + path + "'");
      ++pos;
    }
    if (pos == start) fail(ErrorKind::Parse, "malformed PGM header in '" + path + "'");
    return v;
  };
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5'))
    fail(ErrorKind::Parse, "'" + path + "' is not a P2 or P5 graymap");
  const bool raw = data[1] == '5';
  pos = 2;
  const long w = number(), h = number(), maxval = number();
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) fail(ErrorKind::Parse, "bad PGM header in '" + path + "'");
  ImageGrid img(static_cast<int>(w), static_cast<int>(h));
  if (raw) {
    if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos])))
      fail(ErrorKind::Parse, "malformed PGM header in '" + path + "'");
    ++pos;
    const size_t bytes = maxval > 255 ? 2 : 1;
    if (data.size() - pos < static_cast<size_t>(w * h) * bytes) fail(ErrorKind::Parse, "truncated PGM '" + path + "'");
    for (auto& x : img.samples) {
      long v = static_cast<unsigned char>(data[pos++]);
      if (bytes == 2) v = (v << 8) | static_cast<unsigned char>(data[pos++]);
      x = static_cast<double>(v);
    }
  } else {
    for (auto& x : img.samples) x = static_cast<double>(number());
  }
  return img;
}

void write_pgm(const std::string& path, const ImageGrid& img, int maxval) {
  if (maxval <= 0 || maxval > 65535) fail(ErrorKind::InvalidArgument, "maxval must lie in 1..65535");
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n" +
                    std::to_string(maxval) + "\n";
  for (const auto& x : img.samples) {
    const long v = std::clamp(std::lround(x.real()), 0L, static_cast<long>(maxval));
    if (maxval > 255) out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xff));
  }
  write_all(path, out, true);
}

void write_coeff_bundle(const std::string& base, const CoeffPyramid& pyr) {
  bool is_complex = false;
  auto scan = [&](const std::vector<Complex>& v) {
    for (const auto& x : v) is_complex = is_complex || x.imag() != 0;
  };
  for (const auto& lv : pyr.levels)
    for (const auto& b : lv.high) scan(b);
  scan(pyr.low);

  std::string payload;
  long offset = 0;
  auto append = [&](const std::vector<Complex>& v) {
    json e{{"offset", offset}, {"count", v.size()}};
    for (const auto& x : v) {
      put_f64(payload, x.real());
      if (is_complex) put_f64(payload, x.imag());
    }
    offset += static_cast<long>(v.size());
    return e;
  };
  json levels = json::array();
  for (size_t j = 0; j < pyr.levels.size(); ++j) {
    json bands = json::array();
    for (size_t l = 0; l < pyr.levels[j].high.size(); ++l) {
      json e = append(pyr.levels[j].high[l]);
      e["filter"] = l + 1;
      bands.push_back(e);
    }
    levels.push_back({{"level", j + 1}, {"frame", frame_json(pyr.levels[j].frame)}, {"bands", bands}});
  }
  json low = append(pyr.low);
  low["filter"] = 0;
  const std::string bin_name = base + ".bin";
  const size_t slash = bin_name.find_last_of('/');
  const json header{{"format", "qfk-coefficients"},
                    {"format_version", 1},
                    {"width", pyr.width},
                    {"height", pyr.height},
                    {"dilation", mat_json(pyr.dilation)},
                    {"filter_count", pyr.filter_count},
                    {"complex", is_complex},
                    {"byte_order", "little"},
                    {"value_type", "float64"},
                    {"redundancy", pyr.redundancy()},
                    {"payload", slash == std::string::npos ? bin_name : bin_name.substr(slash + 1)},
                    {"levels", levels},
                    {"low", low}};
  write_all(bin_name, payload, true);
  write_all(base + ".json", header.dump(2) + "\n", false);
}

CoeffPyramid read_coeff_bundle(const std::string& base) {
  const std::string text = read_all(base + ".json", false);
  const std::string payload = read_all(base + ".bin", true);
  try {
    const json h = json::parse(text);
    if (h.value("format", std::string()) != "qfk-coefficients" || h.value("format_version", 0) != 1)
      fail(ErrorKind::Parse, "not a coefficient bundle header");
    CoeffPyramid pyr;
    pyr.width = h.at("width").get<int>();
    pyr.height = h.at("height").get<int>();
    pyr.dilation = mat_from(h.at("dilation"));
    pyr.filter_count = h.at("filter_count").get<int>();
    const bool is_complex = h.at("complex").get<bool>();
    const size_t stride = is_complex ? 16 : 8;
    auto band = [&](const json& e) {
      const size_t off = e.at("offset").get<size_t>(), count = e.at("count").get<size_t>();
      if ((off + count) * stride > payload.size()) fail(ErrorKind::Parse, "payload is shorter than the header claims");
      std::vector<Complex> v(count);
      for (size_t i = 0; i < count; ++i) {
        const size_t p = (off + i) * stride;
        v[i] = Complex(get_f64(payload, p), is_complex ? get_f64(payload, p + 8) : 0.0);
      }
      return v;
    };
    for (const auto& lj : h.at("levels")) {
      CoeffLevel lv;
      const json& f = lj.at("frame");
      lv.frame = {f.at("p").get<int>(), f.at("q").get<int>(), f.at("r").get<int>()};
      for (const auto& b : lj.at("bands")) lv.high.push_back(band(b));
      pyr.levels.push_back(std::move(lv));
    }
    pyr.low = band(h.at("low"));
    return pyr;
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

}  // namespace qfk
