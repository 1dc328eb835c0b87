#pragma once

#include "qfk/analysis.hpp"
#include "qfk/construct.hpp"
#include "qfk/transform.hpp"

#include <string>

namespace qfk {

/// BankFileV1: {format_version: 1, family, params, dilation: [[m11, m12], [m21, m22]], filters: [{role,
/// canonical_partner?, canonical_shift?, support_min: [i, j], re, im}], report?}.  re and im are
/// arrays of rows; row i holds k1 = support_min[0] + i.
/// canonical_shift marks the generated member of a pair, so pairs survive a round trip.  Doubles are
/// printed in shortest round-trip form, so coefficients reload bit for bit.
std::string bank_to_json(const FilterBank& bank, const PropertyReport* report = nullptr);
/// Throws Parse on malformed input.
FilterBank bank_from_json(const std::string& text);

void write_bank_file(const std::string& path, const FilterBank& bank, const PropertyReport* report = nullptr);
/// Throws Io when the file cannot be read, Parse when it is not a BankFileV1.
FilterBank read_bank_file(const std::string& path);

std::string report_to_json(const PropertyReport& report);

/// Plain (P2) or raw (P5) graymap; raw files with maxval > 255 are 16-bit big-endian.
ImageGrid read_pgm(const std::string& path);
/// Writes P5 with the real parts rounded and clamped to [0, maxval].
void write_pgm(const std::string& path, const ImageGrid& img, int maxval = 255);

/// Coefficient bundle: base + ".json" header and base + ".bin" payload of little-endian float64,
/// band-major (level 1 high bands in filter order, then deeper levels, low band last), row-major
/// within a band over its frame.  Complex pyramids store (re, im) pairs.
void write_coeff_bundle(const std::string& base, const CoeffPyramid& pyr);
CoeffPyramid read_coeff_bundle(const std::string& base);

}  // namespace qfk
