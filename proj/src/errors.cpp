#include "qfk/errors.hpp"

#include "qfk/scalar.hpp"

namespace qfk {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BadDilation: return "BadDilation";
    case ErrorKind::NonIntegerSpectrum: return "NonIntegerSpectrum";
    case ErrorKind::NegativePoly: return "NegativePoly";
    case ErrorKind::RootClusterFailure: return "RootClusterFailure";
    case ErrorKind::OddRealRoot: return "OddRealRoot";
    case ErrorKind::NotPartition: return "NotPartition";
    case ErrorKind::BadShift: return "BadShift";
    case ErrorKind::NotCanonical: return "NotCanonical";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NotLowpass: return "NotLowpass";
    case ErrorKind::IncompatibleCenter: return "IncompatibleCenter";
    case ErrorKind::SpectrumRemovalMismatch: return "SpectrumRemovalMismatch";
    case ErrorKind::BadDimensions: return "BadDimensions";
    case ErrorKind::MetadataMismatch: return "MetadataMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const QComplex& z) {
  if (z.im == 0) return z.re.str();
  return "(" + z.re.str() + ")+(" + z.im.str() + ")i";
}

}  // namespace qfk
