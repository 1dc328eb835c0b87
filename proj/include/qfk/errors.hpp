#pragma once

#include <stdexcept>
#include <string>

namespace qfk {

enum class ErrorKind {
  InvalidArgument,
  BadDilation,
  NonIntegerSpectrum,
  NegativePoly,
  RootClusterFailure,
  OddRealRoot,
  NotPartition,
  BadShift,
  NotCanonical,
  SingularSystem,
  NotLowpass,
  IncompatibleCenter,
  SpectrumRemovalMismatch,
  BadDimensions,
  MetadataMismatch,
  DimensionMismatch,
  Parse,
  Io,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qfk
