#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohspeed {

enum class ErrorCode {
  NotHermitian,
  NotPSD,
  NotNormalized,
  DimensionMismatch,
  BadRank,
  DegenerateInput,
  BadPermutation,
  TooManyLevels,
  DegenerateSpectrum,
  SingleLevel,
  TooManyKraus,
  IncompleteKraus,
  GridTooCoarse,
  IndexOutOfRange,
  WindowTooWide,
  UnknownSuite,
  BadConfig,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` is stable,
// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cohspeed
