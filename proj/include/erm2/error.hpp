#ifndef ERM2_ERROR_HPP
#define ERM2_ERROR_HPP

#include <stdexcept>
#include <string>

namespace erm2 {

// Values mirror erm2_status in erm2.h; keep both in sync.
enum class ErrorCode {
  NonMonotoneQuantiles = 1,
  NonConcave = 2,
  NegativeRevenue = 3,
  NonzeroOrigin = 4,
  OutOfRange = 5,
  NonPositiveScale = 6,
  InfeasibleBump = 7,
  EmptySample = 8,
  ToleranceNotMet = 9,
  DegenerateRegion = 10,
  BoundViolated = 11,
  SearchFailed = 12,
  CurveParse = 13,
  Io = 14,
  InvalidArgument = 15,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace erm2

#endif
