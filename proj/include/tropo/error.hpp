#pragma once

#include <stdexcept>
#include <string>

namespace tropo {

enum class ErrorCode {
  NotAFacet,
  PreconditionViolated,
  NotMember,
  NotPureDimensional,
  DimensionMismatch,
  NotInSupport,
  WrongDimension,
  SearchExhausted,
  SupportMismatch,
  ContinuityViolation,
  ImproperIntersection,
  UnboundedIntegrand,
  WrongBidegree,
  HypothesisViolated,
  InvalidInput,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tropo
