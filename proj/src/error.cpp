#include "tropo/error.hpp"

namespace tropo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAFacet: return "NOT_A_FACET";
    case ErrorCode::PreconditionViolated: return "PRECONDITION_VIOLATED";
    case ErrorCode::NotMember: return "NOT_MEMBER";
    case ErrorCode::NotPureDimensional: return "NOT_PURE_DIMENSIONAL";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NotInSupport: return "NOT_IN_SUPPORT";
    case ErrorCode::WrongDimension: return "WRONG_DIMENSION";
    case ErrorCode::SearchExhausted: return "SEARCH_EXHAUSTED";
    case ErrorCode::SupportMismatch: return "SUPPORT_MISMATCH";
    case ErrorCode::ContinuityViolation: return "CONTINUITY_VIOLATION";
    case ErrorCode::ImproperIntersection: return "IMPROPER_INTERSECTION";
    case ErrorCode::UnboundedIntegrand: return "UNBOUNDED_INTEGRAND";
    case ErrorCode::WrongBidegree: return "WRONG_BIDEGREE";
    case ErrorCode::HypothesisViolated: return "HYPOTHESIS_VIOLATED";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace tropo
