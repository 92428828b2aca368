#include "minkhelix/error.hpp"

namespace minkhelix {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NullVector: return "NullVector";
    case ErrorKind::GridTooShort: return "GridTooShort";
    case ErrorKind::NonUniformGrid: return "NonUniformGrid";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::OrderUnsupported: return "OrderUnsupported";
    case ErrorKind::NotSpacelike: return "NotSpacelike";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonMonotoneParameter: return "NonMonotoneParameter";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorKind::CurvatureVanishes: return "CurvatureVanishes";
    case ErrorKind::SignFlip: return "SignFlip";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NonPositiveRatio: return "NonPositiveRatio";
    case ErrorKind::WrongEpsilon: return "WrongEpsilon";
    case ErrorKind::SignatureRuleViolation: return "SignatureRuleViolation";
    case ErrorKind::RatioSignViolation: return "RatioSignViolation";
    case ErrorKind::NonPositiveD: return "NonPositiveD";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

ErrorClass error_class(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::NonMonotoneParameter:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::FileNotFound:
    case ErrorKind::InvalidSpec:
    case ErrorKind::SignatureRuleViolation:
    case ErrorKind::RatioSignViolation:
    case ErrorKind::NonPositiveD:
    case ErrorKind::NonUniformGrid:
        return ErrorClass::Input;
    case ErrorKind::NullVector:
    case ErrorKind::OutOfDomain:
    case ErrorKind::NotSpacelike:
    case ErrorKind::NotUnitSpeed:
    case ErrorKind::CurvatureVanishes:
    case ErrorKind::SignFlip:
    case ErrorKind::NonPositiveRatio:
    case ErrorKind::WrongEpsilon:
        return ErrorClass::Geometry;
    case ErrorKind::GridTooShort:
    case ErrorKind::NonFiniteState:
    case ErrorKind::EmptyInput:
    case ErrorKind::OrderUnsupported:
    case ErrorKind::IllConditioned:
        return ErrorClass::Numerical;
    }
    return ErrorClass::Numerical;
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace minkhelix
