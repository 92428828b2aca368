#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace minkhelix {

/// Every failure the toolkit reports is one of these kinds.
enum class ErrorKind {
    // minkowski_core
    NullVector,
    // numerics
    GridTooShort,
    NonUniformGrid,
    NonFiniteState,
    EmptyInput,
    // curve_model
    OutOfDomain,
    OrderUnsupported,
    NotSpacelike,
    ParseError,
    NonMonotoneParameter,
    DimensionMismatch,
    FileNotFound,
    // frenet
    NotUnitSpeed,
    CurvatureVanishes,
    SignFlip,
    // helix_analysis
    IllConditioned,
    NonPositiveRatio,
    WrongEpsilon,
    // synthesis
    SignatureRuleViolation,
    RatioSignViolation,
    NonPositiveD,
    // spec/config validation
    InvalidSpec,
};

std::string_view to_string(ErrorKind kind);

/// Coarse grouping used for CLI exit codes.
enum class ErrorClass { Input, Geometry, Numerical };

ErrorClass error_class(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    /// Parameter value where the failure happened, when it is tied to one.
    std::optional<double> at_s;
    /// Curvature index (1..3) for CurvatureVanishes.
    std::optional<int> curvature_index;
    /// 1-based line number for ParseError.
    std::optional<std::size_t> line;

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace minkhelix
