#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3auto {

enum class ErrorKind {
    // scalars
    MixedFields,
    DivisionByZero,
    // expressions
    SyntaxError,
    UnknownVariable,
    ZeroDenominator,
    ZeroInput,
    // surface
    DegenerateModel,
    DegreeBound,
    NonMinimal,
    Unclassifiable,
    NonLinearNonMinimalPlace,
    // function field
    ZeroDenominatorOnSurface,
    NotAMorphism,
    NotConstantFactor,
    OrderBoundExceeded,
    // rigidity
    NotAGraphAutomorphism,
    AnchorOnMobileCurve,
    InconsistentCycle,
    TooManyFixedPoints,
    OrbitLengthMismatch,
    UndeterminedCurve,
    IncompatibleActions,
    // lattice
    UnknownLattice,
    GroupTooLarge,
    // files
    InputError,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::DegenerateModel: return "DegenerateModel";
    case ErrorKind::DegreeBound: return "DegreeBound";
    case ErrorKind::NonMinimal: return "NonMinimal";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::NonLinearNonMinimalPlace: return "NonLinearNonMinimalPlace";
    case ErrorKind::ZeroDenominatorOnSurface: return "ZeroDenominatorOnSurface";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::NotConstantFactor: return "NotConstantFactor";
    case ErrorKind::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorKind::NotAGraphAutomorphism: return "NotAGraphAutomorphism";
    case ErrorKind::AnchorOnMobileCurve: return "AnchorOnMobileCurve";
    case ErrorKind::InconsistentCycle: return "InconsistentCycle";
    case ErrorKind::TooManyFixedPoints: return "TooManyFixedPoints";
    case ErrorKind::OrbitLengthMismatch: return "OrbitLengthMismatch";
    case ErrorKind::UndeterminedCurve: return "UndeterminedCurve";
    case ErrorKind::IncompatibleActions: return "IncompatibleActions";
    case ErrorKind::UnknownLattice: return "UnknownLattice";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::InputError: return "InputError";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace k3auto
