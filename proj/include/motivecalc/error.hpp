#pragma once

#include <stdexcept>
#include <string>

namespace motivecalc {

enum class ErrorKind {
    InvalidInput,           // malformed documents, bad structure constants, axiom violations
    FieldMismatch,
    NotAnIdeal,
    UnsupportedField,
    UnsupportedCharacteristic,
    DimensionCap,
    ResourceCap,
    HypothesisUnsatisfied,  // guard refused a reduction; not a malfunction
    RankNonzero,
    RankNotInvertible,
    NoNilpotenceWithinBound,
    CoefficientNotInvertible,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

    /// Process exit code for the CLI: 2 = hypothesis not satisfied, 3 = bad input, 4 = resource cap.
    int exit_code() const {
        switch (kind_) {
            case ErrorKind::HypothesisUnsatisfied:
            case ErrorKind::RankNotInvertible:
            case ErrorKind::NoNilpotenceWithinBound:
            case ErrorKind::CoefficientNotInvertible:
                return 2;
            case ErrorKind::DimensionCap:
            case ErrorKind::ResourceCap:
                return 4;
            default:
                return 3;
        }
    }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::FieldMismatch: return "field-mismatch";
        case ErrorKind::NotAnIdeal: return "not-an-ideal";
        case ErrorKind::UnsupportedField: return "unsupported-field";
        case ErrorKind::UnsupportedCharacteristic: return "unsupported-characteristic";
        case ErrorKind::DimensionCap: return "dimension-cap";
        case ErrorKind::ResourceCap: return "resource-cap";
        case ErrorKind::HypothesisUnsatisfied: return "hypothesis-unsatisfied";
        case ErrorKind::RankNonzero: return "rank-nonzero";
        case ErrorKind::RankNotInvertible: return "rank-not-invertible";
        case ErrorKind::NoNilpotenceWithinBound: return "no-nilpotence-within-bound";
        case ErrorKind::CoefficientNotInvertible: return "coefficient-denominator-not-invertible";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

} // namespace motivecalc
