#include "banova/error.hpp"

namespace banova {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NonNumericValue: return "NonNumericValue";
    case ErrorKind::UnbalancedDesign: return "UnbalancedDesign";
    case ErrorKind::TooFewGroups: return "TooFewGroups";
    case ErrorKind::TooFewReplicates: return "TooFewReplicates";
    case ErrorKind::TooFewDraws: return "TooFewDraws";
    case ErrorKind::UnknownGroup: return "UnknownGroup";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonConjugateConfig: return "NonConjugateConfig";
    case ErrorKind::DegenerateError: return "DegenerateError";
    case ErrorKind::DegeneratePosterior: return "DegeneratePosterior";
    }
    return "Error";
}

bool is_degenerate(ErrorKind kind) {
    return kind == ErrorKind::DegenerateError || kind == ErrorKind::DegeneratePosterior;
}

} // namespace banova
