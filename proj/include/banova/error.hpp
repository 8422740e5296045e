#pragma once

#include <stdexcept>
#include <string>

namespace banova {

enum class ErrorKind {
    // input / configuration errors (CLI exit code 2)
    EmptyInput,
    MalformedInput,
    NonNumericValue,
    UnbalancedDesign,
    TooFewGroups,
    TooFewReplicates,
    TooFewDraws,
    UnknownGroup,
    DomainError,
    NonConjugateConfig,
    // model degeneracies (CLI exit code 3)
    DegenerateError,
    DegeneratePosterior,
};

const char* error_kind_name(ErrorKind kind);

// True for errors caused by a degenerate model rather than bad input.
bool is_degenerate(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& detail) {
    throw Error(kind, detail);
}

} // namespace banova
