#pragma once

#include <stdexcept>
#include <string>

namespace bgchaos {

// Each code doubles as the CLI process exit status.
enum class Errc : int {
    ConfigInvalid = 2,
    NonPositiveParameter = 3,
    DomainError = 4,
    OrderOutOfRange = 5,
    BoundInapplicable = 6,
    NegativeRadicand = 7,
    MeanNotZero = 8,
    NotSymmetric = 9,
    EigenFailure = 10,
    DimMismatch = 11,
    IndexOutOfRange = 12,
    GridTooCoarse = 13,
    QuadratureNotConverged = 14,
    TooFewSamples = 15,
    EmptyInput = 16,
    EmptyDictionary = 17,
    NumericalInconsistency = 18,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bgchaos
