#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shockprof {

enum class ErrorCode {
    StateOutsideDomain,
    EpsilonOutOfRange,
    EpsilonAboveHat,
    NonPositiveParameter,
    QOutOfRange,
    ZOutOfRange,
    DegenerateShock,
    ParamsOutOfOmega,
    SingularBsharp,
    RootFindingFailure,
    NotASaddle,
    TooFewSamples,
    InternalInconsistency,
    InvalidOptions,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for every typed failure in the library. The code
/// lets callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace shockprof
