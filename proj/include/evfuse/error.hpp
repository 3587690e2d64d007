#ifndef EVFUSE_ERROR_HPP
#define EVFUSE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace evfuse {

enum class ErrorCode {
    NonFinite,         // NaN or infinity where a finite scalar is required
    OutOfRange,        // bound outside [0, 1]
    InvalidBounds,     // lower > upper
    NegativeV,         // half-plane vector below the u axis
    InvalidExponent,   // cT exponent p < 1 or above the clamp
    InvalidAlpha,      // dependency measure outside [0, 1]
    MissingDependency, // mTP requested without a dependency parameter
    TotalConflict,     // Dempster normalisation 1 - K vanished
    EmptyInput,        // fold over no evidence
};

std::string_view to_string(ErrorCode code) noexcept;

class EvidenceError : public std::runtime_error {
public:
    EvidenceError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace evfuse

#endif // EVFUSE_ERROR_HPP
