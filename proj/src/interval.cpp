#include "evfuse/interval.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace evfuse {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::NegativeV: return "NegativeV";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::MissingDependency: return "MissingDependency";
    case ErrorCode::TotalConflict: return "TotalConflict";
    case ErrorCode::EmptyInput: return "EmptyInput";
    }
    return "Unknown";
}

EvidenceInterval make_interval(double lower, double upper)
{
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
        throw EvidenceError(ErrorCode::NonFinite, "interval bounds must be finite");
    }
    if (lower < 0.0 || lower > 1.0 || upper < 0.0 || upper > 1.0) {
        std::ostringstream msg;
        msg << "interval bounds [" << lower << ", " << upper << "] outside [0, 1]";
        throw EvidenceError(ErrorCode::OutOfRange, msg.str());
    }
    if (lower > upper) {
        std::ostringstream msg;
        msg << "lower bound " << lower << " exceeds upper bound " << upper;
        throw EvidenceError(ErrorCode::InvalidBounds, msg.str());
    }
    return EvidenceInterval(lower, upper);
}

Discrimination discrimination(const EvidenceInterval& e) noexcept
{
    return {e.lower() + e.upper() - 1.0};
}

bool is_conflicting(const EvidenceInterval& e1, const EvidenceInterval& e2) noexcept
{
    const double d1 = discrimination(e1).value;
    const double d2 = discrimination(e2).value;
    return (d1 < 0.0 && d2 > 0.0) || (d1 > 0.0 && d2 < 0.0);
}

EvidenceInterval complement(const EvidenceInterval& e) noexcept
{
    // 1 - x stays in [0, 1] and is monotone, so the result is valid.
    return EvidenceInterval(1.0 - e.upper(), 1.0 - e.lower());
}

std::ostream& operator<<(std::ostream& os, const EvidenceInterval& e)
{
    return os << '[' << e.lower() << ", " << e.upper() << ']';
}

} // namespace evfuse
