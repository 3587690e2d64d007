#ifndef EVFUSE_INTERVAL_HPP
#define EVFUSE_INTERVAL_HPP

#include <iosfwd>

#include "evfuse/error.hpp"

namespace evfuse {

// Bounds [lower, upper] on the belief that the hypothesis H holds.
// The only way to obtain one is make_interval(), so every instance
// satisfies 0 <= lower <= upper <= 1.
class EvidenceInterval {
public:
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double width() const noexcept { return upper_ - lower_; }

    friend bool operator==(const EvidenceInterval&, const EvidenceInterval&) = default;

    friend EvidenceInterval make_interval(double lower, double upper);
    friend EvidenceInterval complement(const EvidenceInterval& e) noexcept;

    // [0, 1]: no information, identity of every combination rule.
    static EvidenceInterval vacuous() noexcept { return EvidenceInterval(0.0, 1.0); }

private:
    EvidenceInterval(double lower, double upper) noexcept : lower_(lower), upper_(upper) {}

    double lower_;
    double upper_;
};

// Validates and wraps a pair of bounds. Throws EvidenceError with
// NonFinite, OutOfRange or InvalidBounds; no epsilon slack is applied.
EvidenceInterval make_interval(double lower, double upper);

// Signed support margin lower + upper - 1. Positive favours H.
struct Discrimination {
    double value;

    friend bool operator==(const Discrimination&, const Discrimination&) = default;
};

Discrimination discrimination(const EvidenceInterval& e) noexcept;

// True iff the discriminations have strictly opposite signs. An interval
// centred on 0.5 conflicts with nothing.
bool is_conflicting(const EvidenceInterval& e1, const EvidenceInterval& e2) noexcept;

// Same evidence read as support for not-H: [1 - upper, 1 - lower].
// Involutive exactly when both bounds lie in [0.5, 1]; otherwise the
// round trip is off by at most half an ulp of 1.
EvidenceInterval complement(const EvidenceInterval& e) noexcept;

std::ostream& operator<<(std::ostream& os, const EvidenceInterval& e);

} // namespace evfuse

#endif // EVFUSE_INTERVAL_HPP
