#ifndef EVFUSE_TP_GEOMETRY_HPP
#define EVFUSE_TP_GEOMETRY_HPP

#include "evfuse/interval.hpp"

namespace evfuse {

// Image of an evidence interval in the closed upper half-plane.
// u carries the sign of the discrimination; v >= 0 grows with how far
// the interval sits from both edges of the triangle.
struct HalfPlaneVector {
    double u = 0.0;
    double v = 0.0;

    friend HalfPlaneVector operator+(HalfPlaneVector a, HalfPlaneVector b) noexcept
    {
        return {a.u + b.u, a.v + b.v};
    }
    friend bool operator==(const HalfPlaneVector&, const HalfPlaneVector&) = default;
};

// Polar coordinates of a HalfPlaneVector. For a source interval [a, b]
// r = (1 + a - b) / (b - a) and tan(theta / 2) = (1 - b) / a.
struct PolarForm {
    double r = 0.0;
    double theta = 0.0; // [0, pi]
};

// Numerical knobs of the triangle <-> plane map.
struct MapConfig {
    // Widths below this are raised to it; a point interval would
    // otherwise map to infinity.
    double width_floor = 1e-9;
    // Vectors shorter than this map back to the vacuous interval.
    double zero_radius = 1e-12;
};

// Closed form of the series map (the N -> infinity limit):
//   u = (a + b - 1)(1 + a - b)^2 / ((a^2 + (1 - b)^2)(b - a))
//   v = 2a(1 - b)(1 + a - b)   / ((a^2 + (1 - b)^2)(b - a))
// with b - a floored at cfg.width_floor. [0, 1] maps to the origin.
HalfPlaneVector to_half_plane(const EvidenceInterval& e, const MapConfig& cfg = {}) noexcept;

PolarForm to_polar(const EvidenceInterval& e, const MapConfig& cfg = {}) noexcept;

// Inverse map. With r = |z|, t = r / (1 + r) and T = tan(theta / 2):
//   [t / (1 + T), 1 - t T / (1 + T)]
// so the result always has width 1 / (1 + r).
// Throws NonFinite for non-finite components and NegativeV for v < 0.
EvidenceInterval from_half_plane(HalfPlaneVector z, const MapConfig& cfg = {});

} // namespace evfuse

#endif // EVFUSE_TP_GEOMETRY_HPP
