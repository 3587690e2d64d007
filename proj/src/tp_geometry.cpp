#include "evfuse/tp_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace evfuse {

namespace {

double floored_width(const EvidenceInterval& e, const MapConfig& cfg) noexcept
{
    return std::max(e.width(), cfg.width_floor);
}

EvidenceInterval invert_direct(double u, double v, double r)
{
    const double theta = std::atan2(v, u);
    const double half_tan = std::sin(theta) / (1.0 + std::cos(theta));
    const double t = r / (1.0 + r);

    double lower = t / (1.0 + half_tan);
    double upper = 1.0 - t * half_tan / (1.0 + half_tan);
    lower = std::clamp(lower, 0.0, 1.0);
    upper = std::clamp(upper, lower, 1.0);
    return make_interval(lower, upper);
}

} // namespace

PolarForm to_polar(const EvidenceInterval& e, const MapConfig& cfg) noexcept
{
    const double w = floored_width(e, cfg);
    const double r = (1.0 - w) / w;
    // theta / 2 = atan((1 - b) / a), with a = 0 giving pi / 2.
    const double theta = 2.0 * std::atan2(1.0 - e.upper(), e.lower());
    return {r, theta};
}

HalfPlaneVector to_half_plane(const EvidenceInterval& e, const MapConfig& cfg) noexcept
{
    const double w = floored_width(e, cfg);
    const double r = (1.0 - w) / w;
    if (r == 0.0) {
        return {0.0, 0.0};
    }

    // With T = c / a, c = 1 - b:
    //   cos theta = (a^2 - c^2) / (a^2 + c^2) = d (a + c) / (a^2 + c^2)
    //   sin theta = 2 a c / (a^2 + c^2)
    // where d = a + b - 1 is the discrimination, so sign(u) = sign(d).
    const double a = e.lower();
    const double c = 1.0 - e.upper();
    const double norm = a * a + c * c;
    const double d = discrimination(e).value;
    const double cos_theta = d * (a + c) / norm;
    const double sin_theta = 2.0 * a * c / norm;
    return {r * cos_theta, r * sin_theta};
}

EvidenceInterval from_half_plane(HalfPlaneVector z, const MapConfig& cfg)
{
    if (!std::isfinite(z.u) || !std::isfinite(z.v)) {
        throw EvidenceError(ErrorCode::NonFinite, "half-plane vector must be finite");
    }
    if (z.v < 0.0) {
        throw EvidenceError(ErrorCode::NegativeV, "half-plane vector has v < 0");
    }

    const double r = std::hypot(z.u, z.v);
    if (r < cfg.zero_radius) {
        return EvidenceInterval::vacuous();
    }
    // Near theta = pi, 1 + cos theta cancels; evaluate the mirror image
    // (which sits near theta = 0) and complement it instead.
    if (z.u / r < -0.9) {
        return complement(invert_direct(-z.u, z.v, r));
    }
    return invert_direct(z.u, z.v, r);
}

} // namespace evfuse
