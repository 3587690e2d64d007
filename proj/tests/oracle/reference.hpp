// Test-only reference implementations. Nothing here calls into the
// library's map or rule code; each routine evaluates the defining
// formula by a different route so it can serve as an oracle.
#ifndef EVFUSE_TESTS_ORACLE_REFERENCE_HPP
#define EVFUSE_TESTS_ORACLE_REFERENCE_HPP

#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace evfuse::oracle {

struct Vec {
    double u;
    double v;
};

// Finite partial sums of the triangle-to-plane series:
//   u = (a + b - 1) / (a^2 + (1 - b)^2) * sum_{i=0..N} (1 + a - b)^(i + 2)
//   v = 2a(1 - b)  / (a^2 + (1 - b)^2) * sum_{i=0..N} (1 + a - b)^(i + 1)
// Undefined at a = 0, b = 1 (returns the origin there).
inline Vec series_map(double a, double b, int terms = 500)
{
    const double x = 1.0 + a - b;
    const double norm = a * a + (1.0 - b) * (1.0 - b);
    if (norm == 0.0) {
        return {0.0, 0.0};
    }
    double su = 0.0;
    double sv = 0.0;
    double power = x; // x^(i + 1)
    for (int i = 0; i <= terms; ++i) {
        sv += power;
        su += power * x;
        power *= x;
    }
    return {(a + b - 1.0) / norm * su, 2.0 * a * (1.0 - b) / norm * sv};
}

// N -> infinity limit of series_map written out directly.
inline Vec limit_map(double a, double b)
{
    const double w = b - a;
    const double norm = a * a + (1.0 - b) * (1.0 - b);
    if (w >= 1.0 || norm == 0.0) {
        return {0.0, 0.0};
    }
    const double x = 1.0 + a - b;
    return {(a + b - 1.0) * x * x / (norm * w), 2.0 * a * (1.0 - b) * x / (norm * w)};
}

// Brute-force preimage: search a grid of the triangle for the point
// whose limit_map image is closest to (u, v), then zoom in.
inline std::pair<double, double> grid_preimage(double u, double v, int zoom_steps = 12)
{
    double lo_a = 0.0, hi_a = 1.0, lo_b = 0.0, hi_b = 1.0;
    double best_d = std::numeric_limits<double>::infinity();
    double best_a = 0.0, best_b = 1.0;
    constexpr int n = 60;
    for (int step = 0; step < zoom_steps; ++step) {
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const double a = lo_a + (hi_a - lo_a) * i / n;
                const double b = lo_b + (hi_b - lo_b) * j / n;
                if (!(0.0 <= a && a < b && b <= 1.0)) {
                    continue;
                }
                const Vec z = limit_map(a, b);
                const double d = std::hypot(z.u - u, z.v - v);
                if (d < best_d) {
                    best_d = d;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        const double span_a = (hi_a - lo_a) * 3.0 / n;
        const double span_b = (hi_b - lo_b) * 3.0 / n;
        lo_a = std::max(0.0, best_a - span_a);
        hi_a = std::min(1.0, best_a + span_a);
        lo_b = std::max(0.0, best_b - span_b);
        hi_b = std::min(1.0, best_b + span_b);
    }
    return {best_a, best_b};
}

// The cT family written branch by branch.
inline double ct_branches(double x, double y, double p)
{
    if (x >= 0.0 && y >= 0.0) {
        return std::pow(std::pow(x, p) + std::pow(y, p), 1.0 / p);
    }
    if (x <= 0.0 && y <= 0.0) {
        return -std::pow(std::pow(-x, p) + std::pow(-y, p), 1.0 / p);
    }
    if (x > 0.0) {
        std::swap(x, y); // now x <= 0 <= y
    }
    if (-x <= y) {
        return std::pow(-std::pow(-x, p) + std::pow(y, p), 1.0 / p);
    }
    return -std::pow(std::pow(-x, p) - std::pow(y, p), 1.0 / p);
}

// Dempster's rule by enumerating focal-element intersections on the
// frame {H, not-H}; subsets are bitmasks {H} = 1, {not-H} = 2, Theta = 3.
struct DsResult {
    double lower;
    double upper;
    double conflict;
};

inline DsResult dempster_enumerated(double a1, double b1, double a2, double b2)
{
    const std::array<double, 4> m1{0.0, a1, 1.0 - b1, b1 - a1};
    const std::array<double, 4> m2{0.0, a2, 1.0 - b2, b2 - a2};
    std::array<double, 4> joint{};
    double k = 0.0;
    for (int s1 = 1; s1 <= 3; ++s1) {
        for (int s2 = 1; s2 <= 3; ++s2) {
            const int meet = s1 & s2;
            if (meet == 0) {
                k += m1[s1] * m2[s2];
            } else {
                joint[meet] += m1[s1] * m2[s2];
            }
        }
    }
    return {joint[1] / (1.0 - k), 1.0 - joint[2] / (1.0 - k), k};
}

} // namespace evfuse::oracle

#endif // EVFUSE_TESTS_ORACLE_REFERENCE_HPP
