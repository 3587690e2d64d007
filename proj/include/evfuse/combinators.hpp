#ifndef EVFUSE_COMBINATORS_HPP
#define EVFUSE_COMBINATORS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "evfuse/interval.hpp"
#include "evfuse/tp_geometry.hpp"

namespace evfuse {

enum class Rule { DS, TP, MTP };

std::string_view to_string(Rule rule) noexcept;
// Accepts "ds", "tp", "mtp" in any case.
std::optional<Rule> parse_rule(std::string_view text) noexcept;

// Upper clamp on the cT exponent. At p = 64 the p-power sum is within
// rounding noise of max(x, y).
inline constexpr double kMaxExponent = 64.0;

// Dempster total-conflict threshold on 1 - K.
inline constexpr double kTotalConflictThreshold = 1e-12;

// Basic probability assignment on the frame {H, not-H}.
struct MassTriple {
    double h = 0.0;
    double not_h = 0.0;
    double theta = 1.0; // ignorance

    static MassTriple from_interval(const EvidenceInterval& e) noexcept
    {
        return {e.lower(), 1.0 - e.upper(), e.width()};
    }
    double total() const noexcept { return h + not_h + theta; }
};

// Dependency exponent of the cT family. p is always in [1, kMaxExponent].
class DependencyParam {
public:
    // Explicit exponent; throws InvalidExponent outside [1, kMaxExponent]
    // or NonFinite.
    static DependencyParam from_exponent(double p);

    double p() const noexcept { return p_; }
    // Conditional dependency measures p(e2|e1) and p(e1|e2), when the
    // exponent was estimated from them.
    std::optional<double> alpha1() const noexcept { return alpha1_; }
    std::optional<double> alpha2() const noexcept { return alpha2_; }
    // Unclamped estimate; only set when estimated from alphas.
    std::optional<double> raw_p() const noexcept { return raw_p_; }

private:
    friend DependencyParam estimate_p(double alpha1, double alpha2);

    explicit DependencyParam(double p) noexcept : p_(p) {}

    double p_;
    std::optional<double> alpha1_;
    std::optional<double> alpha2_;
    std::optional<double> raw_p_;
};

// p = (a1 + a2) / (2 - (a1 + a2)), clamped to [1, kMaxExponent].
// Throws InvalidAlpha / NonFinite for alphas outside [0, 1].
DependencyParam estimate_p(double alpha1, double alpha2);

struct FusionReport {
    EvidenceInterval result = EvidenceInterval::vacuous();
    Rule rule = Rule::TP;
    // True when any pairwise step combined conflicting evidence.
    bool conflict = false;
    std::optional<double> p_used;
    // Combined half-plane vector of the last step (TP / MTP only).
    std::optional<HalfPlaneVector> intermediate;
    // Dempster conflict mass K of the last step (DS only).
    std::optional<double> ds_conflict_mass;
    // Number of evidences folded into the result.
    std::size_t count = 1;
};

FusionReport combine_tp(const EvidenceInterval& e1, const EvidenceInterval& e2,
                        const MapConfig& cfg = {});

// Sign-preserving p-power sum phi^-1(phi(x) + phi(y)) with
// phi(t) = sign(t) |t|^p. Reduces to x + y at p = 1 and tends to the
// larger magnitude as p grows. Throws InvalidExponent for p outside
// [1, kMaxExponent], NonFinite for non-finite arguments.
double ct(double x, double y, double p);

FusionReport combine_mtp(const EvidenceInterval& e1, const EvidenceInterval& e2,
                         const DependencyParam& dep, const MapConfig& cfg = {});

// Dempster's rule on {H, not-H}. Throws TotalConflict when 1 - K falls
// below kTotalConflictThreshold.
MassTriple combine_masses(const MassTriple& m1, const MassTriple& m2, double* conflict_mass = nullptr);
FusionReport combine_ds(const EvidenceInterval& e1, const EvidenceInterval& e2);

// Pairwise combination under any rule. dep is required for MTP.
FusionReport combine(Rule rule, const EvidenceInterval& e1, const EvidenceInterval& e2,
                     const std::optional<DependencyParam>& dep = std::nullopt,
                     const MapConfig& cfg = {});

// Incremental left fold. Each push() returns the running report.
class Fuser {
public:
    // Throws MissingDependency when rule is MTP and dep is empty.
    explicit Fuser(Rule rule, std::optional<DependencyParam> dep = std::nullopt,
                   MapConfig cfg = {});

    const FusionReport& push(const EvidenceInterval& e);

    bool empty() const noexcept { return !state_.has_value(); }
    // Throws EmptyInput before the first push().
    const FusionReport& report() const;

private:
    Rule rule_;
    std::optional<DependencyParam> dep_;
    MapConfig cfg_;
    std::optional<FusionReport> state_;
};

// Left fold of pairwise combination. Throws EmptyInput on an empty span;
// a singleton is returned unchanged.
FusionReport fold(Rule rule, std::span<const EvidenceInterval> evidences,
                  const std::optional<DependencyParam>& dep = std::nullopt,
                  const MapConfig& cfg = {});

} // namespace evfuse

#endif // EVFUSE_COMBINATORS_HPP
