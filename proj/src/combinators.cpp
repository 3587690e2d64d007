#include "evfuse/combinators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace evfuse {

std::string_view to_string(Rule rule) noexcept
{
    switch (rule) {
    case Rule::DS: return "ds";
    case Rule::TP: return "tp";
    case Rule::MTP: return "mtp";
    }
    return "?";
}

std::optional<Rule> parse_rule(std::string_view text) noexcept
{
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lowered == "ds") return Rule::DS;
    if (lowered == "tp") return Rule::TP;
    if (lowered == "mtp") return Rule::MTP;
    return std::nullopt;
}

DependencyParam DependencyParam::from_exponent(double p)
{
    if (!std::isfinite(p)) {
        throw EvidenceError(ErrorCode::NonFinite, "dependency exponent must be finite");
    }
    if (p < 1.0 || p > kMaxExponent) {
        std::ostringstream msg;
        msg << "dependency exponent " << p << " outside [1, " << kMaxExponent << "]";
        throw EvidenceError(ErrorCode::InvalidExponent, msg.str());
    }
    return DependencyParam(p);
}

DependencyParam estimate_p(double alpha1, double alpha2)
{
    for (double alpha : {alpha1, alpha2}) {
        if (!std::isfinite(alpha)) {
            throw EvidenceError(ErrorCode::NonFinite, "dependency measure must be finite");
        }
        if (alpha < 0.0 || alpha > 1.0) {
            std::ostringstream msg;
            msg << "dependency measure " << alpha << " outside [0, 1]";
            throw EvidenceError(ErrorCode::InvalidAlpha, msg.str());
        }
    }
    // 2 - (a1 + a2) written as (1 - a1) + (1 - a2): each difference is
    // exact for alpha >= 0.5, which is where the ratio is sensitive.
    const double sum = alpha1 + alpha2;
    const double slack = (1.0 - alpha1) + (1.0 - alpha2);
    const double raw = slack > 0.0 ? sum / slack : std::numeric_limits<double>::infinity();

    DependencyParam dep(std::clamp(raw, 1.0, kMaxExponent));
    dep.alpha1_ = alpha1;
    dep.alpha2_ = alpha2;
    dep.raw_p_ = raw;
    return dep;
}

FusionReport combine_tp(const EvidenceInterval& e1, const EvidenceInterval& e2,
                        const MapConfig& cfg)
{
    const HalfPlaneVector z = to_half_plane(e1, cfg) + to_half_plane(e2, cfg);
    FusionReport report;
    report.result = from_half_plane(z, cfg);
    report.rule = Rule::TP;
    report.conflict = is_conflicting(e1, e2);
    report.intermediate = z;
    report.count = 2;
    return report;
}

double ct(double x, double y, double p)
{
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(p)) {
        throw EvidenceError(ErrorCode::NonFinite, "cT arguments must be finite");
    }
    if (p < 1.0 || p > kMaxExponent) {
        std::ostringstream msg;
        msg << "cT exponent " << p << " outside [1, " << kMaxExponent << "]";
        throw EvidenceError(ErrorCode::InvalidExponent, msg.str());
    }
    if (p == 1.0) {
        return x + y;
    }
    // Scale by the larger magnitude so |t|^p cannot overflow.
    const double scale = std::max(std::abs(x), std::abs(y));
    if (scale == 0.0) {
        return 0.0;
    }
    auto phi = [p](double t) { return std::copysign(std::pow(std::abs(t), p), t); };
    const double s = phi(x / scale) + phi(y / scale);
    return scale * std::copysign(std::pow(std::abs(s), 1.0 / p), s);
}

FusionReport combine_mtp(const EvidenceInterval& e1, const EvidenceInterval& e2,
                         const DependencyParam& dep, const MapConfig& cfg)
{
    const HalfPlaneVector z1 = to_half_plane(e1, cfg);
    const HalfPlaneVector z2 = to_half_plane(e2, cfg);
    const HalfPlaneVector z{ct(z1.u, z2.u, dep.p()), ct(z1.v, z2.v, dep.p())};

    FusionReport report;
    report.result = from_half_plane(z, cfg);
    report.rule = Rule::MTP;
    report.conflict = is_conflicting(e1, e2);
    report.p_used = dep.p();
    report.intermediate = z;
    report.count = 2;
    return report;
}

MassTriple combine_masses(const MassTriple& m1, const MassTriple& m2, double* conflict_mass)
{
    const double k = m1.h * m2.not_h + m1.not_h * m2.h;
    const double norm = 1.0 - k;
    if (conflict_mass != nullptr) {
        *conflict_mass = k;
    }
    if (norm < kTotalConflictThreshold) {
        throw EvidenceError(ErrorCode::TotalConflict,
                            "total conflict: Dempster normalisation 1 - K vanished");
    }
    MassTriple out;
    out.h = (m1.h * m2.h + m1.h * m2.theta + m1.theta * m2.h) / norm;
    out.not_h = (m1.not_h * m2.not_h + m1.not_h * m2.theta + m1.theta * m2.not_h) / norm;
    out.theta = m1.theta * m2.theta / norm;
    return out;
}

FusionReport combine_ds(const EvidenceInterval& e1, const EvidenceInterval& e2)
{
    double k = 0.0;
    const MassTriple m = combine_masses(MassTriple::from_interval(e1), MassTriple::from_interval(e2), &k);

    // Rounding can push the normalised masses a hair past the simplex.
    const double lower = std::clamp(m.h, 0.0, 1.0);
    const double upper = std::clamp(1.0 - m.not_h, lower, 1.0);

    FusionReport report;
    report.result = make_interval(lower, upper);
    report.rule = Rule::DS;
    report.conflict = is_conflicting(e1, e2);
    report.ds_conflict_mass = k;
    report.count = 2;
    return report;
}

FusionReport combine(Rule rule, const EvidenceInterval& e1, const EvidenceInterval& e2,
                     const std::optional<DependencyParam>& dep, const MapConfig& cfg)
{
    switch (rule) {
    case Rule::DS:
        return combine_ds(e1, e2);
    case Rule::TP:
        return combine_tp(e1, e2, cfg);
    case Rule::MTP:
        if (!dep) {
            throw EvidenceError(ErrorCode::MissingDependency, "mTP requires a dependency parameter");
        }
        return combine_mtp(e1, e2, *dep, cfg);
    }
    throw EvidenceError(ErrorCode::MissingDependency, "unknown rule");
}

Fuser::Fuser(Rule rule, std::optional<DependencyParam> dep, MapConfig cfg)
    : rule_(rule), dep_(std::move(dep)), cfg_(cfg)
{
    if (rule_ == Rule::MTP && !dep_) {
        throw EvidenceError(ErrorCode::MissingDependency, "mTP requires a dependency parameter");
    }
}

const FusionReport& Fuser::push(const EvidenceInterval& e)
{
    if (!state_) {
        FusionReport first;
        first.result = e;
        first.rule = rule_;
        if (rule_ == Rule::MTP) {
            first.p_used = dep_->p();
        }
        state_ = first;
        return *state_;
    }
    FusionReport next = combine(rule_, state_->result, e, dep_, cfg_);
    next.conflict = next.conflict || state_->conflict;
    next.count = state_->count + 1;
    state_ = next;
    return *state_;
}

const FusionReport& Fuser::report() const
{
    if (!state_) {
        throw EvidenceError(ErrorCode::EmptyInput, "no evidence has been combined");
    }
    return *state_;
}

FusionReport fold(Rule rule, std::span<const EvidenceInterval> evidences,
                  const std::optional<DependencyParam>& dep, const MapConfig& cfg)
{
    if (evidences.empty()) {
        throw EvidenceError(ErrorCode::EmptyInput, "cannot fold an empty evidence collection");
    }
    Fuser fuser(rule, dep, cfg);
    for (const auto& e : evidences) {
        fuser.push(e);
    }
    return fuser.report();
}

} // namespace evfuse
