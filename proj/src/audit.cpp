#include "evfuse/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace evfuse {

namespace {

constexpr double kMinSampleWidth = 1e-6;

double endpoint_distance(const EvidenceInterval& a, const EvidenceInterval& b) noexcept
{
    return std::max(std::abs(a.lower() - b.lower()), std::abs(a.upper() - b.upper()));
}

class Combiner {
public:
    explicit Combiner(const AuditConfig& config) : config_(config)
    {
        if (config.rule == Rule::MTP) {
            dep_ = DependencyParam::from_exponent(config.p.value_or(1.0));
        }
    }

    EvidenceInterval operator()(const EvidenceInterval& x, const EvidenceInterval& y) const
    {
        return combine(config_.rule, x, y, dep_, config_.map).result;
    }

private:
    const AuditConfig& config_;
    std::optional<DependencyParam> dep_;
};

LawOutcome judged(std::vector<EvidenceInterval> outputs, double magnitude, bool passed)
{
    return {passed ? LawStatus::Pass : LawStatus::Fail, std::move(outputs), magnitude};
}

LawOutcome skipped()
{
    return {LawStatus::Skipped, {}, 0.0};
}

bool highly_conflicting(const EvidenceInterval& x, const EvidenceInterval& y, const AuditConfig& config)
{
    const HalfPlaneVector z1 = to_half_plane(x, config.map);
    const HalfPlaneVector z2 = to_half_plane(y, config.map);
    const RegimeFilters& f = config.regime;
    if (!((z1.u < 0.0 && z2.u > 0.0) || (z1.u > 0.0 && z2.u < 0.0))) {
        return false;
    }
    const double m1 = std::abs(z1.u);
    const double m2 = std::abs(z2.u);
    return z1.v <= f.b1_v_ratio * m1 && z2.v <= f.b1_v_ratio * m2
        && std::abs(z1.u + z2.u) <= f.b1_cancel_ratio * std::min(m1, m2);
}

LawOutcome evaluate_unchecked(Law law, std::span<const EvidenceInterval> in, const AuditConfig& config)
{
    const Combiner op(config);
    const AuditTolerances& tol = config.tolerances;

    switch (law) {
    case Law::Closure: {
        // make_interval inside every rule rejects anything outside S, so
        // reaching here with a value means closure held.
        const EvidenceInterval xy = op(in[0], in[1]);
        const double excess = std::max({0.0, -xy.lower(), xy.lower() - xy.upper(), xy.upper() - 1.0});
        return judged({xy}, excess, excess == 0.0);
    }
    case Law::Commutativity: {
        const EvidenceInterval xy = op(in[0], in[1]);
        const EvidenceInterval yx = op(in[1], in[0]);
        const double d = endpoint_distance(xy, yx);
        return judged({xy, yx}, d, d <= tol.commutativity);
    }
    case Law::Associativity: {
        const EvidenceInterval left = op(op(in[0], in[1]), in[2]);
        const EvidenceInterval right = op(in[0], op(in[1], in[2]));
        const double d = endpoint_distance(left, right);
        return judged({left, right}, d, d <= tol.associativity);
    }
    case Law::Continuity: {
        if (in[0].width() < config.regime.a4_min_width) {
            return skipped();
        }
        const EvidenceInterval base = op(in[0], in[1]);
        const EvidenceInterval moved = op(in[2], in[1]);
        const double d = endpoint_distance(base, moved);
        return judged({base, moved}, d, d <= tol.continuity_gain * tol.continuity_delta);
    }
    case Law::Identity: {
        const EvidenceInterval right = op(in[0], EvidenceInterval::vacuous());
        const EvidenceInterval left = op(EvidenceInterval::vacuous(), in[0]);
        const double d = std::max(endpoint_distance(right, in[0]), endpoint_distance(left, in[0]));
        return judged({right, left}, d, d <= tol.identity);
    }
    case Law::Symmetry: {
        const EvidenceInterval mirrored = complement(op(in[0], in[1]));
        const EvidenceInterval direct = op(complement(in[0]), complement(in[1]));
        const double d = endpoint_distance(mirrored, direct);
        return judged({mirrored, direct}, d, d <= tol.symmetry);
    }
    case Law::ConflictWidening: {
        if (!highly_conflicting(in[0], in[1], config)) {
            return skipped();
        }
        const EvidenceInterval xy = op(in[0], in[1]);
        const double shortfall = std::max(in[0].width(), in[1].width()) - xy.width();
        return judged({xy}, shortfall, shortfall <= tol.widening_slack);
    }
    case Law::Reinforcement: {
        const double d1 = discrimination(in[0]).value;
        const double d2 = discrimination(in[1]).value;
        if (!((d1 > 0.0 && d2 > 0.0) || (d1 < 0.0 && d2 < 0.0))) {
            return skipped();
        }
        const EvidenceInterval xy = op(in[0], in[1]);
        const double excess = xy.width() - std::min(in[0].width(), in[1].width());
        return judged({xy}, excess, excess <= tol.reinforcement_slack);
    }
    }
    return skipped();
}

std::size_t arity(Law law) noexcept
{
    switch (law) {
    case Law::Associativity:
    case Law::Continuity:
        return 3;
    case Law::Identity:
        return 1;
    default:
        return 2;
    }
}

EvidenceInterval perturb(const EvidenceInterval& x, double delta, bool move_lower)
{
    // Move one endpoint by delta in whichever direction keeps it inside S.
    if (move_lower) {
        const double down = x.lower() - delta;
        return down >= 0.0 ? make_interval(down, x.upper())
                           : make_interval(std::min(x.lower() + delta, x.upper()), x.upper());
    }
    const double up = x.upper() + delta;
    return up <= 1.0 ? make_interval(x.lower(), up)
                     : make_interval(x.lower(), std::max(x.upper() - delta, x.lower()));
}

EvidenceInterval jittered(const EvidenceInterval& x, double jitter, double j1, double j2)
{
    const double a = std::clamp(x.lower() + jitter * (2.0 * j1 - 1.0), 0.0, 1.0);
    const double b = std::clamp(x.upper() + jitter * (2.0 * j2 - 1.0), 0.0, 1.0);
    return interval_from_draws(a, b);
}

using LawArray = std::array<LawStats, kAllLaws.size()>;

void record(LawStats& stats, std::uint64_t trial, std::span<const EvidenceInterval> inputs,
            const LawOutcome& outcome)
{
    switch (outcome.status) {
    case LawStatus::Skipped:
        ++stats.skipped;
        return;
    case LawStatus::Pass:
        ++stats.pass;
        break;
    case LawStatus::Fail:
        ++stats.fail;
        if (stats.counterexamples.size() < LawStats::kMaxCounterexamples) {
            stats.counterexamples.push_back(
                {trial, {inputs.begin(), inputs.end()}, outcome.outputs, outcome.magnitude});
        }
        break;
    }
    if (!stats.worst || outcome.magnitude > *stats.worst || std::isnan(outcome.magnitude)) {
        stats.worst = outcome.magnitude;
    }
}

void run_trial(const AuditConfig& config, std::uint64_t trial, LawArray& laws)
{
    AuditRng rng = trial_rng(config.seed, trial);
    const EvidenceInterval x = sample_interval(rng);
    const EvidenceInterval y = sample_interval(rng);
    const EvidenceInterval z = sample_interval(rng);
    const bool move_lower = uniform01(rng) < 0.5;
    const double j1 = uniform01(rng);
    const double j2 = uniform01(rng);

    const EvidenceInterval x_moved = perturb(x, config.tolerances.continuity_delta, move_lower);
    const EvidenceInterval partner = jittered(complement(x), config.regime.b1_jitter, j1, j2);

    for (Law law : kAllLaws) {
        std::array<EvidenceInterval, 3> buf{x, y, z};
        if (law == Law::Continuity) {
            buf[2] = x_moved;
        } else if (law == Law::ConflictWidening) {
            buf[1] = partner;
        }
        const std::span<const EvidenceInterval> inputs(buf.data(), arity(law));
        record(laws[static_cast<std::size_t>(law)], trial, inputs, evaluate_law(law, inputs, config));
    }
}

void merge(LawArray& into, const LawArray& from)
{
    for (std::size_t i = 0; i < into.size(); ++i) {
        LawStats& a = into[i];
        const LawStats& b = from[i];
        a.pass += b.pass;
        a.fail += b.fail;
        a.skipped += b.skipped;
        if (b.worst && (!a.worst || *b.worst > *a.worst || std::isnan(*b.worst))) {
            a.worst = b.worst;
        }
        for (const auto& ce : b.counterexamples) {
            if (a.counterexamples.size() >= LawStats::kMaxCounterexamples) {
                break;
            }
            a.counterexamples.push_back(ce);
        }
    }
}

} // namespace

std::string_view law_id(Law law) noexcept
{
    static constexpr std::array<std::string_view, 8> ids = {"A1", "A2", "A3", "A4", "A5", "A6", "B1", "B2"};
    return ids[static_cast<std::size_t>(law)];
}

std::string_view law_name(Law law) noexcept
{
    static constexpr std::array<std::string_view, 8> names = {
        "closure",  "commutativity", "associativity",    "continuity",
        "identity", "symmetry",      "conflict-widening", "reinforcement",
    };
    return names[static_cast<std::size_t>(law)];
}

void AuditConfig::validate() const
{
    if (trials < 1) {
        throw std::invalid_argument("audit needs at least one trial");
    }
    const AuditTolerances& t = tolerances;
    for (double value : {t.commutativity, t.associativity, t.continuity_delta, t.continuity_gain,
                         t.identity, t.symmetry, t.widening_slack, t.reinforcement_slack}) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument("audit tolerances must be positive and finite");
        }
    }
    if (rule == Rule::MTP && !p) {
        throw std::invalid_argument("mTP audit requires an exponent p");
    }
    if (p) {
        DependencyParam::from_exponent(*p);
    }
}

AuditRng trial_rng(std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed & 0xffffffffu),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(trial & 0xffffffffu),
        static_cast<std::uint32_t>(trial >> 32),
    };
    return AuditRng(seq);
}

double uniform01(AuditRng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

EvidenceInterval interval_from_draws(double first, double second)
{
    double lower = std::min(first, second);
    double upper = std::max(first, second);
    if (upper - lower < kMinSampleWidth) {
        upper = std::min(1.0, lower + kMinSampleWidth);
        lower = upper - kMinSampleWidth;
    }
    return make_interval(lower, upper);
}

EvidenceInterval sample_interval(AuditRng& rng)
{
    const double first = uniform01(rng);
    const double second = uniform01(rng);
    return interval_from_draws(first, second);
}

std::uint64_t AuditReport::total_failures() const noexcept
{
    std::uint64_t total = 0;
    for (const auto& s : laws) {
        total += s.fail;
    }
    return total;
}

LawOutcome evaluate_law(Law law, std::span<const EvidenceInterval> inputs, const AuditConfig& config)
{
    if (inputs.size() != arity(law)) {
        throw std::invalid_argument("wrong number of inputs for law");
    }
    try {
        return evaluate_unchecked(law, inputs, config);
    } catch (const EvidenceError& err) {
        if (err.code() == ErrorCode::TotalConflict) {
            return skipped();
        }
        // A rule produced something outside S (or otherwise broke). This
        // is a closure failure whatever law tripped over it.
        return {LawStatus::Fail, {}, 1.0};
    }
}

AuditReport run_audit(const AuditConfig& config)
{
    config.validate();

    AuditReport report;
    report.config = config;

    const std::uint64_t workers = std::clamp<std::uint64_t>(config.workers, 1, config.trials);
    std::vector<LawArray> partial(workers);
    const std::uint64_t chunk = (config.trials + workers - 1) / workers;

    auto run_range = [&config](LawArray& laws, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            run_trial(config, trial, laws);
        }
    };

    if (workers == 1) {
        run_range(partial[0], 0, config.trials);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min(config.trials, w * chunk);
            const std::uint64_t end = std::min(config.trials, begin + chunk);
            threads.emplace_back([&, w, begin, end] { run_range(partial[w], begin, end); });
        }
    }

    // Contiguous trial blocks merged in order keep counterexamples in
    // trial order regardless of the worker count.
    for (const auto& laws : partial) {
        merge(report.laws, laws);
    }
    return report;
}

} // namespace evfuse
