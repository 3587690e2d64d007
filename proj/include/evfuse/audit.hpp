#ifndef EVFUSE_AUDIT_HPP
#define EVFUSE_AUDIT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "evfuse/combinators.hpp"

namespace evfuse {

// Laws checked by the audit. Declaration order is report order.
enum class Law {
    Closure,          // A1
    Commutativity,    // A2
    Associativity,    // A3
    Continuity,       // A4
    Identity,         // A5
    Symmetry,         // A6
    ConflictWidening, // B1
    Reinforcement,    // B2
};

inline constexpr std::array<Law, 8> kAllLaws = {
    Law::Closure,  Law::Commutativity,    Law::Associativity, Law::Continuity,
    Law::Identity, Law::Symmetry,         Law::ConflictWidening, Law::Reinforcement,
};

// "A1" .. "A6", "B1", "B2".
std::string_view law_id(Law law) noexcept;
std::string_view law_name(Law law) noexcept;

struct AuditTolerances {
    double commutativity = 1e-12;
    double associativity = 1e-9;
    double continuity_delta = 1e-6;
    double continuity_gain = 1e6; // allowed output shift per unit input shift
    double identity = 1e-9;
    double symmetry = 1e-9;
    double widening_slack = 1e-12;
    double reinforcement_slack = 1e-12;
};

// Inputs outside these regimes are counted as skipped for the law.
struct RegimeFilters {
    // B1 applies only to highly conflicting pairs in the plane:
    // v_i <= b1_v_ratio |u_i| and |u_1 + u_2| <= b1_cancel_ratio min |u_i|.
    double b1_v_ratio = 0.1;
    double b1_cancel_ratio = 0.1;
    // B1 partner of x is complement(x) with endpoints jittered by up to this.
    double b1_jitter = 0.02;
    // A4 is checked only for intervals at least this wide.
    double a4_min_width = 0.01;
};

struct AuditConfig {
    std::uint64_t seed = 42;
    std::uint64_t trials = 10000;
    Rule rule = Rule::TP;
    std::optional<double> p; // required for MTP
    AuditTolerances tolerances;
    RegimeFilters regime;
    MapConfig map;
    unsigned workers = 1;

    // Throws std::invalid_argument on trials == 0, non-positive
    // tolerances, or MTP without p.
    void validate() const;
};

// Per-trial generator. Trial i draws from std::mt19937_64 seeded through
// std::seed_seq with the 32-bit halves of (seed, i); both are fully
// specified by the standard, so streams match across platforms.
using AuditRng = std::mt19937_64;
inline constexpr std::string_view kRngDescription =
    "mt19937_64 seeded by seed_seq{seed_lo, seed_hi, trial_lo, trial_hi}; uniform = (x >> 11) * 2^-53";

AuditRng trial_rng(std::uint64_t seed, std::uint64_t trial);
double uniform01(AuditRng& rng);

// Sorts two uniform draws into an interval, widened to at least 1e-6.
EvidenceInterval interval_from_draws(double first, double second);
EvidenceInterval sample_interval(AuditRng& rng);

struct Counterexample {
    std::uint64_t trial = 0;
    std::vector<EvidenceInterval> inputs;
    std::vector<EvidenceInterval> outputs;
    double magnitude = 0.0;
};

struct LawStats {
    std::uint64_t pass = 0;
    std::uint64_t fail = 0;
    std::uint64_t skipped = 0;
    // Largest measured discrepancy over evaluated (non-skipped) trials.
    std::optional<double> worst;
    std::vector<Counterexample> counterexamples; // at most kMaxCounterexamples

    static constexpr std::size_t kMaxCounterexamples = 10;
};

struct AuditReport {
    AuditConfig config;
    std::array<LawStats, kAllLaws.size()> laws{};

    const LawStats& stats(Law law) const { return laws[static_cast<std::size_t>(law)]; }
    std::uint64_t total_failures() const noexcept;
};

enum class LawStatus { Pass, Fail, Skipped };

struct LawOutcome {
    LawStatus status = LawStatus::Skipped;
    std::vector<EvidenceInterval> outputs;
    double magnitude = 0.0;
};

// Evaluates one law on explicit inputs. Input arity per law:
//   A1, A2, A6, B1, B2: (x, y)
//   A3: (x, y, z)
//   A4: (x, y, x') with x' a perturbed copy of x
//   A5: (x)
// Feeding a Counterexample's inputs back reproduces its magnitude exactly.
LawOutcome evaluate_law(Law law, std::span<const EvidenceInterval> inputs, const AuditConfig& config);

AuditReport run_audit(const AuditConfig& config);

} // namespace evfuse

#endif // EVFUSE_AUDIT_HPP
