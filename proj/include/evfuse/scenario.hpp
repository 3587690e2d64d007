#ifndef EVFUSE_SCENARIO_HPP
#define EVFUSE_SCENARIO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "evfuse/combinators.hpp"
#include "evfuse/serialize.hpp"

namespace evfuse {

inline constexpr double kDefaultExpectedTolerance = 0.01;

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExpectedInterval {
    double lower = 0.0;
    double upper = 1.0;
    double tolerance = kDefaultExpectedTolerance;

    bool matches(const EvidenceInterval& e) const noexcept;
};

struct DependencySpec {
    std::optional<double> p;
    std::optional<double> alpha1;
    std::optional<double> alpha2;
};

struct ScenarioRow {
    std::vector<EvidenceRecord> evidences;
    std::map<Rule, ExpectedInterval> expected;
};

// A named set of rows, each folded under every listed rule.
//
//   {"name": "example4", "rules": ["ds", "tp", "mtp"], "dep": {"p": 10},
//    "tolerance": 0.01,
//    "rows": [{"evidences": [{"lower": 0.6, "upper": 0.8}, ...],
//              "expected": {"tp": {"lower": 0.71, "upper": 0.82, "tolerance": 0.02}}}]}
//
// A file without "rows" may put "evidences" and "expected" at top level.
struct ScenarioFile {
    std::string name;
    std::string description;
    std::vector<Rule> rules;
    std::optional<DependencySpec> dep;
    std::vector<ScenarioRow> rows;
};

ScenarioFile parse_scenario(const nlohmann::json& j);
ScenarioFile load_scenario(const std::filesystem::path& path);

// Directory holding the bundled fixtures; EVFUSE_SCENARIOS overrides it.
std::filesystem::path scenario_dir();
// An existing file path, or the name of a bundled fixture.
std::optional<std::filesystem::path> find_scenario(std::string_view name_or_path);
std::vector<std::string> bundled_scenarios();

struct ResolvedDependency {
    std::optional<DependencyParam> dep;
    std::vector<std::string> warnings;
};

// Explicit p wins over alphas (with a warning when both are given).
ResolvedDependency resolve_dependency(const std::optional<DependencySpec>& spec);

struct ComparisonCell {
    Rule rule = Rule::TP;
    std::optional<FusionReport> report;
    std::optional<std::string> error;
    std::optional<ExpectedInterval> expected;
    // Empty when no expectation was given.
    std::optional<bool> pass;
};

struct ComparisonRow {
    std::vector<EvidenceInterval> inputs;
    std::vector<ComparisonCell> cells; // in scenario rule order
};

struct ComparisonResult {
    std::string name;
    std::vector<Rule> rules;
    std::vector<ComparisonRow> rows;
    std::vector<std::string> warnings;

    bool any_fail() const noexcept;
};

ComparisonResult run_comparison(const ScenarioFile& scenario, const MapConfig& cfg = {});

} // namespace evfuse

#endif // EVFUSE_SCENARIO_HPP
