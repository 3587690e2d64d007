#include "evfuse/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#ifndef EVFUSE_SCENARIO_DIR
#define EVFUSE_SCENARIO_DIR "scenarios"
#endif

namespace evfuse {

using nlohmann::json;

namespace {

double number_at(const json& j, const char* key, const std::string& where)
{
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
        throw ScenarioError(where + ": \"" + key + "\" must be a number");
    }
    return it->get<double>();
}

std::optional<double> optional_number_at(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) {
        return std::nullopt;
    }
    return number_at(j, key, where);
}

ScenarioRow parse_row(const json& j, const std::vector<Rule>& rules, double tolerance,
                      const std::string& where)
{
    ScenarioRow row;
    const auto evs = j.find("evidences");
    if (evs == j.end() || !evs->is_array() || evs->empty()) {
        throw ScenarioError(where + ": \"evidences\" must be a non-empty array");
    }
    for (std::size_t i = 0; i < evs->size(); ++i) {
        try {
            row.evidences.push_back(record_from_json((*evs)[i]));
        } catch (const RecordError& err) {
            throw ScenarioError(where + ": evidence " + std::to_string(i + 1) + ": " + err.what());
        }
    }
    if (const auto exp = j.find("expected"); exp != j.end()) {
        if (!exp->is_object()) {
            throw ScenarioError(where + ": \"expected\" must be an object keyed by rule");
        }
        for (const auto& [key, value] : exp->items()) {
            const auto rule = parse_rule(key);
            if (!rule) {
                throw ScenarioError(where + ": unknown rule \"" + key + "\" in expected");
            }
            if (std::find(rules.begin(), rules.end(), *rule) == rules.end()) {
                throw ScenarioError(where + ": expected value for rule \"" + key + "\" not listed in rules");
            }
            const std::string cell = where + ": expected." + key;
            ExpectedInterval e;
            e.lower = number_at(value, "lower", cell);
            e.upper = number_at(value, "upper", cell);
            e.tolerance = optional_number_at(value, "tolerance", cell).value_or(tolerance);
            if (!(e.tolerance > 0.0)) {
                throw ScenarioError(cell + ": tolerance must be positive");
            }
            row.expected[*rule] = e;
        }
    }
    return row;
}

} // namespace

bool ExpectedInterval::matches(const EvidenceInterval& e) const noexcept
{
    return std::abs(e.lower() - lower) <= tolerance && std::abs(e.upper() - upper) <= tolerance;
}

ScenarioFile parse_scenario(const json& j)
{
    if (!j.is_object()) {
        throw ScenarioError("scenario must be a JSON object");
    }
    ScenarioFile s;
    s.name = j.value("name", std::string("unnamed"));
    s.description = j.value("description", std::string());

    const auto rules = j.find("rules");
    if (rules == j.end() || !rules->is_array() || rules->empty()) {
        throw ScenarioError("\"rules\" must be a non-empty array");
    }
    for (const auto& r : *rules) {
        const auto rule = r.is_string() ? parse_rule(r.get<std::string>()) : std::nullopt;
        if (!rule) {
            throw ScenarioError("unknown rule " + r.dump());
        }
        s.rules.push_back(*rule);
    }

    if (const auto dep = j.find("dep"); dep != j.end() && !dep->is_null()) {
        DependencySpec spec;
        spec.p = optional_number_at(*dep, "p", "dep");
        spec.alpha1 = optional_number_at(*dep, "alpha1", "dep");
        spec.alpha2 = optional_number_at(*dep, "alpha2", "dep");
        if (!spec.p && !(spec.alpha1 && spec.alpha2)) {
            throw ScenarioError("dep needs \"p\" or both \"alpha1\" and \"alpha2\"");
        }
        s.dep = spec;
    }
    if (std::find(s.rules.begin(), s.rules.end(), Rule::MTP) != s.rules.end() && !s.dep) {
        throw ScenarioError("rule mtp needs a \"dep\" entry");
    }

    const double tolerance = j.contains("tolerance") ? number_at(j, "tolerance", "scenario")
                                                     : kDefaultExpectedTolerance;
    if (const auto rows = j.find("rows"); rows != j.end()) {
        if (!rows->is_array() || rows->empty()) {
            throw ScenarioError("\"rows\" must be a non-empty array");
        }
        for (std::size_t i = 0; i < rows->size(); ++i) {
            s.rows.push_back(parse_row((*rows)[i], s.rules, tolerance, "row " + std::to_string(i + 1)));
        }
    } else {
        s.rows.push_back(parse_row(j, s.rules, tolerance, "scenario"));
    }
    return s;
}

ScenarioFile load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open scenario file " + path.string());
    }
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw ScenarioError(path.string() + ": not valid JSON");
    }
    return parse_scenario(j);
}

std::filesystem::path scenario_dir()
{
    if (const char* env = std::getenv("EVFUSE_SCENARIOS"); env != nullptr && *env != '\0') {
        return env;
    }
    return EVFUSE_SCENARIO_DIR;
}

std::optional<std::filesystem::path> find_scenario(std::string_view name_or_path)
{
    std::error_code ec;
    const std::filesystem::path direct(name_or_path);
    if (std::filesystem::is_regular_file(direct, ec)) {
        return direct;
    }
    const std::filesystem::path bundled = scenario_dir() / (std::string(name_or_path) + ".json");
    if (std::filesystem::is_regular_file(bundled, ec)) {
        return bundled;
    }
    return std::nullopt;
}

std::vector<std::string> bundled_scenarios()
{
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(scenario_dir(), ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

ResolvedDependency resolve_dependency(const std::optional<DependencySpec>& spec)
{
    ResolvedDependency out;
    if (!spec) {
        return out;
    }
    if (spec->p) {
        if (spec->alpha1 || spec->alpha2) {
            out.warnings.push_back("dep gives both p and alphas; using explicit p");
        }
        out.dep = DependencyParam::from_exponent(*spec->p);
    } else {
        out.dep = estimate_p(spec->alpha1.value(), spec->alpha2.value());
    }
    return out;
}

bool ComparisonResult::any_fail() const noexcept
{
    for (const auto& row : rows) {
        for (const auto& cell : row.cells) {
            if (cell.pass && !*cell.pass) {
                return true;
            }
        }
    }
    return false;
}

ComparisonResult run_comparison(const ScenarioFile& scenario, const MapConfig& cfg)
{
    ComparisonResult result;
    result.name = scenario.name;
    result.rules = scenario.rules;

    ResolvedDependency resolved = resolve_dependency(scenario.dep);
    result.warnings = resolved.warnings;

    for (const auto& row : scenario.rows) {
        ComparisonRow out;
        for (const auto& rec : row.evidences) {
            out.inputs.push_back(rec.interval);
        }
        for (Rule rule : scenario.rules) {
            ComparisonCell cell;
            cell.rule = rule;
            try {
                cell.report = fold(rule, out.inputs, resolved.dep, cfg);
            } catch (const EvidenceError& err) {
                cell.error = std::string(to_string(err.code()));
            }
            if (const auto it = row.expected.find(rule); it != row.expected.end()) {
                cell.expected = it->second;
                cell.pass = cell.report && it->second.matches(cell.report->result);
            }
            out.cells.push_back(std::move(cell));
        }
        result.rows.push_back(std::move(out));
    }
    return result;
}

} // namespace evfuse
