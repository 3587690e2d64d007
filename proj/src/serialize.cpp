#include "evfuse/serialize.hpp"

namespace evfuse {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end()) {
        throw RecordError(std::string("missing field \"") + key + "\"");
    }
    if (!it->is_number()) {
        throw RecordError(std::string("field \"") + key + "\" is not a number");
    }
    return it->get<double>();
}

std::optional<std::string> optional_string(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw RecordError(std::string("field \"") + key + "\" is not a string");
    }
    return it->get<std::string>();
}

json optional_number(const std::optional<double>& value)
{
    return value ? json(*value) : json(nullptr);
}

} // namespace

EvidenceRecord record_from_json(const json& j)
{
    if (!j.is_object()) {
        throw RecordError("record is not an object");
    }
    EvidenceRecord rec;
    try {
        rec.interval = make_interval(require_number(j, "lower"), require_number(j, "upper"));
    } catch (const EvidenceError& err) {
        throw RecordError(std::string(to_string(err.code())) + ": " + err.what());
    }
    rec.source = optional_string(j, "source");
    rec.timestamp = optional_string(j, "timestamp");
    return rec;
}

EvidenceRecord parse_record(std::string_view line)
{
    json j = json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded()) {
        throw RecordError("not a JSON object");
    }
    return record_from_json(j);
}

json to_json(const EvidenceInterval& e)
{
    return json::array({e.lower(), e.upper()});
}

json to_json(const FusionReport& report)
{
    json j = json::object();
    j["format"] = kFusionFormat;
    j["rule"] = to_string(report.rule);
    j["lower"] = report.result.lower();
    j["upper"] = report.result.upper();
    j["width"] = report.result.width();
    j["conflict"] = report.conflict;
    j["count"] = report.count;
    j["p"] = optional_number(report.p_used);
    if (report.intermediate) {
        j["u"] = report.intermediate->u;
        j["v"] = report.intermediate->v;
    } else {
        j["u"] = nullptr;
        j["v"] = nullptr;
    }
    j["K"] = optional_number(report.ds_conflict_mass);
    return j;
}

json to_json(const AuditReport& report)
{
    const AuditConfig& c = report.config;
    json j = json::object();
    j["format"] = kAuditFormat;
    j["rng"] = kRngDescription;
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["rule"] = to_string(c.rule);
    j["p"] = optional_number(c.p);
    j["tolerances"] = {
        {"commutativity", c.tolerances.commutativity},
        {"associativity", c.tolerances.associativity},
        {"continuity_delta", c.tolerances.continuity_delta},
        {"continuity_gain", c.tolerances.continuity_gain},
        {"identity", c.tolerances.identity},
        {"symmetry", c.tolerances.symmetry},
        {"widening_slack", c.tolerances.widening_slack},
        {"reinforcement_slack", c.tolerances.reinforcement_slack},
    };
    j["regime_filters"] = {
        {"b1_v_ratio", c.regime.b1_v_ratio},
        {"b1_cancel_ratio", c.regime.b1_cancel_ratio},
        {"b1_jitter", c.regime.b1_jitter},
        {"a4_min_width", c.regime.a4_min_width},
    };
    j["map"] = {{"width_floor", c.map.width_floor}, {"zero_radius", c.map.zero_radius}};

    json laws = json::object();
    for (Law law : kAllLaws) {
        const LawStats& s = report.stats(law);
        json ces = json::array();
        for (const auto& ce : s.counterexamples) {
            json inputs = json::array();
            json outputs = json::array();
            for (const auto& e : ce.inputs) inputs.push_back(to_json(e));
            for (const auto& e : ce.outputs) outputs.push_back(to_json(e));
            ces.push_back({{"trial", ce.trial}, {"inputs", inputs}, {"outputs", outputs},
                           {"magnitude", ce.magnitude}});
        }
        laws[std::string(law_id(law))] = {
            {"name", law_name(law)},
            {"pass", s.pass},
            {"fail", s.fail},
            {"skipped", s.skipped},
            {"worst", optional_number(s.worst)},
            {"counterexamples", ces},
        };
    }
    j["laws"] = laws;
    j["failures"] = report.total_failures();
    return j;
}

std::string dump_line(const json& j)
{
    return j.dump();
}

} // namespace evfuse
