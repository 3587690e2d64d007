#include "cli.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "evfuse/audit.hpp"
#include "evfuse/combinators.hpp"
#include "evfuse/scenario.hpp"
#include "evfuse/serialize.hpp"

namespace evfuse::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
    double epsilon_width = MapConfig{}.width_floor;
    bool table = false;
};

struct DependencyOptions {
    std::optional<double> p;
    std::optional<double> alpha1;
    std::optional<double> alpha2;
};

struct CombineOptions {
    std::string rule = "tp";
    DependencyOptions dep;
    bool final_only = false;
};

struct CompareOptions {
    std::string scenario;
};

struct AuditOptions {
    std::string rule = "tp";
    DependencyOptions dep;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rule rule_or_throw(const std::string& text)
{
    const auto rule = parse_rule(text);
    if (!rule) {
        throw UsageError("unknown rule \"" + text + "\" (expected ds, tp or mtp)");
    }
    return *rule;
}

MapConfig map_config(const CommonOptions& common)
{
    if (!(common.epsilon_width > 0.0) || !(common.epsilon_width < 1.0)) {
        throw UsageError("--epsilon-width must lie in (0, 1)");
    }
    MapConfig cfg;
    cfg.width_floor = common.epsilon_width;
    return cfg;
}

std::optional<DependencyParam> dependency(Rule rule, const DependencyOptions& opts, std::ostream& err)
{
    if (opts.alpha1.has_value() != opts.alpha2.has_value()) {
        throw UsageError("--alpha1 and --alpha2 must be given together");
    }
    try {
        if (opts.p) {
            if (opts.alpha1) {
                err << "warning: both --p and --alpha1/--alpha2 given; using --p\n";
            }
            return DependencyParam::from_exponent(*opts.p);
        }
        if (opts.alpha1) {
            return estimate_p(*opts.alpha1, *opts.alpha2);
        }
    } catch (const EvidenceError& e) {
        throw UsageError(e.what());
    }
    if (rule == Rule::MTP) {
        throw UsageError("rule mtp needs --p or --alpha1/--alpha2");
    }
    return std::nullopt;
}

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << x;
    return os.str();
}

std::string fmt(const EvidenceInterval& e)
{
    return "[" + fmt(e.lower()) + ", " + fmt(e.upper()) + "]";
}

void print_table_row(std::ostream& out, const FusionReport& r)
{
    out << std::setw(5) << r.count << "  " << std::setw(18) << std::left << fmt(r.result) << std::right
        << "  " << fmt(r.result.width()) << "  " << (r.conflict ? "yes" : "no ");
    if (r.p_used) out << "  p=" << *r.p_used;
    if (r.ds_conflict_mass) out << "  K=" << fmt(*r.ds_conflict_mass);
    out << '\n';
}

bool blank_or_comment(const std::string& line)
{
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

int cmd_combine(const CombineOptions& opts, const CommonOptions& common, std::istream& in,
                std::ostream& out, std::ostream& err)
{
    const Rule rule = rule_or_throw(opts.rule);
    const MapConfig cfg = map_config(common);
    Fuser fuser(rule, dependency(rule, opts.dep, err), cfg);

    if (common.table) {
        out << "    n  interval            width   conflict\n";
    }
    auto emit = [&](const FusionReport& r) {
        if (common.table) {
            print_table_row(out, r);
        } else {
            out << dump_line(to_json(r)) << '\n';
        }
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_or_comment(line)) {
            continue;
        }
        EvidenceRecord rec;
        try {
            rec = parse_record(line);
        } catch (const RecordError& e) {
            err << "error: line " << line_no << ": " << e.what() << '\n';
            return kInput;
        }
        try {
            const FusionReport& r = fuser.push(rec.interval);
            if (!opts.final_only) {
                emit(r);
            }
        } catch (const EvidenceError& e) {
            if (e.code() == ErrorCode::TotalConflict) {
                err << "error: line " << line_no << ": " << e.what() << '\n';
                return kTotalConflict;
            }
            throw;
        }
    }
    if (fuser.empty()) {
        err << "error: no evidence records on input\n";
        return kInput;
    }
    if (opts.final_only) {
        emit(fuser.report());
    }
    return kOk;
}

json cell_json(const ComparisonCell& cell)
{
    json j = json::object();
    if (cell.report) {
        j["lower"] = cell.report->result.lower();
        j["upper"] = cell.report->result.upper();
        j["p"] = cell.report->p_used ? json(*cell.report->p_used) : json(nullptr);
    } else {
        j["lower"] = nullptr;
        j["upper"] = nullptr;
        j["p"] = nullptr;
    }
    j["error"] = cell.error ? json(*cell.error) : json(nullptr);
    if (cell.expected) {
        j["expected"] = json::array({cell.expected->lower, cell.expected->upper});
        j["tolerance"] = cell.expected->tolerance;
        j["status"] = *cell.pass ? "PASS" : "FAIL";
    } else {
        j["expected"] = nullptr;
        j["tolerance"] = nullptr;
        j["status"] = nullptr;
    }
    return j;
}

std::string rule_header(Rule rule)
{
    switch (rule) {
    case Rule::DS: return "D-S";
    case Rule::TP: return "T-P";
    case Rule::MTP: return "mTP";
    }
    return "?";
}

void print_comparison_table(std::ostream& out, const ComparisonResult& result)
{
    std::vector<std::string> data;
    std::size_t data_width = 4;
    for (const auto& row : result.rows) {
        std::string label;
        for (std::size_t i = 0; i < row.inputs.size(); ++i) {
            label += (i ? "*" : "") + fmt(row.inputs[i]);
        }
        data_width = std::max(data_width, label.size());
        data.push_back(std::move(label));
    }

    out << "scenario: " << result.name << '\n';
    out << std::left << std::setw(static_cast<int>(data_width)) << "data";
    for (Rule rule : result.rules) {
        std::string head = rule_header(rule);
        if (rule == Rule::MTP && !result.rows.empty() && result.rows[0].cells.size() > 0) {
            for (const auto& cell : result.rows[0].cells) {
                if (cell.rule == Rule::MTP && cell.report && cell.report->p_used) {
                    std::ostringstream os;
                    os << "mTP(p=" << *cell.report->p_used << ")";
                    head = os.str();
                }
            }
        }
        out << " | " << std::setw(23) << head;
    }
    out << std::right << '\n';

    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        out << std::left << std::setw(static_cast<int>(data_width)) << data[r];
        for (const auto& cell : result.rows[r].cells) {
            std::string text = cell.report ? fmt(cell.report->result) : (cell.error ? *cell.error : "-");
            if (cell.pass) {
                text += *cell.pass ? " PASS" : " FAIL";
            }
            out << " | " << std::setw(23) << text;
        }
        out << std::right << '\n';
    }
}

int cmd_compare(const CompareOptions& opts, const CommonOptions& common, std::ostream& out,
                std::ostream& err)
{
    const MapConfig cfg = map_config(common);
    const auto path = find_scenario(opts.scenario);
    if (!path) {
        err << "error: no scenario file or bundled scenario named \"" << opts.scenario << "\"\n";
        return kInput;
    }

    ComparisonResult result;
    try {
        result = run_comparison(load_scenario(*path), cfg);
    } catch (const ScenarioError& e) {
        err << "error: " << path->string() << ": " << e.what() << '\n';
        return kInput;
    } catch (const EvidenceError& e) {
        err << "error: " << path->string() << ": " << e.what() << '\n';
        return kInput;
    }
    for (const auto& w : result.warnings) {
        err << "warning: " << w << '\n';
    }

    if (common.table) {
        print_comparison_table(out, result);
    } else {
        for (std::size_t r = 0; r < result.rows.size(); ++r) {
            const auto& row = result.rows[r];
            json inputs = json::array();
            for (const auto& e : row.inputs) inputs.push_back(to_json(e));
            json cells = json::object();
            for (const auto& cell : row.cells) cells[std::string(to_string(cell.rule))] = cell_json(cell);
            out << dump_line({{"format", "evfuse-compare/1"},
                              {"scenario", result.name},
                              {"row", r + 1},
                              {"inputs", inputs},
                              {"cells", cells}})
                << '\n';
        }
    }
    return result.any_fail() ? kCheckFailed : kOk;
}

void print_audit_table(std::ostream& out, const AuditReport& report)
{
    out << "audit rule=" << to_string(report.config.rule) << " seed=" << report.config.seed
        << " trials=" << report.config.trials;
    if (report.config.p) out << " p=" << *report.config.p;
    out << '\n' << "law  name               pass      fail      skipped   worst\n";
    for (Law law : kAllLaws) {
        const LawStats& s = report.stats(law);
        std::ostringstream worst;
        if (s.worst) {
            worst << std::scientific << std::setprecision(3) << *s.worst;
        } else {
            worst << "-";
        }
        out << std::left << std::setw(5) << law_id(law) << std::setw(19) << law_name(law) << std::right
            << std::setw(9) << s.pass << ' ' << std::setw(9) << s.fail << ' ' << std::setw(9) << s.skipped
            << "   " << worst.str() << '\n';
    }
    out << "failures: " << report.total_failures() << '\n';
}

int cmd_audit(const AuditOptions& opts, const CommonOptions& common, std::ostream& out, std::ostream& err)
{
    AuditConfig config;
    config.rule = rule_or_throw(opts.rule);
    config.seed = opts.seed;
    config.trials = opts.trials;
    config.workers = opts.workers;
    config.map = map_config(common);
    if (const auto dep = dependency(config.rule, opts.dep, err); dep && config.rule == Rule::MTP) {
        config.p = dep->p();
    }
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const AuditReport report = run_audit(config);
    if (common.table) {
        print_audit_table(out, report);
    } else {
        out << dump_line(to_json(report)) << '\n';
    }
    return report.total_failures() == 0 ? kOk : kCheckFailed;
}

void add_dependency_flags(CLI::App* cmd, DependencyOptions& dep)
{
    cmd->add_option("--p", dep.p, "cT exponent for mtp, in [1, 64]");
    cmd->add_option("--alpha1", dep.alpha1, "dependency measure p(e2|e1), in [0, 1]");
    cmd->add_option("--alpha2", dep.alpha2, "dependency measure p(e1|e2), in [0, 1]");
}

void add_common_flags(CLI::App* cmd, CommonOptions& common)
{
    cmd->add_flag("--table", common.table, "human-readable table instead of JSON lines");
    cmd->add_option("--epsilon-width", common.epsilon_width, "width floor of the triangle-to-plane map");
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Interval evidence fusion: T-P, mTP and Dempster-Shafer rules", "evfuse"};
    app.require_subcommand(1);

    CommonOptions common;
    CombineOptions combine_opts;
    CompareOptions compare_opts;
    AuditOptions audit_opts;

    auto* combine = app.add_subcommand("combine", "fuse line-delimited JSON evidence records from stdin");
    combine->add_option("--rule", combine_opts.rule, "ds, tp or mtp")->capture_default_str();
    add_dependency_flags(combine, combine_opts.dep);
    combine->add_flag("--final", combine_opts.final_only, "emit only the final report");
    add_common_flags(combine, common);

    auto* compare = app.add_subcommand("compare", "run a scenario file under each of its rules");
    compare->add_option("scenario", compare_opts.scenario, "scenario path or bundled name")->required();
    add_common_flags(compare, common);

    auto* audit = app.add_subcommand("audit", "randomised check of the combination laws");
    audit->add_option("--rule", audit_opts.rule, "ds, tp or mtp")->capture_default_str();
    audit->add_option("--trials", audit_opts.trials, "number of trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    audit->add_option("--seed", audit_opts.seed, "64-bit seed")->capture_default_str();
    audit->add_option("--workers", audit_opts.workers, "worker threads (report is independent of this)")
        ->check(CLI::PositiveNumber);
    add_dependency_flags(audit, audit_opts.dep);
    add_common_flags(audit, common);

    auto* list = app.add_subcommand("scenarios", "list bundled scenarios");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*combine) return cmd_combine(combine_opts, common, in, out, err);
        if (*compare) return cmd_compare(compare_opts, common, out, err);
        if (*audit) return cmd_audit(audit_opts, common, out, err);
        if (*list) {
            for (const auto& name : bundled_scenarios()) out << name << '\n';
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const EvidenceError& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::TotalConflict ? kTotalConflict : kInput;
    }
    return kUsage;
}

} // namespace evfuse::cli
