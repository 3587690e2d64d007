#ifndef EVFUSE_SERIALIZE_HPP
#define EVFUSE_SERIALIZE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "evfuse/audit.hpp"
#include "evfuse/combinators.hpp"

namespace evfuse {

// Schema tags written into every output record.
inline constexpr std::string_view kFusionFormat = "evfuse-fusion/1";
inline constexpr std::string_view kAuditFormat = "evfuse-audit/1";

// One line of combine input: {"lower": .., "upper": .., "source": .., "timestamp": ..}.
struct EvidenceRecord {
    EvidenceInterval interval = EvidenceInterval::vacuous();
    std::optional<std::string> source;
    std::optional<std::string> timestamp;
};

class RecordError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws RecordError on malformed JSON, missing or non-numeric bounds,
// or bounds rejected by make_interval.
EvidenceRecord parse_record(std::string_view line);
EvidenceRecord record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EvidenceInterval& e);
nlohmann::json to_json(const FusionReport& report);
nlohmann::json to_json(const AuditReport& report);

// Single-line, key-ordered rendering; identical input gives identical bytes.
std::string dump_line(const nlohmann::json& j);

} // namespace evfuse

#endif // EVFUSE_SERIALIZE_HPP
