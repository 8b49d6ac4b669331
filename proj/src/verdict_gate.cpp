#include "calign/verdict_gate.hpp"

#include <map>
#include <set>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace calign {

using json = nlohmann::json;

std::string_view to_string(GateCategory c) {
    switch (c) {
        case GateCategory::g1_claim_evidence: return "G1";
        case GateCategory::g2_baseline_fairness: return "G2";
        case GateCategory::g4_validity: return "G4";
        case GateCategory::g5_novelty: return "G5";
        case GateCategory::none: return "none";
    }
    return "none";
}

GateCategory gate_category_from_string(std::string_view tok) {
    if (tok == "G1") return GateCategory::g1_claim_evidence;
    if (tok == "G2") return GateCategory::g2_baseline_fairness;
    if (tok == "G4") return GateCategory::g4_validity;
    if (tok == "G5") return GateCategory::g5_novelty;
    if (tok == "none") return GateCategory::none;
    throw ParseError("unknown gate code \"" + std::string(tok) + "\"");
}

std::string_view to_string(InferredValue v) {
    switch (v) {
        case InferredValue::accept: return "accept";
        case InferredValue::reject: return "reject";
        case InferredValue::ambiguous: return "ambiguous";
    }
    return "ambiguous";
}

std::string_view to_string(VerdictSource s) {
    switch (s) {
        case VerdictSource::native: return "native";
        case VerdictSource::gate: return "gate";
        case VerdictSource::gate_default_reject: return "gate_default_reject";
    }
    return "gate";
}

VerdictSource verdict_source_from_string(std::string_view tok) {
    if (tok == "native") return VerdictSource::native;
    if (tok == "gate") return VerdictSource::gate;
    if (tok == "gate_default_reject" || tok == "gate-default-reject")
        return VerdictSource::gate_default_reject;
    throw ParseError("unknown verdict source \"" + std::string(tok) + "\"");
}

InferredVerdict gate_verdict(const GateClassifiedReview& review) {
    bool any_fatal = false;
    long gated_high = 0;
    for (const auto& [concern, gate] : review.concerns) {
        if (concern.severity == Severity::fatal) any_fatal = true;
        bool high = concern.severity == Severity::fatal || concern.severity == Severity::major;
        if (high && gate != GateCategory::none) ++gated_high;
    }
    if (any_fatal || gated_high >= 2) return {InferredValue::reject, VerdictSource::gate};
    if (review.positive_acceptance_signal) return {InferredValue::accept, VerdictSource::gate};
    return {InferredValue::ambiguous, VerdictSource::gate};
}

InferredVerdict default_reject_fold(InferredVerdict v) {
    if (v.value == InferredValue::ambiguous)
        return {InferredValue::reject, VerdictSource::gate_default_reject};
    return v;
}

GateClassifiedReview parse_gate_file(const std::string& bytes, const AgenticReview& review) {
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in gate file");
    if (!j.is_object() || !j.contains("positive_acceptance_signal") ||
        !j["positive_acceptance_signal"].is_boolean())
        throw ParseError("gate file: missing boolean positive_acceptance_signal");

    std::map<std::string, GateCategory> by_id;
    if (j.contains("concerns")) {
        if (!j["concerns"].is_array()) throw ParseError("gate file: \"concerns\" must be a list");
        for (const auto& cj : j["concerns"]) {
            if (!cj.contains("agentic_id") || !cj.contains("gate_code"))
                throw ParseError("gate file: entry missing agentic_id or gate_code");
            std::string id = cj["agentic_id"].get<std::string>();
            if (by_id.count(id)) throw ParseError("gate file: duplicate agentic_id " + id);
            if (!review.find(id))
                throw ParseError("gate file: agentic_id " + id + " not in review");
            by_id[id] = gate_category_from_string(cj["gate_code"].get<std::string>());
        }
    }

    GateClassifiedReview out;
    out.positive_acceptance_signal = j["positive_acceptance_signal"].get<bool>();
    for (const auto& c : review.concerns) {
        auto it = by_id.find(c.id);
        out.concerns.push_back({c, it != by_id.end() ? it->second : GateCategory::none});
    }
    return out;
}

std::string serialize_gate_file(const GateClassifiedReview& review) {
    json j;
    j["positive_acceptance_signal"] = review.positive_acceptance_signal;
    json concerns = json::array();
    for (const auto& [concern, gate] : review.concerns)
        concerns.push_back(
            {{"agentic_id", concern.id}, {"gate_code", std::string(to_string(gate))}});
    j["concerns"] = std::move(concerns);
    return j.dump(2) + "\n";
}

std::optional<Verdict> to_binary(const InferredVerdict& v) {
    switch (v.value) {
        case InferredValue::accept: return Verdict::accept;
        case InferredValue::reject: return Verdict::reject;
        case InferredValue::ambiguous: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace calign
