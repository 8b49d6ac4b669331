#pragma once
// Deterministic verdict inference from gate-classified concerns, and the
// default-REJECT fold for ambiguous cases. These are the only verdict
// sources the engine computes itself; the gate categories and the positive
// acceptance signal are upstream inputs.
//
// Gate classification file: UTF-8 JSON
//   { "concerns": [{"agentic_id": "A1", "gate_code": "G1"|"G2"|"G4"|"G5"|"none"}],
//     "positive_acceptance_signal": bool }
// Concerns absent from the list default to "none"; unknown or duplicated ids
// are errors.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "calign/concern.hpp"

namespace calign {

// Fundamental-gate categories. G3 is deliberately absent from the scheme.
enum class GateCategory {
    g1_claim_evidence,
    g2_baseline_fairness,
    g4_validity,
    g5_novelty,
    none,
};

std::string_view to_string(GateCategory c);
GateCategory gate_category_from_string(std::string_view tok);

struct GateClassifiedReview {
    std::vector<std::pair<AgenticConcern, GateCategory>> concerns;
    bool positive_acceptance_signal = false;
};

enum class InferredValue { accept, reject, ambiguous };
enum class VerdictSource { native, gate, gate_default_reject };

std::string_view to_string(InferredValue v);
std::string_view to_string(VerdictSource s);
VerdictSource verdict_source_from_string(std::string_view tok);

struct InferredVerdict {
    InferredValue value = InferredValue::ambiguous;
    VerdictSource source = VerdictSource::gate;
    friend bool operator==(const InferredVerdict&, const InferredVerdict&) = default;
};

// REJECT if any fatal concern is present, or at least two fatal/major
// concerns carry a fundamental gate; ACCEPT if neither trigger fires and the
// positive acceptance signal is set; AMBIGUOUS otherwise.
InferredVerdict gate_verdict(const GateClassifiedReview& review);

// ambiguous -> reject (source gate_default_reject); accept/reject pass
// through unchanged. Idempotent.
InferredVerdict default_reject_fold(InferredVerdict v);

// Join a parsed gate file against the review's concern list (every concern
// appears exactly once; ids not in the review are errors).
GateClassifiedReview parse_gate_file(const std::string& bytes, const AgenticReview& review);
std::string serialize_gate_file(const GateClassifiedReview& review);

// Binary verdict for accuracy pairing; ambiguous maps to nullopt.
std::optional<Verdict> to_binary(const InferredVerdict& v);

}  // namespace calign
