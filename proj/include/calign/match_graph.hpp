#pragma once
// The bipartite match graph between official and agentic concerns, plus the
// severity/inclusion policy machinery and the alignment relabeling pass.
//
// Edge semantics: exact and partial edges are "strict" and carry metrics;
// related edges are near-miss context and never count as matches. Each
// concern may appear in at most two edges (over-capped concerns indicate an
// upstream matching fault and are rejected, never split here).

#include <optional>
#include <string>
#include <vector>

#include "calign/concern.hpp"

namespace calign {

enum class MatchType { exact, partial, related };

enum class SeverityAlignment { match, under, over, not_applicable };

enum class JudgmentAlignment { aligned, inverted, mixed, not_applicable };

// Severity tolerance when deciding whether two matched concerns agree:
//   strict   - exact level only
//   hybrid   - exact, or one-level gap when neither side is fatal (default)
//   tolerant - any one-level gap, fatal included
enum class SeverityPolicy { strict, hybrid, tolerant };

// Which edge kinds count as matches:
//   strict_only    - exact
//   strict_partial - exact + partial (default)
//   loose          - exact + partial + related
enum class InclusionPolicy { strict_only, strict_partial, loose };

std::string_view to_string(MatchType t);
std::string_view to_string(SeverityAlignment a);
std::string_view to_string(JudgmentAlignment a);
std::string_view to_string(SeverityPolicy p);
std::string_view to_string(InclusionPolicy p);
MatchType match_type_from_string(std::string_view tok);
SeverityAlignment severity_alignment_from_string(std::string_view tok);
JudgmentAlignment judgment_alignment_from_string(std::string_view tok);
SeverityPolicy severity_policy_from_string(std::string_view tok);
InclusionPolicy inclusion_policy_from_string(std::string_view tok);

struct MatchEdge {
    std::string official_id;
    std::string agentic_id;
    MatchType match_type = MatchType::related;
    SeverityAlignment severity_alignment = SeverityAlignment::not_applicable;
    JudgmentAlignment judgment_alignment = JudgmentAlignment::not_applicable;

    bool is_strict() const { return match_type != MatchType::related; }
    friend bool operator==(const MatchEdge&, const MatchEdge&) = default;
};

// Per-(paper, system, run) alignment. Concern lists are embedded so the
// graph is self-contained for metric computation; unmatched lists are kept
// in canonical id order and always derivable from the edge set.
struct MatchGraph {
    std::string paper_id;
    std::string system_id;
    std::string run_id;
    std::vector<OfficialConcern> official;
    std::vector<AgenticConcern> agentic;
    std::vector<MatchEdge> edges;
    std::vector<std::string> unmatched_official;
    std::vector<std::string> unmatched_agentic;

    const OfficialConcern* find_official(std::string_view id) const;
    const AgenticConcern* find_agentic(std::string_view id) const;
    const MatchEdge* find_edge(std::string_view official_id, std::string_view agentic_id) const;

    friend bool operator==(const MatchGraph&, const MatchGraph&) = default;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Alignment of a single severity pair under a tolerance policy. Direction is
// agentic relative to official: `under` means the AI rated lower.
// Undefined gaps (either side unknown) yield not_applicable.
SeverityAlignment severity_alignment_of(SeverityPolicy policy, Severity official, Severity agentic);

// Edges that count as matches under the inclusion policy.
std::vector<MatchEdge> strict_edge_set(const MatchGraph& g, InclusionPolicy inc);

// True when the concern id is an endpoint of at least one counted edge.
bool has_counted_edge_official(const MatchGraph& g, std::string_view id, InclusionPolicy inc);
bool has_counted_edge_agentic(const MatchGraph& g, std::string_view id, InclusionPolicy inc);

// Unmatched sides derived from the edge set (exact/partial edges only;
// related-only concerns are unmatched). Sorted in canonical id order.
std::vector<std::string> derive_unmatched_official(const MatchGraph& g);
std::vector<std::string> derive_unmatched_agentic(const MatchGraph& g);

// Assemble a graph from parsed parts. Edges are validated (endpoints
// resolve, no duplicate pair, at most two edges per concern), severity
// alignments are recomputed under `policy`, and unmatched lists are derived
// from scratch; stated lists from input files are never trusted.
// Throws GraphError on any structural violation.
MatchGraph build_graph(const PaperRecord& paper, const AgenticReview& review,
                       std::vector<MatchEdge> proposed_edges,
                       SeverityPolicy policy = SeverityPolicy::hybrid);

// Recompute every strict edge's severity alignment from raw severities under
// `policy`; related edges are forced to not_applicable. Idempotent.
MatchGraph relabel_alignments(MatchGraph g, SeverityPolicy policy);

// Canonical edge order (official id, then agentic id, numeric-aware).
void sort_edges_canonical(std::vector<MatchEdge>& edges);

}  // namespace calign
