#pragma once
// Structured graph corrections from semantic verification, applied before
// metric computation, plus the change report between two graph versions.
//
// Overrides file: UTF-8 JSON list of
//   {kind, official_id, agentic_id, new_match_type?, new_severity_alignment?,
//    rationale}
// Entries apply sequentially in file order; a later entry may depend on an
// earlier insert. Application is atomic per graph: any failure (including a
// post-application lint error) leaves the input untouched.

#include <optional>
#include <string>
#include <vector>

#include "calign/lint.hpp"
#include "calign/match_graph.hpp"

namespace calign {

enum class OverrideKind { reclassify, insert, remove };

std::string_view to_string(OverrideKind k);
OverrideKind override_kind_from_string(std::string_view tok);

struct OverrideEntry {
    OverrideKind kind = OverrideKind::reclassify;
    std::string official_id;
    std::string agentic_id;
    std::optional<MatchType> new_match_type;
    std::optional<SeverityAlignment> new_severity_alignment;
    std::string rationale;

    friend bool operator==(const OverrideEntry&, const OverrideEntry&) = default;
};

std::vector<OverrideEntry> parse_overrides(const std::string& bytes);
std::string serialize_overrides(const std::vector<OverrideEntry>& entries);

struct OverrideError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Apply entries in order. Reclassify updates an existing edge (at least one
// new_* field required; severity alignment is recomputed from raw severities
// under `policy` unless pinned explicitly). Insert adds a new edge
// (new_match_type required; collision with an existing edge or breaking the
// 2-edge cap is an error; applying the same remove twice is an error, not a
// no-op). Remove deletes an existing edge. Unmatched lists are re-derived
// and the result must pass the lint gate; otherwise OverrideError is thrown
// and the caller's graph is unchanged.
MatchGraph apply_overrides(const MatchGraph& g, const std::vector<OverrideEntry>& entries,
                           SeverityPolicy policy = SeverityPolicy::hybrid);

struct EdgeRelabel {
    MatchEdge before;
    MatchEdge after;
    friend bool operator==(const EdgeRelabel&, const EdgeRelabel&) = default;
};

struct GraphDiff {
    std::vector<MatchEdge> added_edges;
    std::vector<MatchEdge> removed_edges;
    std::vector<EdgeRelabel> relabeled_edges;
    std::vector<std::string> unmatched_official_added;
    std::vector<std::string> unmatched_official_removed;
    std::vector<std::string> unmatched_agentic_added;
    std::vector<std::string> unmatched_agentic_removed;

    bool empty() const;
    friend bool operator==(const GraphDiff&, const GraphDiff&) = default;
};

// Change report between two versions of the same (paper, system, run) graph.
// Key mismatch throws GraphError. Empty diff iff the graphs are value-equal
// up to edge order.
GraphDiff diff_graphs(const MatchGraph& before, const MatchGraph& after);

std::string render_diff(const GraphDiff& d);

}  // namespace calign
