#pragma once
// Audit worksheets: the per-(paper, run) document a verifier reviews.
//
// Four fixed sections, each ordered by concern id:
//   STRICT EDGES        exact/partial edges with both concern texts + evidence
//   UNMATCHED OFFICIAL  misses, with statements and evidence quotes
//   UNMATCHED AGENTIC   phantoms, with statements
//   RELATED (context)   related edges, shown for context only
//
// Ground-truth isolation: the renderer never reads the official verdict, AC
// treatment labels, official decisive flags, or any aggregate metric, so a
// verifier judging edges locally cannot be steered by outcome information.

#include <string>

#include "calign/concern.hpp"
#include "calign/match_graph.hpp"

namespace calign {

struct Worksheet {
    std::string paper_id;
    std::string system_id;
    std::string run_id;
    std::string section_strict;
    std::string section_unmatched_official;
    std::string section_unmatched_agentic;
    std::string section_related;

    friend bool operator==(const Worksheet&, const Worksheet&) = default;
};

// Requires a graph that passes the lint gate (errors refuse; warnings pass).
// paper supplies the evidence quotes; its verdict is never read.
Worksheet generate_worksheet(const MatchGraph& g, const PaperRecord& paper);

// Deterministic plain-text rendering with the four fixed section headers.
std::string render_worksheet(const Worksheet& w);

}  // namespace calign
