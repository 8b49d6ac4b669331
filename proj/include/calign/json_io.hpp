#pragma once
// Canonical record I/O. All corpus artifacts are UTF-8 JSON:
//
//   official sheet   paper_id, official_verdict, venue, pdf_is_revised,
//                    concerns[{id, statement, evidence_quotes, severity,
//                    ac_treatment, decisive, addressed_in_pdf, provenance,
//                    tags, critical_references}]
//   agentic sheet    paper_id, system_id, run_id, native_verdict (nullable),
//                    concerns[{id, statement, severity, decisive,
//                    addressability, mechanism, origin, source_detail}]
//   match graph      paper_id, system_id, run_id, edges[{official_id,
//                    agentic_id, match_type, severity_alignment,
//                    judgment_alignment}], unmatched_official[],
//                    unmatched_agentic[]
//
// addressed_in_pdf is a bool present only on resolved concerns; its presence
// on any other treatment is a parse error. Parsing is pure and reentrant.

#include <string>
#include <vector>

#include "calign/concern.hpp"
#include "calign/match_graph.hpp"

namespace calign {

// The edge/unmatched payload of a match-graph file. Concern lists live in
// the official and agentic sheets; assembling a full MatchGraph is a join.
struct GraphFile {
    std::string paper_id;
    std::string system_id;
    std::string run_id;
    std::vector<MatchEdge> edges;
    std::vector<std::string> unmatched_official;
    std::vector<std::string> unmatched_agentic;

    friend bool operator==(const GraphFile&, const GraphFile&) = default;
};

PaperRecord parse_official_sheet(const std::string& bytes);
AgenticReview parse_agentic_sheet(const std::string& bytes);
GraphFile parse_graph_file(const std::string& bytes);

std::string serialize_official_sheet(const PaperRecord& paper);
std::string serialize_agentic_sheet(const AgenticReview& review);
std::string serialize_graph_file(const GraphFile& gf);

// Graph -> file payload (edges in canonical order, unmatched lists as held).
GraphFile to_graph_file(const MatchGraph& g);

// Join a graph file with its paper and review. Stated unmatched lists are
// preserved verbatim for the lint gate to cross-check; edge labels are kept
// as written (relabel_alignments recomputes them). Endpoint resolution and
// the edge cap are still enforced here; key mismatches throw.
MatchGraph assemble_graph(const PaperRecord& paper, const AgenticReview& review,
                          const GraphFile& gf);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace calign
