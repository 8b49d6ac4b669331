#pragma once
// Shared hand-built fixtures for the test suites. The "worked example" graph
// is an accepted paper with six concerns per side, four strict edges, one
// related edge, three decisive flags (one excused, one re-escalating, one
// fabricated phantom). Statement texts deliberately avoid verdict tokens so
// worksheet isolation can be grepped.

#include <filesystem>
#include <string>

#include "calign/match_graph.hpp"

namespace testfx {

using namespace calign;

inline OfficialConcern official(std::string id, Severity sev, AcTreatment t,
                                PdfState pdf = PdfState::not_applicable) {
    OfficialConcern o;
    o.id = std::move(id);
    o.statement = "The evaluation omits stronger baselines for the central experiments.";
    o.evidence_quotes = {"the comparison set is thin"};
    o.severity = sev;
    o.treatment = t;
    o.decisive = t == AcTreatment::decisive_blocker;
    o.addressed_in_pdf = pdf;
    o.provenance = {"reviewer-1"};
    return o;
}

inline AgenticConcern agentic(std::string id, Severity sev, bool decisive) {
    AgenticConcern a;
    a.id = std::move(id);
    a.statement = "The measurement protocol relies on an unverified assumption.";
    a.severity = sev;
    a.decisive = decisive;
    a.addressability = Addressability::unknown;
    return a;
}

inline MatchEdge edge(std::string oid, std::string aid, MatchType t) {
    MatchEdge e;
    e.official_id = std::move(oid);
    e.agentic_id = std::move(aid);
    e.match_type = t;
    e.judgment_alignment = JudgmentAlignment::not_applicable;
    return e;
}

inline PaperRecord worked_paper() {
    PaperRecord p;
    p.paper_id = "P1";
    p.official_verdict = Verdict::accept;
    p.venue = "venue-alpha-2026";
    p.pdf_is_revised = true;
    p.concerns = {
        official("O1", Severity::moderate, AcTreatment::resolved, PdfState::addressed),
        official("O2", Severity::moderate, AcTreatment::resolved, PdfState::not_addressed),
        official("O3", Severity::moderate, AcTreatment::accepted_limitation),
        official("O4", Severity::minor, AcTreatment::dismissed),
        official("O5", Severity::moderate, AcTreatment::not_mentioned),
        official("O6", Severity::major, AcTreatment::unresolved),
    };
    return p;
}

inline AgenticReview worked_review() {
    AgenticReview r;
    r.paper_id = "P1";
    r.system_id = "sys";
    r.run_id = "r1";
    r.concerns = {
        agentic("A1", Severity::major, true),   // rebuttal-only detection, excused
        agentic("A2", Severity::fatal, true),   // re-escalates a fixed concern
        agentic("A3", Severity::moderate, false),
        agentic("A4", Severity::minor, false),
        agentic("A5", Severity::moderate, false),  // related-only, still a phantom
        agentic("A6", Severity::fatal, true),      // fabricated phantom
    };
    return r;
}

inline std::vector<MatchEdge> worked_edges() {
    return {
        edge("O1", "A2", MatchType::exact),
        edge("O2", "A1", MatchType::partial),
        edge("O3", "A3", MatchType::exact),
        edge("O4", "A4", MatchType::partial),
        edge("O5", "A5", MatchType::related),
    };
}

inline MatchGraph worked_graph() {
    return build_graph(worked_paper(), worked_review(), worked_edges());
}

inline std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("calign_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testfx
