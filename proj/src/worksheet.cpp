#include "calign/worksheet.hpp"

#include <algorithm>
#include <sstream>

#include "calign/lint.hpp"

namespace calign {

namespace {

// Official entries show id, severity, statement and evidence only. AC
// treatment, decisive flags and PDF state stay out: they encode the case
// outcome the verifier must not see.
void render_official(std::ostringstream& ss, const OfficialConcern& c, const char* indent) {
    ss << indent << c.id << " (" << to_string(c.severity) << "): " << c.statement << "\n";
    for (const auto& q : c.evidence_quotes) ss << indent << "  quote: \"" << q << "\"\n";
}

void render_agentic(std::ostringstream& ss, const AgenticConcern& c, const char* indent) {
    ss << indent << c.id << " (" << to_string(c.severity) << (c.decisive ? ", decisive" : "")
       << "): " << c.statement << "\n";
    if (c.source_detail) ss << indent << "  source: " << *c.source_detail << "\n";
}

void render_edge(std::ostringstream& ss, const MatchGraph& g, const MatchEdge& e) {
    ss << e.official_id << " -- " << e.agentic_id << "  [" << to_string(e.match_type)
       << "]  severity_alignment=" << to_string(e.severity_alignment)
       << "  judgment_alignment=" << to_string(e.judgment_alignment) << "\n";
    if (const auto* o = g.find_official(e.official_id)) render_official(ss, *o, "  ");
    if (const auto* a = g.find_agentic(e.agentic_id)) render_agentic(ss, *a, "  ");
}

}  // namespace

Worksheet generate_worksheet(const MatchGraph& g, const PaperRecord& paper) {
    if (paper.paper_id != g.paper_id)
        throw GraphError("worksheet paper mismatch: " + paper.paper_id + " vs " + g.paper_id);
    require_lint_clean(g);

    Worksheet w;
    w.paper_id = g.paper_id;
    w.system_id = g.system_id;
    w.run_id = g.run_id;

    std::vector<MatchEdge> ordered = g.edges;
    sort_edges_canonical(ordered);

    std::ostringstream strict, related;
    for (const auto& e : ordered) {
        if (e.is_strict())
            render_edge(strict, g, e);
        else
            render_edge(related, g, e);
    }
    w.section_strict = strict.str();
    w.section_related = related.str();

    std::ostringstream miss;
    for (const auto& id : g.unmatched_official)
        if (const auto* o = g.find_official(id)) render_official(miss, *o, "");
    w.section_unmatched_official = miss.str();

    std::ostringstream phantom;
    for (const auto& id : g.unmatched_agentic)
        if (const auto* a = g.find_agentic(id)) render_agentic(phantom, *a, "");
    w.section_unmatched_agentic = phantom.str();

    return w;
}

std::string render_worksheet(const Worksheet& w) {
    auto section = [](std::ostringstream& ss, const char* title, const std::string& body) {
        ss << title << "\n" << std::string(std::string_view(title).size(), '-') << "\n";
        ss << (body.empty() ? std::string("(none)\n") : body) << "\n";
    };
    std::ostringstream ss;
    ss << "WORKSHEET paper=" << w.paper_id << " system=" << w.system_id << " run=" << w.run_id
       << "\n\n";
    section(ss, "STRICT EDGES", w.section_strict);
    section(ss, "UNMATCHED OFFICIAL", w.section_unmatched_official);
    section(ss, "UNMATCHED AGENTIC", w.section_unmatched_agentic);
    section(ss, "RELATED (context)", w.section_related);
    return ss.str();
}

}  // namespace calign
