#include "calign/lint.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace calign {

namespace {

std::string edge_loc(const MatchGraph& g, const MatchEdge& e) {
    return g.paper_id + "/" + e.official_id + "--" + e.agentic_id;
}

void check_unmatched_side(const MatchGraph& g, const std::vector<std::string>& stated,
                          const std::vector<std::string>& derived, const char* side,
                          std::vector<Diagnostic>& out) {
    std::set<std::string> stated_set(stated.begin(), stated.end());
    std::set<std::string> derived_set(derived.begin(), derived.end());
    for (const auto& id : derived)
        if (!stated_set.count(id))
            out.push_back({DiagSeverity::error, "UNMATCHED_INCONSISTENT", g.paper_id + "/" + id,
                           std::string(side) + " concern has no strict edge but is missing from "
                                               "the stated unmatched list"});
    for (const auto& id : stated)
        if (!derived_set.count(id))
            out.push_back({DiagSeverity::error, "UNMATCHED_INCONSISTENT", g.paper_id + "/" + id,
                           std::string(side) +
                               " concern is listed unmatched but carries a strict edge or is "
                               "not in the graph"});
}

}  // namespace

std::vector<Diagnostic> lint_graph(const MatchGraph& g) {
    std::vector<Diagnostic> out;

    std::set<std::pair<std::string, std::string>> pairs;
    std::map<std::string, int> degree;
    for (const auto& e : g.edges) {
        bool resolvable = true;
        if (!g.find_official(e.official_id)) {
            out.push_back({DiagSeverity::error, "DANGLING_ENDPOINT", edge_loc(g, e),
                           "official endpoint not found in concern list"});
            resolvable = false;
        }
        if (!g.find_agentic(e.agentic_id)) {
            out.push_back({DiagSeverity::error, "DANGLING_ENDPOINT", edge_loc(g, e),
                           "agentic endpoint not found in concern list"});
            resolvable = false;
        }
        if (!pairs.insert({e.official_id, e.agentic_id}).second)
            out.push_back({DiagSeverity::error, "DUPLICATE_EDGE", edge_loc(g, e),
                           "second edge on the same endpoint pair"});
        ++degree[e.official_id];
        ++degree[e.agentic_id];

        if (!e.is_strict() && e.severity_alignment != SeverityAlignment::not_applicable)
            out.push_back({DiagSeverity::error, "ILLEGAL_RELATED_SEVERITY", edge_loc(g, e),
                           "related edge carries severity alignment \"" +
                               std::string(to_string(e.severity_alignment)) + "\""});
        (void)resolvable;
    }

    // Cap applies across all edge kinds, related included.
    for (const auto& [id, d] : degree)
        if (d > 2)
            out.push_back({DiagSeverity::error, "EDGE_CAP", g.paper_id + "/" + id,
                           "concern appears in " + std::to_string(d) + " edges (cap is 2)"});

    check_unmatched_side(g, g.unmatched_official, derive_unmatched_official(g), "official", out);
    check_unmatched_side(g, g.unmatched_agentic, derive_unmatched_agentic(g), "agentic", out);

    for (const auto& c : g.official)
        if (c.severity == Severity::minor && c.decisive)
            out.push_back({DiagSeverity::warning, "IMPLAUSIBLE_COMBO", g.paper_id + "/" + c.id,
                           "minor concern marked decisive"});

    return out;
}

std::string render_diagnostic(const Diagnostic& d) {
    std::ostringstream ss;
    ss << (d.severity == DiagSeverity::error ? "error" : "warning") << " " << d.code << " "
       << d.location << ": " << d.message;
    return ss.str();
}

void require_lint_clean(const MatchGraph& g) {
    auto diags = lint_graph(g);
    for (const auto& d : diags)
        if (d.severity == DiagSeverity::error)
            throw GraphError("lint gate failed: " + render_diagnostic(d));
}

}  // namespace calign
