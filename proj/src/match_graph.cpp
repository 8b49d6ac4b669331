#include "calign/match_graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace calign {

std::string_view to_string(MatchType t) {
    switch (t) {
        case MatchType::exact: return "exact";
        case MatchType::partial: return "partial";
        case MatchType::related: return "related";
    }
    return "related";
}

std::string_view to_string(SeverityAlignment a) {
    switch (a) {
        case SeverityAlignment::match: return "match";
        case SeverityAlignment::under: return "under";
        case SeverityAlignment::over: return "over";
        case SeverityAlignment::not_applicable: return "not_applicable";
    }
    return "not_applicable";
}

std::string_view to_string(JudgmentAlignment a) {
    switch (a) {
        case JudgmentAlignment::aligned: return "aligned";
        case JudgmentAlignment::inverted: return "inverted";
        case JudgmentAlignment::mixed: return "mixed";
        case JudgmentAlignment::not_applicable: return "not_applicable";
    }
    return "not_applicable";
}

std::string_view to_string(SeverityPolicy p) {
    switch (p) {
        case SeverityPolicy::strict: return "strict";
        case SeverityPolicy::hybrid: return "hybrid";
        case SeverityPolicy::tolerant: return "tolerant";
    }
    return "hybrid";
}

std::string_view to_string(InclusionPolicy p) {
    switch (p) {
        case InclusionPolicy::strict_only: return "strict_only";
        case InclusionPolicy::strict_partial: return "strict_partial";
        case InclusionPolicy::loose: return "loose";
    }
    return "strict_partial";
}

MatchType match_type_from_string(std::string_view tok) {
    if (tok == "exact") return MatchType::exact;
    if (tok == "partial") return MatchType::partial;
    if (tok == "related") return MatchType::related;
    throw ParseError("unknown match type \"" + std::string(tok) + "\"");
}

SeverityAlignment severity_alignment_from_string(std::string_view tok) {
    if (tok == "match") return SeverityAlignment::match;
    if (tok == "under") return SeverityAlignment::under;
    if (tok == "over") return SeverityAlignment::over;
    if (tok == "not_applicable") return SeverityAlignment::not_applicable;
    throw ParseError("unknown severity alignment \"" + std::string(tok) + "\"");
}

JudgmentAlignment judgment_alignment_from_string(std::string_view tok) {
    if (tok == "aligned") return JudgmentAlignment::aligned;
    if (tok == "inverted") return JudgmentAlignment::inverted;
    if (tok == "mixed") return JudgmentAlignment::mixed;
    if (tok == "not_applicable") return JudgmentAlignment::not_applicable;
    throw ParseError("unknown judgment alignment \"" + std::string(tok) + "\"");
}

SeverityPolicy severity_policy_from_string(std::string_view tok) {
    if (tok == "strict") return SeverityPolicy::strict;
    if (tok == "hybrid") return SeverityPolicy::hybrid;
    if (tok == "tolerant") return SeverityPolicy::tolerant;
    throw ParseError("unknown severity policy \"" + std::string(tok) + "\"");
}

InclusionPolicy inclusion_policy_from_string(std::string_view tok) {
    if (tok == "strict_only" || tok == "strict-only") return InclusionPolicy::strict_only;
    if (tok == "strict_partial" || tok == "strict-partial") return InclusionPolicy::strict_partial;
    if (tok == "loose") return InclusionPolicy::loose;
    throw ParseError("unknown inclusion policy \"" + std::string(tok) + "\"");
}

const OfficialConcern* MatchGraph::find_official(std::string_view id) const {
    for (const auto& c : official)
        if (c.id == id) return &c;
    return nullptr;
}

const AgenticConcern* MatchGraph::find_agentic(std::string_view id) const {
    for (const auto& c : agentic)
        if (c.id == id) return &c;
    return nullptr;
}

const MatchEdge* MatchGraph::find_edge(std::string_view official_id,
                                       std::string_view agentic_id) const {
    for (const auto& e : edges)
        if (e.official_id == official_id && e.agentic_id == agentic_id) return &e;
    return nullptr;
}

SeverityAlignment severity_alignment_of(SeverityPolicy policy, Severity official, Severity agentic) {
    auto gap = severity_gap(official, agentic);
    if (!gap) return SeverityAlignment::not_applicable;

    bool matches = false;
    switch (policy) {
        case SeverityPolicy::strict:
            matches = *gap == 0;
            break;
        case SeverityPolicy::hybrid:
            matches = *gap == 0 ||
                      (*gap == 1 && official != Severity::fatal && agentic != Severity::fatal);
            break;
        case SeverityPolicy::tolerant:
            matches = *gap <= 1;
            break;
    }
    if (matches) return SeverityAlignment::match;
    return *severity_rank(agentic) < *severity_rank(official) ? SeverityAlignment::under
                                                              : SeverityAlignment::over;
}

namespace {

bool edge_counts(const MatchEdge& e, InclusionPolicy inc) {
    switch (inc) {
        case InclusionPolicy::strict_only: return e.match_type == MatchType::exact;
        case InclusionPolicy::strict_partial: return e.is_strict();
        case InclusionPolicy::loose: return true;
    }
    return false;
}

}  // namespace

std::vector<MatchEdge> strict_edge_set(const MatchGraph& g, InclusionPolicy inc) {
    std::vector<MatchEdge> out;
    for (const auto& e : g.edges)
        if (edge_counts(e, inc)) out.push_back(e);
    return out;
}

bool has_counted_edge_official(const MatchGraph& g, std::string_view id, InclusionPolicy inc) {
    for (const auto& e : g.edges)
        if (e.official_id == id && edge_counts(e, inc)) return true;
    return false;
}

bool has_counted_edge_agentic(const MatchGraph& g, std::string_view id, InclusionPolicy inc) {
    for (const auto& e : g.edges)
        if (e.agentic_id == id && edge_counts(e, inc)) return true;
    return false;
}

std::vector<std::string> derive_unmatched_official(const MatchGraph& g) {
    std::vector<std::string> out;
    for (const auto& c : g.official)
        if (!has_counted_edge_official(g, c.id, InclusionPolicy::strict_partial))
            out.push_back(c.id);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return id_less(a, b); });
    return out;
}

std::vector<std::string> derive_unmatched_agentic(const MatchGraph& g) {
    std::vector<std::string> out;
    for (const auto& c : g.agentic)
        if (!has_counted_edge_agentic(g, c.id, InclusionPolicy::strict_partial))
            out.push_back(c.id);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return id_less(a, b); });
    return out;
}

void sort_edges_canonical(std::vector<MatchEdge>& edges) {
    std::sort(edges.begin(), edges.end(), [](const MatchEdge& a, const MatchEdge& b) {
        if (a.official_id != b.official_id) return id_less(a.official_id, b.official_id);
        return id_less(a.agentic_id, b.agentic_id);
    });
}

namespace {

// Endpoint resolution, duplicate-pair and edge-cap checks shared by
// build_graph and apply_overrides.
void check_edge_structure(const MatchGraph& g) {
    std::set<std::pair<std::string, std::string>> pairs;
    std::map<std::string, int> degree;
    for (const auto& e : g.edges) {
        if (!g.find_official(e.official_id))
            throw GraphError(g.paper_id + ": edge endpoint " + e.official_id +
                             " not in official concern list");
        if (!g.find_agentic(e.agentic_id))
            throw GraphError(g.paper_id + ": edge endpoint " + e.agentic_id +
                             " not in agentic concern list");
        if (!pairs.insert({e.official_id, e.agentic_id}).second)
            throw GraphError(g.paper_id + ": duplicate edge " + e.official_id + "--" +
                             e.agentic_id);
        ++degree[e.official_id];
        ++degree[e.agentic_id];
    }
    for (const auto& [id, d] : degree)
        if (d > 2)
            throw GraphError(g.paper_id + ": concern " + id + " appears in " +
                             std::to_string(d) + " edges (cap is 2)");
}

}  // namespace

MatchGraph build_graph(const PaperRecord& paper, const AgenticReview& review,
                       std::vector<MatchEdge> proposed_edges, SeverityPolicy policy) {
    if (paper.paper_id != review.paper_id)
        throw GraphError("paper/review key mismatch: " + paper.paper_id + " vs " +
                         review.paper_id);
    MatchGraph g;
    g.paper_id = paper.paper_id;
    g.system_id = review.system_id;
    g.run_id = review.run_id;
    g.official = paper.concerns;
    g.agentic = review.concerns;
    g.edges = std::move(proposed_edges);
    sort_edges_canonical(g.edges);
    check_edge_structure(g);
    g = relabel_alignments(std::move(g), policy);
    g.unmatched_official = derive_unmatched_official(g);
    g.unmatched_agentic = derive_unmatched_agentic(g);
    return g;
}

MatchGraph relabel_alignments(MatchGraph g, SeverityPolicy policy) {
    for (auto& e : g.edges) {
        if (!e.is_strict()) {
            e.severity_alignment = SeverityAlignment::not_applicable;
            continue;
        }
        const OfficialConcern* o = g.find_official(e.official_id);
        const AgenticConcern* a = g.find_agentic(e.agentic_id);
        if (!o || !a)
            throw GraphError(g.paper_id + ": cannot relabel edge with unresolved endpoint " +
                             e.official_id + "--" + e.agentic_id);
        e.severity_alignment = severity_alignment_of(policy, o->severity, a->severity);
    }
    return g;
}

}  // namespace calign
