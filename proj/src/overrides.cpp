#include "calign/overrides.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace calign {

using json = nlohmann::json;

std::string_view to_string(OverrideKind k) {
    switch (k) {
        case OverrideKind::reclassify: return "reclassify";
        case OverrideKind::insert: return "insert";
        case OverrideKind::remove: return "remove";
    }
    return "reclassify";
}

OverrideKind override_kind_from_string(std::string_view tok) {
    if (tok == "reclassify") return OverrideKind::reclassify;
    if (tok == "insert") return OverrideKind::insert;
    if (tok == "remove") return OverrideKind::remove;
    throw ParseError("unknown override kind \"" + std::string(tok) + "\"");
}

std::vector<OverrideEntry> parse_overrides(const std::string& bytes) {
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in overrides file");
    if (!j.is_array()) throw ParseError("overrides file must be a JSON list");
    std::vector<OverrideEntry> out;
    for (const auto& ej : j) {
        OverrideEntry e;
        if (!ej.contains("kind") || !ej["kind"].is_string())
            throw ParseError("override entry missing \"kind\"");
        e.kind = override_kind_from_string(ej["kind"].get<std::string>());
        if (!ej.contains("official_id") || !ej.contains("agentic_id"))
            throw ParseError("override entry missing edge endpoints");
        e.official_id = ej["official_id"].get<std::string>();
        e.agentic_id = ej["agentic_id"].get<std::string>();
        if (ej.contains("new_match_type") && !ej["new_match_type"].is_null())
            e.new_match_type = match_type_from_string(ej["new_match_type"].get<std::string>());
        if (ej.contains("new_severity_alignment") && !ej["new_severity_alignment"].is_null())
            e.new_severity_alignment =
                severity_alignment_from_string(ej["new_severity_alignment"].get<std::string>());
        if (ej.contains("rationale") && ej["rationale"].is_string())
            e.rationale = ej["rationale"].get<std::string>();
        out.push_back(std::move(e));
    }
    return out;
}

std::string serialize_overrides(const std::vector<OverrideEntry>& entries) {
    json j = json::array();
    for (const auto& e : entries) {
        json ej;
        ej["kind"] = std::string(to_string(e.kind));
        ej["official_id"] = e.official_id;
        ej["agentic_id"] = e.agentic_id;
        if (e.new_match_type) ej["new_match_type"] = std::string(to_string(*e.new_match_type));
        if (e.new_severity_alignment)
            ej["new_severity_alignment"] = std::string(to_string(*e.new_severity_alignment));
        ej["rationale"] = e.rationale;
        j.push_back(std::move(ej));
    }
    return j.dump(2) + "\n";
}

namespace {

std::string edge_name(const OverrideEntry& e) {
    return e.official_id + "--" + e.agentic_id;
}

// Alignment for an edge after a structural change. A pinned label is the
// verifier's explicit word and is taken verbatim (an illegal pin is caught
// by the post-application lint). Otherwise related edges carry no label and
// strict edges recompute from raw severities.
SeverityAlignment resolve_alignment(const MatchGraph& g, const MatchEdge& edge,
                                    const std::optional<SeverityAlignment>& pinned,
                                    SeverityPolicy policy) {
    if (pinned) return *pinned;
    if (!edge.is_strict()) return SeverityAlignment::not_applicable;
    const OfficialConcern* o = g.find_official(edge.official_id);
    const AgenticConcern* a = g.find_agentic(edge.agentic_id);
    if (!o || !a) throw OverrideError("cannot score edge with unresolved endpoints");
    return severity_alignment_of(policy, o->severity, a->severity);
}

}  // namespace

MatchGraph apply_overrides(const MatchGraph& g, const std::vector<OverrideEntry>& entries,
                           SeverityPolicy policy) {
    MatchGraph work = g;
    for (const auto& entry : entries) {
        auto it = std::find_if(work.edges.begin(), work.edges.end(), [&](const MatchEdge& e) {
            return e.official_id == entry.official_id && e.agentic_id == entry.agentic_id;
        });
        switch (entry.kind) {
            case OverrideKind::reclassify: {
                if (it == work.edges.end())
                    throw OverrideError("reclassify on nonexistent edge " + edge_name(entry));
                if (!entry.new_match_type && !entry.new_severity_alignment)
                    throw OverrideError("reclassify of " + edge_name(entry) +
                                        " names no new label");
                if (entry.new_match_type) it->match_type = *entry.new_match_type;
                it->severity_alignment =
                    resolve_alignment(work, *it, entry.new_severity_alignment, policy);
                break;
            }
            case OverrideKind::insert: {
                if (it != work.edges.end())
                    throw OverrideError("insert collides with existing edge " + edge_name(entry));
                if (!entry.new_match_type)
                    throw OverrideError("insert of " + edge_name(entry) +
                                        " must state new_match_type");
                if (!work.find_official(entry.official_id) ||
                    !work.find_agentic(entry.agentic_id))
                    throw OverrideError("insert endpoint not in graph: " + edge_name(entry));
                auto count = [&](std::string_view id) {
                    long n = 0;
                    for (const auto& e : work.edges)
                        if (e.official_id == id || e.agentic_id == id) ++n;
                    return n;
                };
                if (count(entry.official_id) >= 2 || count(entry.agentic_id) >= 2)
                    throw OverrideError("insert of " + edge_name(entry) +
                                        " would exceed the 2-edge cap");
                MatchEdge e;
                e.official_id = entry.official_id;
                e.agentic_id = entry.agentic_id;
                e.match_type = *entry.new_match_type;
                e.judgment_alignment = JudgmentAlignment::not_applicable;
                e.severity_alignment =
                    resolve_alignment(work, e, entry.new_severity_alignment, policy);
                work.edges.push_back(std::move(e));
                break;
            }
            case OverrideKind::remove: {
                if (it == work.edges.end())
                    throw OverrideError("remove on nonexistent edge " + edge_name(entry));
                work.edges.erase(it);
                break;
            }
        }
    }
    sort_edges_canonical(work.edges);
    work.unmatched_official = derive_unmatched_official(work);
    work.unmatched_agentic = derive_unmatched_agentic(work);

    auto diags = lint_graph(work);
    for (const auto& d : diags)
        if (d.severity == DiagSeverity::error)
            throw OverrideError("override application leaves graph invalid: " +
                                render_diagnostic(d));
    return work;
}

bool GraphDiff::empty() const {
    return added_edges.empty() && removed_edges.empty() && relabeled_edges.empty() &&
           unmatched_official_added.empty() && unmatched_official_removed.empty() &&
           unmatched_agentic_added.empty() && unmatched_agentic_removed.empty();
}

GraphDiff diff_graphs(const MatchGraph& before, const MatchGraph& after) {
    if (before.paper_id != after.paper_id || before.system_id != after.system_id ||
        before.run_id != after.run_id)
        throw GraphError("diff across different (paper, system, run) keys: " + before.paper_id +
                         " vs " + after.paper_id);

    using Key = std::pair<std::string, std::string>;
    std::map<Key, const MatchEdge*> b, a;
    for (const auto& e : before.edges) b[{e.official_id, e.agentic_id}] = &e;
    for (const auto& e : after.edges) a[{e.official_id, e.agentic_id}] = &e;

    GraphDiff d;
    for (const auto& [k, e] : a) {
        auto it = b.find(k);
        if (it == b.end())
            d.added_edges.push_back(*e);
        else if (!(*it->second == *e))
            d.relabeled_edges.push_back({*it->second, *e});
    }
    for (const auto& [k, e] : b)
        if (!a.count(k)) d.removed_edges.push_back(*e);

    auto side_delta = [](const std::vector<std::string>& from, const std::vector<std::string>& to,
                         std::vector<std::string>& added, std::vector<std::string>& removed) {
        std::set<std::string> fs(from.begin(), from.end()), ts(to.begin(), to.end());
        for (const auto& id : ts)
            if (!fs.count(id)) added.push_back(id);
        for (const auto& id : fs)
            if (!ts.count(id)) removed.push_back(id);
    };
    side_delta(before.unmatched_official, after.unmatched_official, d.unmatched_official_added,
               d.unmatched_official_removed);
    side_delta(before.unmatched_agentic, after.unmatched_agentic, d.unmatched_agentic_added,
               d.unmatched_agentic_removed);
    return d;
}

std::string render_diff(const GraphDiff& d) {
    std::ostringstream ss;
    for (const auto& e : d.added_edges)
        ss << "added " << e.official_id << "--" << e.agentic_id << " [" << to_string(e.match_type)
           << "]\n";
    for (const auto& e : d.removed_edges)
        ss << "removed " << e.official_id << "--" << e.agentic_id << " ["
           << to_string(e.match_type) << "]\n";
    for (const auto& r : d.relabeled_edges)
        ss << "relabeled " << r.before.official_id << "--" << r.before.agentic_id << " "
           << to_string(r.before.match_type) << "/" << to_string(r.before.severity_alignment)
           << " -> " << to_string(r.after.match_type) << "/"
           << to_string(r.after.severity_alignment) << "\n";
    for (const auto& id : d.unmatched_official_added) ss << "unmatched_official + " << id << "\n";
    for (const auto& id : d.unmatched_official_removed) ss << "unmatched_official - " << id << "\n";
    for (const auto& id : d.unmatched_agentic_added) ss << "unmatched_agentic + " << id << "\n";
    for (const auto& id : d.unmatched_agentic_removed) ss << "unmatched_agentic - " << id << "\n";
    if (d.empty()) ss << "no changes\n";
    return ss.str();
}

}  // namespace calign
