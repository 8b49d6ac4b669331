#include "calign/json_io.hpp"

#include <fstream>
#include <sstream>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace calign {

using json = nlohmann::json;

namespace {

json parse_json(const std::string& bytes, const char* what) {
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw ParseError(std::string("malformed JSON in ") + what);
    return j;
}

const json& require(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string(what) + ": missing required field \"" + key + "\"");
    return *it;
}

std::string require_string(const json& j, const char* key, const char* what) {
    const json& v = require(j, key, what);
    if (!v.is_string())
        throw ParseError(std::string(what) + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

bool require_bool(const json& j, const char* key, const char* what) {
    const json& v = require(j, key, what);
    if (!v.is_boolean())
        throw ParseError(std::string(what) + ": field \"" + key + "\" must be a boolean");
    return v.get<bool>();
}

std::vector<std::string> string_list(const json& j, const char* key, const char* what) {
    std::vector<std::string> out;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return out;
    if (!it->is_array())
        throw ParseError(std::string(what) + ": field \"" + key + "\" must be an array");
    for (const auto& e : *it) {
        if (!e.is_string())
            throw ParseError(std::string(what) + ": field \"" + key + "\" holds a non-string");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::optional<std::string> optional_string(const json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string())
        throw ParseError(std::string(what) + ": field \"" + key + "\" must be a string or null");
    return it->get<std::string>();
}

}  // namespace

PaperRecord parse_official_sheet(const std::string& bytes) {
    json j = parse_json(bytes, "official sheet");
    PaperRecord paper;
    paper.paper_id = require_string(j, "paper_id", "official sheet");
    paper.official_verdict = verdict_from_string(require_string(j, "official_verdict", "official sheet"));
    paper.venue = require_string(j, "venue", "official sheet");
    paper.pdf_is_revised = require_bool(j, "pdf_is_revised", "official sheet");

    const json& concerns = require(j, "concerns", "official sheet");
    if (!concerns.is_array()) throw ParseError("official sheet: \"concerns\" must be an array");
    for (const auto& cj : concerns) {
        OfficialConcern c;
        c.id = require_string(cj, "id", "official concern");
        const std::string where = paper.paper_id + "/" + c.id;
        c.statement = require_string(cj, "statement", where.c_str());
        c.evidence_quotes = string_list(cj, "evidence_quotes", where.c_str());
        c.severity = severity_from_string(require_string(cj, "severity", where.c_str()));
        c.treatment = treatment_from_string(require_string(cj, "ac_treatment", where.c_str()));
        c.decisive = require_bool(cj, "decisive", where.c_str());
        // addressed_in_pdf: bool on resolved concerns, absent (or null) otherwise.
        auto pit = cj.find("addressed_in_pdf");
        if (pit != cj.end() && !pit->is_null()) {
            if (!pit->is_boolean())
                throw ParseError(where + ": addressed_in_pdf must be a boolean");
            if (c.treatment != AcTreatment::resolved)
                throw ParseError(where + ": addressed_in_pdf present on non-resolved concern");
            c.addressed_in_pdf = pit->get<bool>() ? PdfState::addressed : PdfState::not_addressed;
        } else {
            c.addressed_in_pdf = PdfState::not_applicable;
        }
        c.provenance = string_list(cj, "provenance", where.c_str());
        c.tags = string_list(cj, "tags", where.c_str());
        auto rit = cj.find("critical_references");
        if (rit != cj.end() && !rit->is_null()) {
            if (!rit->is_array()) throw ParseError(where + ": critical_references must be an array");
            for (const auto& rj : *rit) {
                CriticalReference ref;
                ref.citation = require_string(rj, "citation", where.c_str());
                ref.role = require_string(rj, "role", where.c_str());
                c.critical_references.push_back(std::move(ref));
            }
        }
        paper.concerns.push_back(std::move(c));
    }
    validate(paper);
    return paper;
}

AgenticReview parse_agentic_sheet(const std::string& bytes) {
    json j = parse_json(bytes, "agentic sheet");
    AgenticReview review;
    review.paper_id = require_string(j, "paper_id", "agentic sheet");
    review.system_id = require_string(j, "system_id", "agentic sheet");
    review.run_id = require_string(j, "run_id", "agentic sheet");
    auto vit = j.find("native_verdict");
    if (vit != j.end() && !vit->is_null()) {
        if (!vit->is_string())
            throw ParseError("agentic sheet: native_verdict must be a string or null");
        review.native_verdict = verdict_from_string(vit->get<std::string>());
    }
    const json& concerns = require(j, "concerns", "agentic sheet");
    if (!concerns.is_array()) throw ParseError("agentic sheet: \"concerns\" must be an array");
    for (const auto& cj : concerns) {
        AgenticConcern c;
        c.id = require_string(cj, "id", "agentic concern");
        const std::string where = review.paper_id + "/" + c.id;
        c.statement = require_string(cj, "statement", where.c_str());
        c.severity = severity_from_string(require_string(cj, "severity", where.c_str()));
        c.decisive = require_bool(cj, "decisive", where.c_str());
        c.addressability =
            addressability_from_string(require_string(cj, "addressability", where.c_str()));
        c.mechanism = optional_string(cj, "mechanism", where.c_str());
        c.origin = optional_string(cj, "origin", where.c_str());
        c.source_detail = optional_string(cj, "source_detail", where.c_str());
        review.concerns.push_back(std::move(c));
    }
    validate(review);
    return review;
}

GraphFile parse_graph_file(const std::string& bytes) {
    json j = parse_json(bytes, "match graph");
    GraphFile gf;
    gf.paper_id = require_string(j, "paper_id", "match graph");
    gf.system_id = require_string(j, "system_id", "match graph");
    gf.run_id = require_string(j, "run_id", "match graph");
    const json& edges = require(j, "edges", "match graph");
    if (!edges.is_array()) throw ParseError("match graph: \"edges\" must be an array");
    for (const auto& ej : edges) {
        MatchEdge e;
        e.official_id = require_string(ej, "official_id", "match edge");
        e.agentic_id = require_string(ej, "agentic_id", "match edge");
        e.match_type = match_type_from_string(require_string(ej, "match_type", "match edge"));
        e.severity_alignment =
            severity_alignment_from_string(require_string(ej, "severity_alignment", "match edge"));
        e.judgment_alignment =
            judgment_alignment_from_string(require_string(ej, "judgment_alignment", "match edge"));
        gf.edges.push_back(std::move(e));
    }
    gf.unmatched_official = string_list(j, "unmatched_official", "match graph");
    gf.unmatched_agentic = string_list(j, "unmatched_agentic", "match graph");
    return gf;
}

namespace {

json concern_to_json(const OfficialConcern& c) {
    json cj;
    cj["id"] = c.id;
    cj["statement"] = c.statement;
    cj["evidence_quotes"] = c.evidence_quotes;
    cj["severity"] = std::string(to_string(c.severity));
    cj["ac_treatment"] = std::string(to_string(c.treatment));
    cj["decisive"] = c.decisive;
    if (c.addressed_in_pdf != PdfState::not_applicable)
        cj["addressed_in_pdf"] = c.addressed_in_pdf == PdfState::addressed;
    cj["provenance"] = c.provenance;
    cj["tags"] = c.tags;
    json refs = json::array();
    for (const auto& r : c.critical_references)
        refs.push_back({{"citation", r.citation}, {"role", r.role}});
    cj["critical_references"] = std::move(refs);
    return cj;
}

json concern_to_json(const AgenticConcern& c) {
    json cj;
    cj["id"] = c.id;
    cj["statement"] = c.statement;
    cj["severity"] = std::string(to_string(c.severity));
    cj["decisive"] = c.decisive;
    cj["addressability"] = std::string(to_string(c.addressability));
    cj["mechanism"] = c.mechanism ? json(*c.mechanism) : json(nullptr);
    cj["origin"] = c.origin ? json(*c.origin) : json(nullptr);
    cj["source_detail"] = c.source_detail ? json(*c.source_detail) : json(nullptr);
    return cj;
}

}  // namespace

std::string serialize_official_sheet(const PaperRecord& paper) {
    json j;
    j["paper_id"] = paper.paper_id;
    j["official_verdict"] = std::string(to_string(paper.official_verdict));
    j["venue"] = paper.venue;
    j["pdf_is_revised"] = paper.pdf_is_revised;
    json concerns = json::array();
    for (const auto& c : paper.concerns) concerns.push_back(concern_to_json(c));
    j["concerns"] = std::move(concerns);
    return j.dump(2) + "\n";
}

std::string serialize_agentic_sheet(const AgenticReview& review) {
    json j;
    j["paper_id"] = review.paper_id;
    j["system_id"] = review.system_id;
    j["run_id"] = review.run_id;
    j["native_verdict"] =
        review.native_verdict ? json(std::string(to_string(*review.native_verdict))) : json(nullptr);
    json concerns = json::array();
    for (const auto& c : review.concerns) concerns.push_back(concern_to_json(c));
    j["concerns"] = std::move(concerns);
    return j.dump(2) + "\n";
}

std::string serialize_graph_file(const GraphFile& gf) {
    json j;
    j["paper_id"] = gf.paper_id;
    j["system_id"] = gf.system_id;
    j["run_id"] = gf.run_id;
    json edges = json::array();
    for (const auto& e : gf.edges) {
        edges.push_back({{"official_id", e.official_id},
                         {"agentic_id", e.agentic_id},
                         {"match_type", std::string(to_string(e.match_type))},
                         {"severity_alignment", std::string(to_string(e.severity_alignment))},
                         {"judgment_alignment", std::string(to_string(e.judgment_alignment))}});
    }
    j["edges"] = std::move(edges);
    j["unmatched_official"] = gf.unmatched_official;
    j["unmatched_agentic"] = gf.unmatched_agentic;
    return j.dump(2) + "\n";
}

GraphFile to_graph_file(const MatchGraph& g) {
    GraphFile gf;
    gf.paper_id = g.paper_id;
    gf.system_id = g.system_id;
    gf.run_id = g.run_id;
    gf.edges = g.edges;
    sort_edges_canonical(gf.edges);
    gf.unmatched_official = g.unmatched_official;
    gf.unmatched_agentic = g.unmatched_agentic;
    return gf;
}

MatchGraph assemble_graph(const PaperRecord& paper, const AgenticReview& review,
                          const GraphFile& gf) {
    if (gf.paper_id != paper.paper_id)
        throw GraphError("graph file paper_id \"" + gf.paper_id + "\" does not match sheet \"" +
                         paper.paper_id + "\"");
    if (gf.paper_id != review.paper_id || gf.system_id != review.system_id ||
        gf.run_id != review.run_id)
        throw GraphError("graph file key does not match agentic sheet for " + gf.paper_id);

    MatchGraph g;
    g.paper_id = gf.paper_id;
    g.system_id = gf.system_id;
    g.run_id = gf.run_id;
    g.official = paper.concerns;
    g.agentic = review.concerns;
    g.edges = gf.edges;
    sort_edges_canonical(g.edges);
    g.unmatched_official = gf.unmatched_official;
    g.unmatched_agentic = gf.unmatched_agentic;
    return g;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write file: " + path);
    out << contents;
    if (!out) throw ParseError("write failed: " + path);
}

}  // namespace calign
