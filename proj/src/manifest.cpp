#include "calign/manifest.hpp"

#include <filesystem>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace calign {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string CorpusManifest::resolve(const std::string& relative) const {
    fs::path p(relative);
    if (p.is_absolute()) return relative;
    return (fs::path(base_dir) / p).string();
}

CorpusManifest parse_manifest(const std::string& bytes, const std::string& base_dir) {
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in manifest");

    CorpusManifest m;
    m.base_dir = base_dir;

    if (!j.contains("papers") || !j["papers"].is_array())
        throw ParseError("manifest: \"papers\" list required");
    for (const auto& p : j["papers"]) {
        if (!p.is_string()) throw ParseError("manifest: paper entries must be path strings");
        m.paper_paths.push_back(p.get<std::string>());
    }

    if (j.contains("systems")) {
        if (!j["systems"].is_array()) throw ParseError("manifest: \"systems\" must be a list");
        for (const auto& sj : j["systems"]) {
            SystemEntry s;
            if (!sj.contains("system_id")) throw ParseError("manifest: system missing system_id");
            s.system_id = sj["system_id"].get<std::string>();
            if (sj.contains("model_id")) s.model_id = sj["model_id"].get<std::string>();
            if (sj.contains("runs"))
                for (const auto& r : sj["runs"]) s.runs.push_back(r.get<std::string>());
            m.systems.push_back(std::move(s));
        }
    }

    if (!j.contains("graphs") || !j["graphs"].is_array())
        throw ParseError("manifest: \"graphs\" list required");
    for (const auto& gj : j["graphs"]) {
        RunKey key;
        key.paper_id = gj.at("paper_id").get<std::string>();
        key.system_id = gj.at("system_id").get<std::string>();
        key.run_id = gj.at("run_id").get<std::string>();
        GraphRef ref;
        ref.graph_path = gj.at("graph").get<std::string>();
        ref.review_path = gj.at("review").get<std::string>();
        if (gj.contains("gate") && !gj["gate"].is_null())
            ref.gate_path = gj["gate"].get<std::string>();
        if (m.graph_index.count(key))
            throw ParseError("manifest: duplicate graph key " + key.paper_id + "/" +
                             key.system_id + "/" + key.run_id);
        m.graph_index[key] = std::move(ref);
    }

    // Dangling references are manifest errors, caught up front.
    for (const auto& p : m.paper_paths)
        if (!fs::exists(m.resolve(p))) throw ParseError("manifest: missing paper file " + p);
    for (const auto& [key, ref] : m.graph_index) {
        if (!fs::exists(m.resolve(ref.graph_path)))
            throw ParseError("manifest: missing graph file " + ref.graph_path);
        if (!fs::exists(m.resolve(ref.review_path)))
            throw ParseError("manifest: missing review file " + ref.review_path);
        if (ref.gate_path && !fs::exists(m.resolve(*ref.gate_path)))
            throw ParseError("manifest: missing gate file " + *ref.gate_path);
    }
    return m;
}

CorpusManifest load_manifest(const std::string& path) {
    fs::path p(path);
    return parse_manifest(read_file(path), p.parent_path().string());
}

Corpus load_corpus(const CorpusManifest& manifest) {
    Corpus corpus;
    for (const auto& path : manifest.paper_paths) {
        PaperRecord paper = parse_official_sheet(read_file(manifest.resolve(path)));
        if (corpus.papers.count(paper.paper_id))
            throw ParseError("corpus: duplicate paper_id " + paper.paper_id);
        corpus.papers[paper.paper_id] = std::move(paper);
    }
    for (const auto& [key, ref] : manifest.graph_index) {
        auto pit = corpus.papers.find(key.paper_id);
        if (pit == corpus.papers.end())
            throw ParseError("corpus: graph key references unknown paper " + key.paper_id);

        AgenticReview review = parse_agentic_sheet(read_file(manifest.resolve(ref.review_path)));
        GraphFile gf = parse_graph_file(read_file(manifest.resolve(ref.graph_path)));
        if (gf.paper_id != key.paper_id || gf.system_id != key.system_id ||
            gf.run_id != key.run_id)
            throw ParseError("corpus: graph file key disagrees with manifest entry " +
                             key.paper_id + "/" + key.system_id + "/" + key.run_id);

        MatchGraph g = assemble_graph(pit->second, review, gf);
        corpus.reviews[key] = std::move(review);
        corpus.graphs[key] = std::move(g);
    }
    return corpus;
}

}  // namespace calign
