#pragma once
// Corpus manifest: the index tying papers, systems, and per-run artifacts
// together. Manifest JSON:
//
//   { "papers":  ["papers/P001.json", ...],
//     "systems": [{"system_id": "...", "model_id": "...", "runs": ["r1", ...]}],
//     "graphs":  [{"paper_id", "system_id", "run_id",
//                  "graph": "path", "review": "path", "gate": "path"?}] }
//
// Paths are relative to the manifest file's directory. Every graph entry
// names both the match-graph file and the agentic sheet it joins against;
// "gate" (optional) points to a gate-classification file for verdict
// inference.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "calign/concern.hpp"
#include "calign/json_io.hpp"

namespace calign {

struct RunKey {
    std::string paper_id;
    std::string system_id;
    std::string run_id;
    friend auto operator<=>(const RunKey&, const RunKey&) = default;
};

struct SystemEntry {
    std::string system_id;
    std::string model_id;
    std::vector<std::string> runs;
    friend bool operator==(const SystemEntry&, const SystemEntry&) = default;
};

struct GraphRef {
    std::string graph_path;
    std::string review_path;
    std::optional<std::string> gate_path;
    friend bool operator==(const GraphRef&, const GraphRef&) = default;
};

struct CorpusManifest {
    std::string base_dir;  // directory of the manifest file
    std::vector<std::string> paper_paths;
    std::vector<SystemEntry> systems;
    std::map<RunKey, GraphRef> graph_index;

    std::string resolve(const std::string& relative) const;
};

// Parse and validate a manifest: duplicate (paper, system, run) keys and
// dangling file references are errors.
CorpusManifest parse_manifest(const std::string& bytes, const std::string& base_dir);
CorpusManifest load_manifest(const std::string& path);

// A fully loaded corpus: parsed papers plus assembled (not yet linted)
// graphs per index entry. Assembly failures surface as exceptions unless
// collected via the diagnostics overload used by the lint command.
struct Corpus {
    std::map<std::string, PaperRecord> papers;          // by paper_id
    std::map<RunKey, AgenticReview> reviews;
    std::map<RunKey, MatchGraph> graphs;
};

Corpus load_corpus(const CorpusManifest& manifest);

}  // namespace calign
