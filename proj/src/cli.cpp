#include "calign/cli.hpp"

#include <filesystem>
#include <sstream>

#include "calign/json_io.hpp"
#include "calign/lint.hpp"
#include "calign/overrides.hpp"
#include "calign/worksheet.hpp"

namespace calign {

namespace fs = std::filesystem;

namespace {

struct LoadedCorpus {
    CorpusManifest manifest;
    Corpus corpus;
    std::map<RunKey, GateClassifiedReview> gates;
};

LoadedCorpus load_all(const EngineConfig& cfg) {
    LoadedCorpus lc;
    lc.manifest = load_manifest(cfg.manifest_path);
    lc.corpus = load_corpus(lc.manifest);
    for (const auto& [key, ref] : lc.manifest.graph_index) {
        if (!ref.gate_path) continue;
        const AgenticReview& review = lc.corpus.reviews.at(key);
        lc.gates[key] = parse_gate_file(read_file(lc.manifest.resolve(*ref.gate_path)), review);
    }
    return lc;
}

// Lint every graph; returns the diagnostics and whether any error was seen.
std::pair<std::vector<Diagnostic>, bool> lint_corpus(const Corpus& corpus) {
    std::vector<Diagnostic> all;
    bool errors = false;
    for (const auto& [key, g] : corpus.graphs) {
        auto diags = lint_graph(g);
        for (auto& d : diags) {
            if (d.severity == DiagSeverity::error) errors = true;
            all.push_back(std::move(d));
        }
    }
    return {all, errors};
}

// Metric-reading commands refuse error diagnostics outright; warnings pass
// only under --force.
bool gate_for_metrics(const std::vector<Diagnostic>& diags, bool errors, bool force,
                      std::ostream& out) {
    for (const auto& d : diags) out << render_diagnostic(d) << "\n";
    if (errors) {
        out << "lint gate failed: error diagnostics present\n";
        return false;
    }
    if (!diags.empty() && !force) {
        out << "lint gate failed: warnings present (use --force to proceed)\n";
        return false;
    }
    return true;
}

std::vector<GraphCase> all_cases(const LoadedCorpus& lc) {
    std::vector<GraphCase> cases;
    for (const auto& [key, graph] : lc.corpus.graphs) {
        GraphCase c;
        c.graph = &graph;
        c.paper = &lc.corpus.papers.at(key.paper_id);
        auto rit = lc.corpus.reviews.find(key);
        if (rit != lc.corpus.reviews.end()) c.native_verdict = rit->second.native_verdict;
        auto git = lc.gates.find(key);
        if (git != lc.gates.end()) c.gate = gate_verdict(git->second);
        cases.push_back(c);
    }
    return cases;
}

std::vector<SystemReport> build_reports(const LoadedCorpus& lc, const LadderConfig& cfg) {
    std::vector<SystemReport> reports;
    for (const auto& system : lc.manifest.systems)
        reports.push_back(aggregate_system(lc.manifest, lc.corpus, lc.gates, system, cfg));
    return reports;
}

void maybe_write(const EngineConfig& cfg, const std::string& name, const std::string& body) {
    if (cfg.out_dir.empty()) return;
    fs::create_directories(cfg.out_dir);
    write_file((fs::path(cfg.out_dir) / name).string(), body);
}

std::string run_stem(const RunKey& key) {
    return key.paper_id + "_" + key.system_id + "_" + key.run_id;
}

}  // namespace

int cmd_lint(const EngineConfig& cfg, std::ostream& out) {
    CorpusManifest manifest = load_manifest(cfg.manifest_path);

    std::map<std::string, PaperRecord> papers;
    bool errors = false;
    auto report = [&](const std::string& location, const std::string& message) {
        Diagnostic d{DiagSeverity::error, "LOAD_ERROR", location, message};
        out << render_diagnostic(d) << "\n";
        errors = true;
    };

    for (const auto& path : manifest.paper_paths) {
        try {
            PaperRecord p = parse_official_sheet(read_file(manifest.resolve(path)));
            papers[p.paper_id] = std::move(p);
        } catch (const std::exception& e) {
            report(path, e.what());
        }
    }

    // Per-entry isolation: one broken file never stops the sweep.
    for (const auto& [key, ref] : manifest.graph_index) {
        try {
            auto pit = papers.find(key.paper_id);
            if (pit == papers.end())
                throw ParseError("paper " + key.paper_id + " unavailable for this entry");
            AgenticReview review = parse_agentic_sheet(read_file(manifest.resolve(ref.review_path)));
            GraphFile gf = parse_graph_file(read_file(manifest.resolve(ref.graph_path)));
            MatchGraph g = assemble_graph(pit->second, review, gf);
            for (const auto& d : lint_graph(g)) {
                out << render_diagnostic(d) << "\n";
                if (d.severity == DiagSeverity::error) errors = true;
            }
        } catch (const std::exception& e) {
            report(run_stem(key), e.what());
        }
    }
    return errors ? 1 : 0;
}

int cmd_apply_overrides(const EngineConfig& cfg, std::ostream& out) {
    LoadedCorpus lc = load_all(cfg);
    bool failures = false;

    for (const auto& [key, ref] : lc.manifest.graph_index) {
        const MatchGraph& g = lc.corpus.graphs.at(key);
        auto input_diags = lint_graph(g);
        if (has_errors(input_diags)) {
            for (const auto& d : input_diags) out << render_diagnostic(d) << "\n";
            out << run_stem(key) << ": input graph fails the lint gate, skipped\n";
            failures = true;
            continue;
        }
        fs::path override_path = fs::path(cfg.overrides_dir) / (run_stem(key) + ".json");
        std::vector<OverrideEntry> entries;
        if (fs::exists(override_path)) entries = parse_overrides(read_file(override_path.string()));

        try {
            MatchGraph corrected = apply_overrides(g, entries, cfg.ladder.severity_policy);
            GraphDiff diff = diff_graphs(g, corrected);
            out << run_stem(key) << ":\n" << render_diff(diff);

            std::string body = serialize_graph_file(to_graph_file(corrected));
            if (!cfg.out_dir.empty()) {
                fs::create_directories(fs::path(cfg.out_dir) / "graphs-corrected");
                write_file((fs::path(cfg.out_dir) / "graphs-corrected" /
                            (run_stem(key) + ".json")).string(),
                           body);
            } else {
                // Alongside the original; the original file is never touched.
                std::string original = lc.manifest.resolve(ref.graph_path);
                write_file(original + ".corrected.json", body);
            }
        } catch (const std::exception& e) {
            out << run_stem(key) << ": override application failed: " << e.what() << "\n";
            failures = true;
        }
    }
    return failures ? 1 : 0;
}

int cmd_metrics(const EngineConfig& cfg, std::ostream& out) {
    LoadedCorpus lc = load_all(cfg);
    auto [diags, errors] = lint_corpus(lc.corpus);
    if (!gate_for_metrics(diags, errors, cfg.force, out)) return 1;

    std::vector<SystemReport> reports = build_reports(lc, cfg.ladder);

    std::string header = render_config_header(cfg);
    if (cfg.format == "csv") {
        std::string csv = header + render_csv(reports);
        out << csv;
        maybe_write(cfg, "report.csv", csv);
    } else if (cfg.format == "records") {
        std::string records = serialize_reports(reports, cfg);
        out << records;
        maybe_write(cfg, "report.json", records);
    } else {
        std::ostringstream body;
        body << header << "\n";
        body << render_accuracy_table(reports) << "\n";
        body << render_core_table(reports) << "\n";
        body << render_attention_table(reports) << "\n";
        body << render_topk_table(reports, cfg.ladder.k_values);
        out << body.str();
        maybe_write(cfg, "report.txt", body.str());
    }
    return 0;
}

int cmd_sensitivity(const EngineConfig& cfg, std::ostream& out) {
    LoadedCorpus lc = load_all(cfg);
    auto [diags, errors] = lint_corpus(lc.corpus);
    if (!gate_for_metrics(diags, errors, cfg.force, out)) return 1;

    SensitivityReport s = compute_sensitivity(all_cases(lc));
    std::string body = render_config_header(cfg) + "\n" + render_sensitivity(s);
    out << body;
    maybe_write(cfg, "sensitivity.txt", body);
    return 0;
}

int cmd_stats(const EngineConfig& cfg, std::ostream& out) {
    LoadedCorpus lc = load_all(cfg);
    auto [diags, errors] = lint_corpus(lc.corpus);
    if (!gate_for_metrics(diags, errors, cfg.force, out)) return 1;

    std::vector<SystemReport> reports = build_reports(lc, cfg.ladder);
    std::vector<StatsRow> rows = compute_stats(reports, cfg);
    std::string body = render_config_header(cfg) + "\n" + render_stats(rows, cfg);
    out << body;
    maybe_write(cfg, "stats.txt", body);
    return 0;
}

int cmd_worksheets(const EngineConfig& cfg, std::ostream& out) {
    LoadedCorpus lc = load_all(cfg);
    auto [diags, errors] = lint_corpus(lc.corpus);
    if (!gate_for_metrics(diags, errors, cfg.force, out)) return 1;

    fs::path dir = cfg.out_dir.empty() ? fs::path("worksheets")
                                       : fs::path(cfg.out_dir) / "worksheets";
    fs::create_directories(dir);
    long written = 0;
    for (const auto& [key, g] : lc.corpus.graphs) {
        Worksheet w = generate_worksheet(g, lc.corpus.papers.at(key.paper_id));
        write_file((dir / (run_stem(key) + ".txt")).string(), render_worksheet(w));
        ++written;
    }
    out << "wrote " << written << " worksheet(s) under " << dir.string() << "\n";
    return 0;
}

int cmd_fixtures(const EngineConfig& cfg, FixtureProfile profile, int size, std::ostream& out) {
    std::string dir = cfg.out_dir.empty() ? "fixture-corpus" : cfg.out_dir;
    generate_fixture_corpus(profile, size, cfg.seed, dir);
    out << "generated " << to_string(profile) << " corpus of " << size << " paper(s) under "
        << dir << "\n";
    return 0;
}

}  // namespace calign
