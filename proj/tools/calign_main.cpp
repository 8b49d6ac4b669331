// calign: validate, correct and score concern match graphs for AI-review
// corpora. Verbs: lint, apply-overrides, metrics, sensitivity, stats,
// worksheets, fixtures.

#include <iostream>
#include <string>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif
#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "calign/cli.hpp"
#include "calign/json_io.hpp"

namespace {

using calign::EngineConfig;
using json = nlohmann::json;

// Config-file values sit between built-in defaults and command-line flags.
void apply_config_file(EngineConfig& cfg, const std::string& path) {
    json j = json::parse(calign::read_file(path), nullptr, false);
    if (j.is_discarded()) throw calign::ParseError("malformed JSON in config file " + path);
    if (j.contains("severity_policy"))
        cfg.ladder.severity_policy =
            calign::severity_policy_from_string(j["severity_policy"].get<std::string>());
    if (j.contains("inclusion"))
        cfg.ladder.inclusion =
            calign::inclusion_policy_from_string(j["inclusion"].get<std::string>());
    if (j.contains("k_values")) cfg.ladder.k_values = j["k_values"].get<std::vector<int>>();
    if (j.contains("verdict_source"))
        cfg.ladder.predicted_verdict_source =
            calign::verdict_source_from_string(j["verdict_source"].get<std::string>());
    if (j.contains("resamples")) cfg.resamples = j["resamples"].get<long>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("manifest")) cfg.manifest_path = j["manifest"].get<std::string>();
    if (j.contains("overrides_dir")) cfg.overrides_dir = j["overrides_dir"].get<std::string>();
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
}

void validate_k_values(const std::vector<int>& ks) {
    for (size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] <= 0) throw calign::ParseError("--k values must be positive");
        if (i > 0 && ks[i] <= ks[i - 1])
            throw calign::ParseError("--k values must be ascending and distinct");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"concern match-graph validation and review-evaluation metrics"};
    app.require_subcommand(1);

    std::string config_path, manifest, overrides_dir, out_dir, format, severity, inclusion,
        verdict_source, k_csv;
    std::uint64_t seed = 0;
    long resamples = 0;
    bool force = false;

    auto add_shared = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--manifest", manifest, "corpus manifest path");
        cmd->add_option("--severity-policy", severity, "strict|hybrid|tolerant");
        cmd->add_option("--inclusion", inclusion, "strict-only|strict-partial|loose");
        cmd->add_option("--k", k_csv, "comma-separated K values");
        cmd->add_option("--verdict-source", verdict_source,
                        "native|gate|gate-default-reject");
        cmd->add_option("--seed", seed, "stream seed");
        cmd->add_option("--resamples", resamples, "bootstrap resamples");
        cmd->add_option("--format", format, "text|csv|records");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_flag("--force", force, "proceed past lint warnings");
    };

    CLI::App* lint = app.add_subcommand("lint", "lint every graph in the corpus");
    CLI::App* apply = app.add_subcommand("apply-overrides", "apply override files to graphs");
    apply->add_option("--overrides", overrides_dir, "directory of override files");
    CLI::App* metrics = app.add_subcommand("metrics", "compute ladder metrics and reports");
    CLI::App* sensitivity = app.add_subcommand("sensitivity", "policy sweep report");
    CLI::App* stats = app.add_subcommand("stats", "ICC, kappa and bootstrap CI report");
    CLI::App* worksheets = app.add_subcommand("worksheets", "emit audit worksheets");
    CLI::App* fixtures = app.add_subcommand("fixtures", "generate a synthetic corpus");
    std::string profile = "calibrated";
    int size = 4;
    fixtures->add_option("--profile", profile,
                         "reject-heavy|dilution|inverted-attention|calibrated");
    fixtures->add_option("--size", size, "paper count");

    for (CLI::App* cmd : {lint, apply, metrics, sensitivity, stats, worksheets, fixtures})
        add_shared(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        EngineConfig cfg;  // defaults: hybrid, strict_partial, k 3/5/7/10/15, 10000 resamples
        if (!config_path.empty()) apply_config_file(cfg, config_path);

        CLI::App* active = app.get_subcommands().front();
        auto given = [&](const char* name) { return active->count(name) > 0; };
        if (given("--manifest")) cfg.manifest_path = manifest;
        if (given("--severity-policy"))
            cfg.ladder.severity_policy = calign::severity_policy_from_string(severity);
        if (given("--inclusion"))
            cfg.ladder.inclusion = calign::inclusion_policy_from_string(inclusion);
        if (given("--verdict-source"))
            cfg.ladder.predicted_verdict_source =
                calign::verdict_source_from_string(verdict_source);
        if (given("--k")) {
            cfg.ladder.k_values.clear();
            std::string tok;
            for (char c : k_csv + ",") {
                if (c == ',') {
                    if (!tok.empty()) cfg.ladder.k_values.push_back(std::stoi(tok));
                    tok.clear();
                } else {
                    tok += c;
                }
            }
        }
        if (given("--seed")) cfg.seed = seed;
        if (given("--resamples")) cfg.resamples = resamples;
        if (given("--format")) cfg.format = format;
        if (given("--out")) cfg.out_dir = out_dir;
        if (given("--force")) cfg.force = force;
        validate_k_values(cfg.ladder.k_values);

        if (active == fixtures)
            return calign::cmd_fixtures(cfg, calign::fixture_profile_from_string(profile), size,
                                        std::cout);

        if (cfg.manifest_path.empty()) {
            std::cerr << "a manifest is required (--manifest or config file)\n";
            return 2;
        }
        if (active == lint) return calign::cmd_lint(cfg, std::cout);
        if (active == apply) {
            if (active->count("--overrides")) cfg.overrides_dir = overrides_dir;
            if (cfg.overrides_dir.empty()) {
                std::cerr << "apply-overrides requires --overrides <dir>\n";
                return 2;
            }
            return calign::cmd_apply_overrides(cfg, std::cout);
        }
        if (active == metrics) return calign::cmd_metrics(cfg, std::cout);
        if (active == sensitivity) return calign::cmd_sensitivity(cfg, std::cout);
        if (active == stats) return calign::cmd_stats(cfg, std::cout);
        if (active == worksheets) return calign::cmd_worksheets(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
