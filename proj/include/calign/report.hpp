#pragma once
// System report assembly and rendering: aligned plain-text tables in the
// established column orders, long-format CSV, and JSON records. Undefined
// cells render as an em dash, never as zero.

#include <map>
#include <string>
#include <vector>

#include "calign/manifest.hpp"
#include "calign/metrics.hpp"
#include "calign/stats.hpp"

namespace calign {

struct SystemReport {
    std::string system_id;
    std::string model_id;
    std::vector<RunMetrics> runs;  // one entry per run, in manifest order
};

struct EngineConfig {
    LadderConfig ladder;
    long resamples = 10000;
    std::uint64_t seed = 0;
    std::string format = "text";  // text | csv | records
    std::string manifest_path;
    std::string overrides_dir;
    std::string out_dir;
    bool force = false;
};

// Gate verdicts are taken from the corpus' gate files when present.
SystemReport aggregate_system(const CorpusManifest& manifest, const Corpus& corpus,
                              const std::map<RunKey, GateClassifiedReview>& gates,
                              const SystemEntry& system, const LadderConfig& cfg);

// Header block echoing the effective configuration; prepended to every report.
std::string render_config_header(const EngineConfig& cfg);

// Core metric table: recall (rej), decisive recall (rej), FDR (acc),
// resolved-escalation (acc), decisive precision (rej), phantom decisive
// (rej); cross-run mean +/- std.
std::string render_core_table(const std::vector<SystemReport>& reports);

// Verdict-stratified accuracy table.
std::string render_accuracy_table(const std::vector<SystemReport>& reports);

// Recall by AC treatment with the attention gap column.
std::string render_attention_table(const std::vector<SystemReport>& reports);

// FDR@K (accepted) and decisive recall@K (rejected) sweeps.
std::string render_topk_table(const std::vector<SystemReport>& reports,
                              const std::vector<int>& k_values);

// Long-format CSV: system,run,paper,metric,value (value empty when undefined).
std::string render_csv(const std::vector<SystemReport>& reports);

// Canonical JSON record serialization of the full report set.
std::string serialize_reports(const std::vector<SystemReport>& reports, const EngineConfig& cfg);

// Policy sensitivity: recall under every (severity policy x inclusion
// policy) pair, plus severity match/under/over rates per severity policy.
struct SensitivityReport {
    // recall_grid[severity][inclusion], policies in declaration order
    std::optional<double> recall_grid[3][3];
    struct SeverityRates {
        std::optional<double> match, under, over;
        long edges = 0;  // edges with a defined severity gap
    };
    SeverityRates severity_rates[3];  // per severity policy
};

SensitivityReport compute_sensitivity(const std::vector<GraphCase>& cases);
std::string render_sensitivity(const SensitivityReport& s);

// Stats report rows: metric, system, ICC, kappa (binary verdict rows only),
// per-run bootstrap CIs, seed, resamples, excluded-paper counts.
struct StatsRow {
    std::string metric;
    std::string system_id;
    std::optional<double> icc;
    std::optional<double> kappa;
    long icc_dropped_papers = 0;
    std::vector<ConfidenceInterval> run_cis;  // one per run
    std::vector<long> run_ci_excluded;        // papers without a defined value
};

std::vector<StatsRow> compute_stats(const std::vector<SystemReport>& reports,
                                    const EngineConfig& cfg);
std::string render_stats(const std::vector<StatsRow>& rows, const EngineConfig& cfg);

std::string format_cell(const MetricCell& c);
std::string format_value(const std::optional<double>& v);

}  // namespace calign
