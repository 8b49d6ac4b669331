#pragma once
// The five-level metric ladder over match graphs.
//
// Level 0  binary verdict accuracy
// Level 1  concern recall, phantom rate (verdict-blind)
// Level 2  the same metrics stratified by official verdict
// Level 3  false decisive rate with the excused set, decisive precision,
//          phantom decisive rate, resolved-escalation, harmful phantoms,
//          relevant/harmful decomposition
// Level 4  recall by AC treatment, attention gap
//
// Aggregation conventions follow the formulas exactly: recall and phantom
// rates are per-paper means; FDR, decisive precision, phantom decisive rate
// and resolved-escalation pool concern/edge multisets across papers.
// Undefined values propagate as nullopt and excluded denominators, never
// as zero.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "calign/match_graph.hpp"
#include "calign/verdict_gate.hpp"

namespace calign {

struct LadderConfig {
    SeverityPolicy severity_policy = SeverityPolicy::hybrid;
    InclusionPolicy inclusion = InclusionPolicy::strict_partial;
    std::vector<int> k_values = {3, 5, 7, 10, 15};  // sorted ascending, distinct
    VerdictSource predicted_verdict_source = VerdictSource::gate_default_reject;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One graph joined with its paper and the verdict inputs for L0.
struct GraphCase {
    const MatchGraph* graph = nullptr;
    const PaperRecord* paper = nullptr;
    std::optional<Verdict> native_verdict;
    std::optional<InferredVerdict> gate;  // precomputed from the gate file, when present
};

std::optional<Verdict> predicted_verdict(const GraphCase& c, VerdictSource source);

// ---- Level 0 ----

// Fraction of equal pairs; nullopt on empty input.
std::optional<double> binary_accuracy(const std::vector<std::pair<Verdict, Verdict>>& pairs);

// ---- Level 1 ----

// |official concerns with a counted edge| / |official|; nullopt when the
// paper has no official concerns.
std::optional<double> concern_recall(const MatchGraph& g, const LadderConfig& cfg);

// |agentic concerns with no counted edge| / |agentic|; nullopt when empty.
std::optional<double> phantom_rate(const MatchGraph& g, const LadderConfig& cfg);

// Fatal/major phantoms on an accepted paper, over all agentic concerns.
// Throws DomainError on a rejected paper.
std::optional<double> harmful_phantom_rate(const MatchGraph& g, const PaperRecord& paper,
                                           const LadderConfig& cfg);

// ---- Level 3 ----

struct FdrBreakdown {
    long total_agentic = 0;
    long decisive_flags = 0;
    long excused = 0;  // decisive flags matching resolved-but-unfixed concerns
    std::optional<double> fdr;  // (decisive_flags - excused) / total_agentic
    std::vector<std::string> excused_ids;  // paper_id/agentic_id, for audit
};

// Pooled over the agentic concern multiset of accepted papers. A flag is
// excused when its concern has an exact/partial counted edge to an official
// concern with treatment=resolved and addressed_in_pdf=false; a related-only
// link never excuses. Throws DomainError if a rejected paper is present.
FdrBreakdown false_decisive_rate(const std::vector<GraphCase>& accepted, const LadderConfig& cfg);

// Among pooled decisive flags on rejected papers, the fraction with a counted
// edge to an official decisive blocker. nullopt when no flags exist.
std::optional<double> decisive_precision_strict(const std::vector<GraphCase>& rejected,
                                                const LadderConfig& cfg);

// Unmatched decisive flags over all agentic concerns on rejected papers.
std::optional<double> phantom_decisive_rate(const std::vector<GraphCase>& rejected,
                                            const LadderConfig& cfg);

// Over pooled counted edges to resolved officials whose fix is visible in the
// reviewed PDF: the fraction rated fatal/major by the AI side. Edges to
// resolved-but-unfixed concerns are excluded entirely.
std::optional<double> resolved_escalation_rate(const std::vector<GraphCase>& cases,
                                               const LadderConfig& cfg);

struct HarmfulComponents {
    long reescalation = 0;        // fatal/major match to dismissed or pdf-fixed resolved
    long harmful_phantom = 0;     // fatal/major phantom on an accepted paper
    long severity_underrate = 0;  // fatal/major official rated minor/moderate (rejected)
    long missed_blocker = 0;      // official decisive blockers with no counted edge;
                                  // official-side, reported next to the rate, not inside it
};

struct DecompositionResult {
    std::optional<double> relevant_rate;  // |R_p| / |A_p|
    std::optional<double> harmful_rate;   // |H_p| / |A_p|
    HarmfulComponents components;
};

DecompositionResult decompose_relevant_harmful(const MatchGraph& g, const PaperRecord& paper,
                                               const LadderConfig& cfg);

// ---- Level 4 ----

// Mean per-paper Recall_t over papers holding at least one concern with
// treatment t; categories absent corpus-wide map to nullopt.
std::map<AcTreatment, std::optional<double>> recall_by_treatment(
    const std::vector<GraphCase>& cases, const LadderConfig& cfg);

// Decisive-blocker recall minus resolved recall, in percentage points.
std::optional<double> attention_gap(const std::map<AcTreatment, std::optional<double>>& profile);

// ---- Top-K ----

// Keep the k most severe agentic concerns (fatal > major > moderate > minor >
// unknown; ties broken by decisive flag, then ascending id), drop edges
// touching removed concerns, re-derive unmatched lists. k <= 0 throws.
MatchGraph top_k_restrict(const MatchGraph& g, int k);

// Recompute a metric over top-K-restricted copies of the given graphs.
template <typename Fn>
auto metric_at_k(Fn&& metric, const std::vector<GraphCase>& cases, int k) {
    std::vector<MatchGraph> restricted;
    restricted.reserve(cases.size());
    std::vector<GraphCase> view;
    view.reserve(cases.size());
    for (const auto& c : cases) restricted.push_back(top_k_restrict(*c.graph, k));
    for (size_t i = 0; i < cases.size(); ++i)
        view.push_back({&restricted[i], cases[i].paper, cases[i].native_verdict, cases[i].gate});
    return metric(view);
}

// ---- Per-paper and per-run rollups ----

struct PaperMetrics {
    std::string paper_id;
    std::string run_id;
    Verdict official_verdict = Verdict::reject;
    std::optional<Verdict> predicted;
    std::optional<double> recall;
    std::optional<double> phantom;
    std::optional<double> harmful_phantom;  // accepted papers only
    long official_total = 0;
    long agentic_total = 0;
    long decisive_flags = 0;
    long excused = 0;            // accepted papers only
    long decisive_matched_blocker = 0;  // rejected papers only
    long phantom_decisive = 0;          // rejected papers only
    long resesc_numer = 0;
    long resesc_denom = 0;
    std::map<AcTreatment, std::optional<double>> treatment_recall;
    DecompositionResult decomposition;
};

PaperMetrics compute_paper_metrics(const GraphCase& c, const LadderConfig& cfg,
                                   const std::string& run_id);

struct RunMetrics {
    std::string run_id;
    std::vector<PaperMetrics> papers;

    std::optional<double> acc_overall, acc_accepted, acc_rejected;
    std::optional<double> recall_accepted, recall_rejected;
    std::optional<double> phantom_accepted, phantom_rejected;
    std::optional<double> harmful_phantom_accepted;
    FdrBreakdown fdr_accepted;
    std::optional<double> decisive_precision_rejected;
    std::optional<double> phantom_decisive_rejected;
    std::optional<double> resolved_escalation_accepted;
    std::map<AcTreatment, std::optional<double>> treatment_recall_rejected;
    std::optional<double> attention_gap_rejected;
    std::optional<double> relevant_rate_accepted, harmful_rate_accepted;
    std::optional<double> relevant_rate_rejected, harmful_rate_rejected;
    HarmfulComponents harmful_components;  // pooled counts over all papers
    std::map<int, std::optional<double>> fdr_at_k;                // accepted papers
    std::map<int, std::optional<double>> decisive_recall_at_k;    // rejected papers
};

RunMetrics compute_run_metrics(const std::vector<GraphCase>& cases, const LadderConfig& cfg,
                               const std::string& run_id);

// Mean and cross-run sample standard deviation over the defined entries.
// A single defined entry yields stddev 0; no defined entries yield nullopt.
struct MetricCell {
    std::optional<double> mean;
    std::optional<double> stddev;
};

MetricCell mean_std(const std::vector<std::optional<double>>& values);

}  // namespace calign
