#include "calign/report.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace calign {

using json = nlohmann::json;

namespace {

constexpr const char* kUndefined = "—";  // em dash, never 0

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(3) << v;
    return ss.str();
}

std::vector<GraphCase> collect_cases(const Corpus& corpus,
                                     const std::map<RunKey, GateClassifiedReview>& gates,
                                     const std::string& system_id, const std::string& run_id) {
    std::vector<GraphCase> cases;
    for (const auto& [key, graph] : corpus.graphs) {
        if (key.system_id != system_id || key.run_id != run_id) continue;
        GraphCase c;
        c.graph = &graph;
        c.paper = &corpus.papers.at(key.paper_id);
        auto rit = corpus.reviews.find(key);
        if (rit != corpus.reviews.end()) c.native_verdict = rit->second.native_verdict;
        auto git = gates.find(key);
        if (git != gates.end()) c.gate = gate_verdict(git->second);
        cases.push_back(c);
    }
    return cases;
}

}  // namespace

std::string format_value(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string(kUndefined);
}

std::string format_cell(const MetricCell& c) {
    if (!c.mean) return kUndefined;
    std::string out = fmt(*c.mean);
    if (c.stddev) out += "±" + fmt(*c.stddev);
    return out;
}

SystemReport aggregate_system(const CorpusManifest& manifest, const Corpus& corpus,
                              const std::map<RunKey, GateClassifiedReview>& gates,
                              const SystemEntry& system, const LadderConfig& cfg) {
    SystemReport report;
    report.system_id = system.system_id;
    report.model_id = system.model_id;
    for (const auto& run_id : system.runs) {
        auto cases = collect_cases(corpus, gates, system.system_id, run_id);
        report.runs.push_back(compute_run_metrics(cases, cfg, run_id));
    }
    (void)manifest;
    return report;
}

std::string render_config_header(const EngineConfig& cfg) {
    std::ostringstream ss;
    ss << "# severity_policy=" << to_string(cfg.ladder.severity_policy)
       << " inclusion=" << to_string(cfg.ladder.inclusion) << " k=";
    for (size_t i = 0; i < cfg.ladder.k_values.size(); ++i)
        ss << (i ? "," : "") << cfg.ladder.k_values[i];
    ss << " verdict_source=" << to_string(cfg.ladder.predicted_verdict_source)
       << " resamples=" << cfg.resamples << " seed=" << cfg.seed << "\n";
    return ss.str();
}

namespace {

using CellFn = std::function<std::optional<double>(const RunMetrics&)>;

MetricCell across_runs(const SystemReport& r, const CellFn& fn) {
    std::vector<std::optional<double>> xs;
    for (const auto& run : r.runs) xs.push_back(fn(run));
    return mean_std(xs);
}

std::string table_row(const std::vector<std::string>& cells, const std::vector<int>& widths) {
    std::ostringstream ss;
    for (size_t i = 0; i < cells.size(); ++i)
        ss << std::left << std::setw(widths[i]) << cells[i] << (i + 1 < cells.size() ? " " : "");
    return ss.str() + "\n";
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<int> widths(header.size(), 0);
    auto widen = [&](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i)
            widths[i] = std::max<int>(widths[i], static_cast<int>(cells[i].size()));
    };
    widen(header);
    for (const auto& r : rows) widen(r);
    std::ostringstream ss;
    ss << table_row(header, widths);
    int total = 0;
    for (int w : widths) total += w + 1;
    ss << std::string(static_cast<size_t>(total), '-') << "\n";
    for (const auto& r : rows) ss << table_row(r, widths);
    return ss.str();
}

}  // namespace

std::string render_core_table(const std::vector<SystemReport>& reports) {
    std::vector<std::string> header = {"System",      "Recall(rej)",  "DecRecall(rej)",
                                       "FDR(acc)",    "ResEsc(acc)",  "DecPrec(rej)",
                                       "PhDec(rej)"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        rows.push_back({
            r.system_id + (r.model_id.empty() ? "" : " (" + r.model_id + ")"),
            format_cell(across_runs(r, [](const RunMetrics& m) { return m.recall_rejected; })),
            format_cell(across_runs(r, [](const RunMetrics& m) -> std::optional<double> {
                auto it = m.treatment_recall_rejected.find(AcTreatment::decisive_blocker);
                if (it == m.treatment_recall_rejected.end()) return std::nullopt;
                return it->second;
            })),
            format_cell(across_runs(r, [](const RunMetrics& m) { return m.fdr_accepted.fdr; })),
            format_cell(across_runs(
                r, [](const RunMetrics& m) { return m.resolved_escalation_accepted; })),
            format_cell(across_runs(
                r, [](const RunMetrics& m) { return m.decisive_precision_rejected; })),
            format_cell(
                across_runs(r, [](const RunMetrics& m) { return m.phantom_decisive_rejected; })),
        });
    }
    return "CORE METRICS (cross-run mean±std)\n" + render_table(header, rows);
}

std::string render_accuracy_table(const std::vector<SystemReport>& reports) {
    std::vector<std::string> header = {"System", "Acc(accepted)", "Acc(rejected)", "Acc(overall)"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        rows.push_back({
            r.system_id + (r.model_id.empty() ? "" : " (" + r.model_id + ")"),
            format_cell(across_runs(r, [](const RunMetrics& m) { return m.acc_accepted; })),
            format_cell(across_runs(r, [](const RunMetrics& m) { return m.acc_rejected; })),
            format_cell(across_runs(r, [](const RunMetrics& m) { return m.acc_overall; })),
        });
    }
    return "VERDICT ACCURACY (stratified by official verdict)\n" + render_table(header, rows);
}

std::string render_attention_table(const std::vector<SystemReport>& reports) {
    std::vector<std::string> header = {"System", "Decisive", "Unresolved", "Resolved", "Gap(pp)"};
    std::vector<std::vector<std::string>> rows;
    auto treatment_cell = [](const SystemReport& r, AcTreatment t) {
        return across_runs(r, [t](const RunMetrics& m) -> std::optional<double> {
            auto it = m.treatment_recall_rejected.find(t);
            if (it == m.treatment_recall_rejected.end()) return std::nullopt;
            return it->second;
        });
    };
    for (const auto& r : reports) {
        auto gap = across_runs(r, [](const RunMetrics& m) { return m.attention_gap_rejected; });
        std::string gap_text = kUndefined;
        if (gap.mean) {
            std::ostringstream ss;
            ss << std::showpos << std::fixed << std::setprecision(1) << *gap.mean;
            gap_text = ss.str();
        }
        rows.push_back({
            r.system_id + (r.model_id.empty() ? "" : " (" + r.model_id + ")"),
            format_cell(treatment_cell(r, AcTreatment::decisive_blocker)),
            format_cell(treatment_cell(r, AcTreatment::unresolved)),
            format_cell(treatment_cell(r, AcTreatment::resolved)),
            gap_text,
        });
    }
    return "RECALL BY AC TREATMENT (rejected papers)\n" + render_table(header, rows);
}

std::string render_topk_table(const std::vector<SystemReport>& reports,
                              const std::vector<int>& k_values) {
    std::vector<std::string> header = {"System"};
    for (int k : k_values) header.push_back("@" + std::to_string(k));
    header.push_back("@all");

    auto block = [&](const char* title, const CellFn& full,
                     std::function<std::optional<double>(const RunMetrics&, int)> at_k) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : reports) {
            std::vector<std::string> row = {
                r.system_id + (r.model_id.empty() ? "" : " (" + r.model_id + ")")};
            for (int k : k_values)
                row.push_back(format_cell(
                    across_runs(r, [&](const RunMetrics& m) { return at_k(m, k); })));
            row.push_back(format_cell(across_runs(r, full)));
            rows.push_back(std::move(row));
        }
        return std::string(title) + "\n" + render_table(header, rows);
    };

    std::string out = block(
        "FDR@K (accepted papers)",
        [](const RunMetrics& m) { return m.fdr_accepted.fdr; },
        [](const RunMetrics& m, int k) -> std::optional<double> {
            auto it = m.fdr_at_k.find(k);
            if (it == m.fdr_at_k.end()) return std::nullopt;
            return it->second;
        });
    out += "\n";
    out += block(
        "DECISIVE RECALL@K (rejected papers)",
        [](const RunMetrics& m) -> std::optional<double> {
            auto it = m.treatment_recall_rejected.find(AcTreatment::decisive_blocker);
            if (it == m.treatment_recall_rejected.end()) return std::nullopt;
            return it->second;
        },
        [](const RunMetrics& m, int k) -> std::optional<double> {
            auto it = m.decisive_recall_at_k.find(k);
            if (it == m.decisive_recall_at_k.end()) return std::nullopt;
            return it->second;
        });
    return out;
}

namespace {

void csv_row(std::ostringstream& ss, const std::string& system, const std::string& run,
             const std::string& paper, const std::string& metric,
             const std::optional<double>& value) {
    ss << system << "," << run << "," << paper << "," << metric << ",";
    if (value) ss << std::setprecision(17) << *value;
    ss << "\n";
}

}  // namespace

std::string render_csv(const std::vector<SystemReport>& reports) {
    std::ostringstream ss;
    ss << "system,run,paper,metric,value\n";
    for (const auto& r : reports) {
        for (const auto& run : r.runs) {
            for (const auto& pm : run.papers) {
                csv_row(ss, r.system_id, run.run_id, pm.paper_id, "recall", pm.recall);
                csv_row(ss, r.system_id, run.run_id, pm.paper_id, "phantom", pm.phantom);
                if (pm.official_verdict == Verdict::accept)
                    csv_row(ss, r.system_id, run.run_id, pm.paper_id, "harmful_phantom",
                            pm.harmful_phantom);
                auto dit = pm.treatment_recall.find(AcTreatment::decisive_blocker);
                if (dit != pm.treatment_recall.end())
                    csv_row(ss, r.system_id, run.run_id, pm.paper_id, "decisive_recall",
                            dit->second);
                csv_row(ss, r.system_id, run.run_id, pm.paper_id, "relevant_rate",
                        pm.decomposition.relevant_rate);
                csv_row(ss, r.system_id, run.run_id, pm.paper_id, "harmful_rate",
                        pm.decomposition.harmful_rate);
            }
            csv_row(ss, r.system_id, run.run_id, "", "acc_overall", run.acc_overall);
            csv_row(ss, r.system_id, run.run_id, "", "acc_accepted", run.acc_accepted);
            csv_row(ss, r.system_id, run.run_id, "", "acc_rejected", run.acc_rejected);
            csv_row(ss, r.system_id, run.run_id, "", "recall_rejected", run.recall_rejected);
            csv_row(ss, r.system_id, run.run_id, "", "recall_accepted", run.recall_accepted);
            csv_row(ss, r.system_id, run.run_id, "", "phantom_rejected", run.phantom_rejected);
            csv_row(ss, r.system_id, run.run_id, "", "phantom_accepted", run.phantom_accepted);
            csv_row(ss, r.system_id, run.run_id, "", "fdr_accepted", run.fdr_accepted.fdr);
            csv_row(ss, r.system_id, run.run_id, "", "decisive_precision_rejected",
                    run.decisive_precision_rejected);
            csv_row(ss, r.system_id, run.run_id, "", "phantom_decisive_rejected",
                    run.phantom_decisive_rejected);
            csv_row(ss, r.system_id, run.run_id, "", "resolved_escalation_accepted",
                    run.resolved_escalation_accepted);
            csv_row(ss, r.system_id, run.run_id, "", "attention_gap_rejected",
                    run.attention_gap_rejected);
            for (const auto& [k, v] : run.fdr_at_k)
                csv_row(ss, r.system_id, run.run_id, "", "fdr_at_" + std::to_string(k), v);
            for (const auto& [k, v] : run.decisive_recall_at_k)
                csv_row(ss, r.system_id, run.run_id, "",
                        "decisive_recall_at_" + std::to_string(k), v);
        }
    }
    return ss.str();
}

namespace {

json value_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json run_json(const RunMetrics& m) {
    json j;
    j["run_id"] = m.run_id;
    j["acc_overall"] = value_json(m.acc_overall);
    j["acc_accepted"] = value_json(m.acc_accepted);
    j["acc_rejected"] = value_json(m.acc_rejected);
    j["recall_accepted"] = value_json(m.recall_accepted);
    j["recall_rejected"] = value_json(m.recall_rejected);
    j["phantom_accepted"] = value_json(m.phantom_accepted);
    j["phantom_rejected"] = value_json(m.phantom_rejected);
    j["harmful_phantom_accepted"] = value_json(m.harmful_phantom_accepted);
    j["fdr_accepted"] = {{"total_agentic", m.fdr_accepted.total_agentic},
                         {"decisive_flags", m.fdr_accepted.decisive_flags},
                         {"excused", m.fdr_accepted.excused},
                         {"fdr", value_json(m.fdr_accepted.fdr)}};
    j["decisive_precision_rejected"] = value_json(m.decisive_precision_rejected);
    j["phantom_decisive_rejected"] = value_json(m.phantom_decisive_rejected);
    j["resolved_escalation_accepted"] = value_json(m.resolved_escalation_accepted);
    json treatments;
    for (const auto& [t, v] : m.treatment_recall_rejected)
        treatments[std::string(to_string(t))] = value_json(v);
    j["treatment_recall_rejected"] = std::move(treatments);
    j["attention_gap_rejected"] = value_json(m.attention_gap_rejected);
    j["relevant_rate_accepted"] = value_json(m.relevant_rate_accepted);
    j["harmful_rate_accepted"] = value_json(m.harmful_rate_accepted);
    j["relevant_rate_rejected"] = value_json(m.relevant_rate_rejected);
    j["harmful_rate_rejected"] = value_json(m.harmful_rate_rejected);
    j["harmful_components"] = {{"reescalation", m.harmful_components.reescalation},
                               {"harmful_phantom", m.harmful_components.harmful_phantom},
                               {"severity_underrate", m.harmful_components.severity_underrate},
                               {"missed_blocker", m.harmful_components.missed_blocker}};
    json fdr_k, rec_k;
    for (const auto& [k, v] : m.fdr_at_k) fdr_k[std::to_string(k)] = value_json(v);
    for (const auto& [k, v] : m.decisive_recall_at_k) rec_k[std::to_string(k)] = value_json(v);
    j["fdr_at_k"] = std::move(fdr_k);
    j["decisive_recall_at_k"] = std::move(rec_k);
    json papers = json::array();
    for (const auto& pm : m.papers) {
        json pj;
        pj["paper_id"] = pm.paper_id;
        pj["official_verdict"] = std::string(to_string(pm.official_verdict));
        pj["predicted_verdict"] =
            pm.predicted ? json(std::string(to_string(*pm.predicted))) : json(nullptr);
        pj["recall"] = value_json(pm.recall);
        pj["phantom"] = value_json(pm.phantom);
        pj["agentic_total"] = pm.agentic_total;
        pj["official_total"] = pm.official_total;
        pj["decisive_flags"] = pm.decisive_flags;
        pj["excused"] = pm.excused;
        papers.push_back(std::move(pj));
    }
    j["papers"] = std::move(papers);
    return j;
}

}  // namespace

std::string serialize_reports(const std::vector<SystemReport>& reports, const EngineConfig& cfg) {
    json j;
    j["config"] = {{"severity_policy", std::string(to_string(cfg.ladder.severity_policy))},
                   {"inclusion", std::string(to_string(cfg.ladder.inclusion))},
                   {"k_values", cfg.ladder.k_values},
                   {"verdict_source", std::string(to_string(cfg.ladder.predicted_verdict_source))},
                   {"resamples", cfg.resamples},
                   {"seed", cfg.seed}};
    json systems = json::array();
    for (const auto& r : reports) {
        json sj;
        sj["system_id"] = r.system_id;
        sj["model_id"] = r.model_id;
        json runs = json::array();
        for (const auto& run : r.runs) runs.push_back(run_json(run));
        sj["runs"] = std::move(runs);
        systems.push_back(std::move(sj));
    }
    j["systems"] = std::move(systems);
    return j.dump(2) + "\n";
}

SensitivityReport compute_sensitivity(const std::vector<GraphCase>& cases) {
    SensitivityReport s;
    const SeverityPolicy sev_policies[] = {SeverityPolicy::strict, SeverityPolicy::hybrid,
                                           SeverityPolicy::tolerant};
    const InclusionPolicy inc_policies[] = {InclusionPolicy::strict_only,
                                            InclusionPolicy::strict_partial,
                                            InclusionPolicy::loose};
    for (int si = 0; si < 3; ++si) {
        for (int ii = 0; ii < 3; ++ii) {
            LadderConfig cfg;
            cfg.severity_policy = sev_policies[si];
            cfg.inclusion = inc_policies[ii];
            std::vector<std::optional<double>> per_paper;
            for (const auto& c : cases) per_paper.push_back(concern_recall(*c.graph, cfg));
            double sum = 0.0;
            long n = 0;
            for (const auto& v : per_paper)
                if (v) {
                    sum += *v;
                    ++n;
                }
            s.recall_grid[si][ii] =
                n > 0 ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt;
        }
        // Severity calibration over exact/partial edges with a defined gap.
        long match = 0, under = 0, over = 0;
        for (const auto& c : cases) {
            for (const auto& e : c.graph->edges) {
                if (!e.is_strict()) continue;
                const OfficialConcern* o = c.graph->find_official(e.official_id);
                const AgenticConcern* a = c.graph->find_agentic(e.agentic_id);
                if (!o || !a) continue;
                switch (severity_alignment_of(sev_policies[si], o->severity, a->severity)) {
                    case SeverityAlignment::match: ++match; break;
                    case SeverityAlignment::under: ++under; break;
                    case SeverityAlignment::over: ++over; break;
                    case SeverityAlignment::not_applicable: break;
                }
            }
        }
        long total = match + under + over;
        s.severity_rates[si].edges = total;
        if (total > 0) {
            s.severity_rates[si].match = static_cast<double>(match) / total;
            s.severity_rates[si].under = static_cast<double>(under) / total;
            s.severity_rates[si].over = static_cast<double>(over) / total;
        }
    }
    return s;
}

std::string render_sensitivity(const SensitivityReport& s) {
    std::vector<std::string> header = {"Severity\\Inclusion", "strict_only", "strict_partial",
                                       "loose"};
    const char* sev_names[] = {"strict", "hybrid", "tolerant"};
    std::vector<std::vector<std::string>> rows;
    for (int si = 0; si < 3; ++si)
        rows.push_back({sev_names[si], format_value(s.recall_grid[si][0]),
                        format_value(s.recall_grid[si][1]), format_value(s.recall_grid[si][2])});
    std::string out = "RECALL UNDER POLICY GRID\n" + render_table(header, rows);

    std::vector<std::string> header2 = {"Policy", "Match", "Under", "Over", "Edges"};
    std::vector<std::vector<std::string>> rows2;
    for (int si = 0; si < 3; ++si)
        rows2.push_back({sev_names[si], format_value(s.severity_rates[si].match),
                         format_value(s.severity_rates[si].under),
                         format_value(s.severity_rates[si].over),
                         std::to_string(s.severity_rates[si].edges)});
    out += "\nSEVERITY ALIGNMENT RATES (exact/partial edges)\n" + render_table(header2, rows2);
    return out;
}

std::vector<StatsRow> compute_stats(const std::vector<SystemReport>& reports,
                                    const EngineConfig& cfg) {
    std::vector<StatsRow> rows;
    for (const auto& r : reports) {
        // Shared paper universe, in stable order.
        std::vector<std::string> paper_ids;
        if (!r.runs.empty())
            for (const auto& pm : r.runs.front().papers) paper_ids.push_back(pm.paper_id);

        auto matrix_for = [&](auto cell_of) {
            std::vector<std::vector<std::optional<double>>> cells;
            for (const auto& pid : paper_ids) {
                std::vector<std::optional<double>> row;
                for (const auto& run : r.runs) {
                    std::optional<double> v;
                    for (const auto& pm : run.papers)
                        if (pm.paper_id == pid) {
                            v = cell_of(pm);
                            break;
                        }
                    row.push_back(v);
                }
                cells.push_back(std::move(row));
            }
            std::vector<std::string> run_ids;
            for (const auto& run : r.runs) run_ids.push_back(run.run_id);
            return make_run_matrix(paper_ids, run_ids, cells);
        };

        // Verdict row: predicted verdict encoded accept=1/reject=0, plus the
        // mean pairwise Cohen's kappa across runs.
        StatsRow verdict_row;
        verdict_row.metric = "verdict";
        verdict_row.system_id = r.system_id;
        {
            auto m = matrix_for([](const PaperMetrics& pm) -> std::optional<double> {
                if (!pm.predicted) return std::nullopt;
                return *pm.predicted == Verdict::accept ? 1.0 : 0.0;
            });
            verdict_row.icc = icc_2_1(m);
            verdict_row.icc_dropped_papers = m.dropped_papers;

            std::vector<double> kappas;
            for (size_t a = 0; a + 1 < m.cols(); ++a)
                for (size_t b = a + 1; b < m.cols(); ++b) {
                    std::vector<std::vector<long>> table(2, std::vector<long>(2, 0));
                    for (size_t i = 0; i < m.rows(); ++i) {
                        int ca = m.values[i][a] > 0.5 ? 0 : 1;
                        int cb = m.values[i][b] > 0.5 ? 0 : 1;
                        ++table[ca][cb];
                    }
                    long total = 0;
                    for (const auto& row : table)
                        for (long v : row) total += v;
                    if (total == 0) continue;
                    auto kp = cohen_kappa(table);
                    if (kp) kappas.push_back(*kp);
                }
            if (!kappas.empty()) {
                double sum = 0.0;
                for (double k : kappas) sum += k;
                verdict_row.kappa = sum / static_cast<double>(kappas.size());
            }
        }
        rows.push_back(std::move(verdict_row));

        StatsRow recall_row;
        recall_row.metric = "recall";
        recall_row.system_id = r.system_id;
        {
            auto m = matrix_for([](const PaperMetrics& pm) { return pm.recall; });
            recall_row.icc = icc_2_1(m);
            recall_row.icc_dropped_papers = m.dropped_papers;
        }

        // Per-run bootstrap CIs, seeded per (metric, system, run).
        auto cell_seed = [&](const std::string& metric, const std::string& run_id) {
            return cfg.seed ^ fnv1a64(metric + "/" + r.system_id + "/" + run_id);
        };
        auto mean_ci_for = [&](StatsRow& row, const char* metric, auto value_of,
                               Verdict stratum) {
            for (const auto& run : r.runs) {
                std::vector<double> values;
                long excluded = 0;
                for (const auto& pm : run.papers) {
                    if (pm.official_verdict != stratum) continue;
                    auto v = value_of(pm);
                    if (v)
                        values.push_back(*v);
                    else
                        ++excluded;
                }
                if (values.size() >= 2) {
                    row.run_cis.push_back(bootstrap_ci_mean(values, cfg.resamples,
                                                            cell_seed(metric, run.run_id)));
                    row.run_ci_excluded.push_back(excluded);
                }
            }
        };
        auto ratio_ci_for = [&](StatsRow& row, const char* metric, auto pair_of,
                                Verdict stratum) {
            for (const auto& run : r.runs) {
                std::vector<std::pair<double, double>> pairs;
                for (const auto& pm : run.papers) {
                    if (pm.official_verdict != stratum) continue;
                    pairs.push_back(pair_of(pm));
                }
                if (pairs.size() >= 2) {
                    row.run_cis.push_back(bootstrap_ci_pooled_ratio(
                        pairs, cfg.resamples, cell_seed(metric, run.run_id)));
                    row.run_ci_excluded.push_back(0);
                }
            }
        };

        mean_ci_for(recall_row, "recall_rejected",
                    [](const PaperMetrics& pm) { return pm.recall; }, Verdict::reject);
        rows.push_back(std::move(recall_row));

        StatsRow dec_recall_row;
        dec_recall_row.metric = "decisive_recall_rejected";
        dec_recall_row.system_id = r.system_id;
        mean_ci_for(
            dec_recall_row, "decisive_recall_rejected",
            [](const PaperMetrics& pm) -> std::optional<double> {
                auto it = pm.treatment_recall.find(AcTreatment::decisive_blocker);
                return it != pm.treatment_recall.end() ? it->second : std::nullopt;
            },
            Verdict::reject);
        rows.push_back(std::move(dec_recall_row));

        StatsRow fdr_row;
        fdr_row.metric = "fdr_accepted";
        fdr_row.system_id = r.system_id;
        ratio_ci_for(
            fdr_row, "fdr_accepted",
            [](const PaperMetrics& pm) {
                return std::pair<double, double>(
                    static_cast<double>(pm.decisive_flags - pm.excused),
                    static_cast<double>(pm.agentic_total));
            },
            Verdict::accept);
        rows.push_back(std::move(fdr_row));

        StatsRow resesc_row;
        resesc_row.metric = "resolved_escalation_accepted";
        resesc_row.system_id = r.system_id;
        ratio_ci_for(
            resesc_row, "resolved_escalation_accepted",
            [](const PaperMetrics& pm) {
                return std::pair<double, double>(static_cast<double>(pm.resesc_numer),
                                                 static_cast<double>(pm.resesc_denom));
            },
            Verdict::accept);
        rows.push_back(std::move(resesc_row));
    }
    return rows;
}

std::string render_stats(const std::vector<StatsRow>& rows, const EngineConfig& cfg) {
    std::vector<std::string> header = {"Metric", "System",   "ICC",     "Kappa",
                                       "Dropped", "RunCIs",  "Seed",    "Resamples"};
    std::vector<std::vector<std::string>> body;
    for (const auto& row : rows) {
        std::ostringstream cis;
        for (size_t i = 0; i < row.run_cis.size(); ++i) {
            const auto& ci = row.run_cis[i];
            cis << (i ? " " : "") << "[" << fmt(ci.lower) << "," << fmt(ci.upper) << "]";
            if (row.run_ci_excluded[i] > 0) cis << "(excl " << row.run_ci_excluded[i] << ")";
        }
        body.push_back({row.metric, row.system_id, format_value(row.icc),
                        format_value(row.kappa), std::to_string(row.icc_dropped_papers),
                        cis.str().empty() ? std::string(kUndefined) : cis.str(),
                        std::to_string(cfg.seed), std::to_string(cfg.resamples)});
    }
    return "RELIABILITY AND UNCERTAINTY\n" + render_table(header, body);
}

}  // namespace calign
