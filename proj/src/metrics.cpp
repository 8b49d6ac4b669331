#include "calign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace calign {

namespace {

bool counted(const MatchEdge& e, InclusionPolicy inc) {
    switch (inc) {
        case InclusionPolicy::strict_only: return e.match_type == MatchType::exact;
        case InclusionPolicy::strict_partial: return e.is_strict();
        case InclusionPolicy::loose: return true;
    }
    return false;
}

bool fatal_or_major(Severity s) { return s == Severity::fatal || s == Severity::major; }

std::optional<double> ratio(long num, long den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> mean_defined(const std::vector<std::optional<double>>& xs) {
    double sum = 0.0;
    long n = 0;
    for (const auto& x : xs)
        if (x) {
            sum += *x;
            ++n;
        }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

}  // namespace

std::optional<Verdict> predicted_verdict(const GraphCase& c, VerdictSource source) {
    switch (source) {
        case VerdictSource::native:
            return c.native_verdict;
        case VerdictSource::gate:
            return c.gate ? to_binary(*c.gate) : std::nullopt;
        case VerdictSource::gate_default_reject:
            return c.gate ? to_binary(default_reject_fold(*c.gate)) : std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> binary_accuracy(const std::vector<std::pair<Verdict, Verdict>>& pairs) {
    if (pairs.empty()) return std::nullopt;
    long correct = 0;
    for (const auto& [predicted, official] : pairs)
        if (predicted == official) ++correct;
    return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

std::optional<double> concern_recall(const MatchGraph& g, const LadderConfig& cfg) {
    long matched = 0;
    for (const auto& c : g.official)
        if (has_counted_edge_official(g, c.id, cfg.inclusion)) ++matched;
    return ratio(matched, static_cast<long>(g.official.size()));
}

std::optional<double> phantom_rate(const MatchGraph& g, const LadderConfig& cfg) {
    long phantoms = 0;
    for (const auto& c : g.agentic)
        if (!has_counted_edge_agentic(g, c.id, cfg.inclusion)) ++phantoms;
    return ratio(phantoms, static_cast<long>(g.agentic.size()));
}

std::optional<double> harmful_phantom_rate(const MatchGraph& g, const PaperRecord& paper,
                                           const LadderConfig& cfg) {
    if (paper.official_verdict != Verdict::accept)
        throw DomainError(g.paper_id + ": harmful phantom rate is defined on accepted papers");
    long harmful = 0;
    for (const auto& c : g.agentic)
        if (fatal_or_major(c.severity) && !has_counted_edge_agentic(g, c.id, cfg.inclusion))
            ++harmful;
    return ratio(harmful, static_cast<long>(g.agentic.size()));
}

namespace {

// A decisive flag is excused when its concern has a counted exact/partial
// edge to a resolved official concern whose fix never reached the reviewed
// PDF. A related-only link never excuses.
bool is_excused(const MatchGraph& g, const AgenticConcern& a, const LadderConfig& cfg) {
    for (const auto& e : g.edges) {
        if (e.agentic_id != a.id || !counted(e, cfg.inclusion) || !e.is_strict()) continue;
        const OfficialConcern* o = g.find_official(e.official_id);
        if (o && o->treatment == AcTreatment::resolved &&
            o->addressed_in_pdf == PdfState::not_addressed)
            return true;
    }
    return false;
}

}  // namespace

FdrBreakdown false_decisive_rate(const std::vector<GraphCase>& accepted, const LadderConfig& cfg) {
    FdrBreakdown b;
    for (const auto& c : accepted) {
        if (c.paper->official_verdict != Verdict::accept)
            throw DomainError(c.graph->paper_id +
                              ": false decisive rate pools accepted papers only");
        for (const auto& a : c.graph->agentic) {
            ++b.total_agentic;
            if (!a.decisive) continue;
            ++b.decisive_flags;
            if (is_excused(*c.graph, a, cfg)) {
                ++b.excused;
                b.excused_ids.push_back(c.graph->paper_id + "/" + a.id);
            }
        }
    }
    b.fdr = ratio(b.decisive_flags - b.excused, b.total_agentic);
    return b;
}

std::optional<double> decisive_precision_strict(const std::vector<GraphCase>& rejected,
                                                const LadderConfig& cfg) {
    long flags = 0, matched = 0;
    for (const auto& c : rejected) {
        if (c.paper->official_verdict != Verdict::reject)
            throw DomainError(c.graph->paper_id +
                              ": decisive precision pools rejected papers only");
        for (const auto& a : c.graph->agentic) {
            if (!a.decisive) continue;
            ++flags;
            bool hit = false;
            for (const auto& e : c.graph->edges) {
                if (e.agentic_id != a.id || !counted(e, cfg.inclusion)) continue;
                const OfficialConcern* o = c.graph->find_official(e.official_id);
                if (o && o->treatment == AcTreatment::decisive_blocker) {
                    hit = true;
                    break;
                }
            }
            if (hit) ++matched;
        }
    }
    return ratio(matched, flags);
}

std::optional<double> phantom_decisive_rate(const std::vector<GraphCase>& rejected,
                                            const LadderConfig& cfg) {
    long total = 0, phantom_flags = 0;
    for (const auto& c : rejected) {
        if (c.paper->official_verdict != Verdict::reject)
            throw DomainError(c.graph->paper_id +
                              ": phantom decisive rate pools rejected papers only");
        for (const auto& a : c.graph->agentic) {
            ++total;
            if (a.decisive && !has_counted_edge_agentic(*c.graph, a.id, cfg.inclusion))
                ++phantom_flags;
        }
    }
    return ratio(phantom_flags, total);
}

std::optional<double> resolved_escalation_rate(const std::vector<GraphCase>& cases,
                                               const LadderConfig& cfg) {
    long denom = 0, numer = 0;
    for (const auto& c : cases) {
        for (const auto& e : c.graph->edges) {
            if (!counted(e, cfg.inclusion)) continue;
            const OfficialConcern* o = c.graph->find_official(e.official_id);
            if (!o || o->treatment != AcTreatment::resolved ||
                o->addressed_in_pdf != PdfState::addressed)
                continue;
            const AgenticConcern* a = c.graph->find_agentic(e.agentic_id);
            if (!a) continue;
            ++denom;
            if (fatal_or_major(a->severity)) ++numer;
        }
    }
    return ratio(numer, denom);
}

DecompositionResult decompose_relevant_harmful(const MatchGraph& g, const PaperRecord& paper,
                                               const LadderConfig& cfg) {
    DecompositionResult r;
    const long total = static_cast<long>(g.agentic.size());
    long relevant = 0, harmful = 0;

    if (paper.official_verdict == Verdict::accept) {
        for (const auto& a : g.agentic) {
            bool matched = has_counted_edge_agentic(g, a.id, cfg.inclusion);
            if (!fatal_or_major(a.severity)) {
                // Constructive non-blocking feedback, matched or not.
                ++relevant;
                continue;
            }
            if (!matched) {
                ++harmful;
                ++r.components.harmful_phantom;
                continue;
            }
            // Fatal/major match: harmful only when it re-escalates a concern
            // the AC dismissed or saw fixed in the reviewed PDF.
            bool reescalating = false;
            for (const auto& e : g.edges) {
                if (e.agentic_id != a.id || !counted(e, cfg.inclusion)) continue;
                const OfficialConcern* o = g.find_official(e.official_id);
                if (!o) continue;
                if (o->treatment == AcTreatment::dismissed ||
                    (o->treatment == AcTreatment::resolved &&
                     o->addressed_in_pdf == PdfState::addressed)) {
                    reescalating = true;
                    break;
                }
            }
            if (reescalating) {
                ++harmful;
                ++r.components.reescalation;
            }
        }
    } else {
        for (const auto& a : g.agentic) {
            bool severity_matched = false;
            bool underrates = false;
            for (const auto& e : g.edges) {
                if (e.agentic_id != a.id || !counted(e, cfg.inclusion)) continue;
                const OfficialConcern* o = g.find_official(e.official_id);
                if (!o) continue;
                if (severity_alignment_of(cfg.severity_policy, o->severity, a.severity) ==
                    SeverityAlignment::match)
                    severity_matched = true;
                if (fatal_or_major(o->severity) &&
                    (a.severity == Severity::minor || a.severity == Severity::moderate))
                    underrates = true;
            }
            if (severity_matched) ++relevant;
            if (underrates) {
                ++harmful;
                ++r.components.severity_underrate;
            }
        }
        for (const auto& o : g.official)
            if (o.treatment == AcTreatment::decisive_blocker &&
                !has_counted_edge_official(g, o.id, cfg.inclusion))
                ++r.components.missed_blocker;
    }

    r.relevant_rate = ratio(relevant, total);
    r.harmful_rate = ratio(harmful, total);
    return r;
}

namespace {

std::optional<double> paper_treatment_recall(const MatchGraph& g, AcTreatment t,
                                             const LadderConfig& cfg) {
    long total = 0, matched = 0;
    for (const auto& o : g.official) {
        if (o.treatment != t) continue;
        ++total;
        if (has_counted_edge_official(g, o.id, cfg.inclusion)) ++matched;
    }
    return ratio(matched, total);
}

constexpr AcTreatment kAllTreatments[] = {
    AcTreatment::decisive_blocker,    AcTreatment::unresolved, AcTreatment::resolved,
    AcTreatment::accepted_limitation, AcTreatment::dismissed,  AcTreatment::reframed_feature,
    AcTreatment::not_mentioned,
};

}  // namespace

std::map<AcTreatment, std::optional<double>> recall_by_treatment(
    const std::vector<GraphCase>& cases, const LadderConfig& cfg) {
    std::map<AcTreatment, std::optional<double>> out;
    for (AcTreatment t : kAllTreatments) {
        std::vector<std::optional<double>> per_paper;
        for (const auto& c : cases) per_paper.push_back(paper_treatment_recall(*c.graph, t, cfg));
        out[t] = mean_defined(per_paper);
    }
    return out;
}

std::optional<double> attention_gap(const std::map<AcTreatment, std::optional<double>>& profile) {
    auto dec = profile.find(AcTreatment::decisive_blocker);
    auto res = profile.find(AcTreatment::resolved);
    if (dec == profile.end() || res == profile.end() || !dec->second || !res->second)
        return std::nullopt;
    return (*dec->second - *res->second) * 100.0;
}

MatchGraph top_k_restrict(const MatchGraph& g, int k) {
    if (k <= 0) throw DomainError("top-K restriction requires k >= 1");

    // Severity descending, decisive flags first within a level, then
    // ascending id. unknown ranks below minor.
    std::vector<const AgenticConcern*> order;
    order.reserve(g.agentic.size());
    for (const auto& a : g.agentic) order.push_back(&a);
    auto sev_key = [](Severity s) {
        auto r = severity_rank(s);
        return r ? *r + 1 : 0;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](const AgenticConcern* a, const AgenticConcern* b) {
                         if (sev_key(a->severity) != sev_key(b->severity))
                             return sev_key(a->severity) > sev_key(b->severity);
                         if (a->decisive != b->decisive) return a->decisive;
                         return id_less(a->id, b->id);
                     });

    std::set<std::string> keep;
    for (size_t i = 0; i < order.size() && i < static_cast<size_t>(k); ++i)
        keep.insert(order[i]->id);

    MatchGraph out;
    out.paper_id = g.paper_id;
    out.system_id = g.system_id;
    out.run_id = g.run_id;
    out.official = g.official;
    for (const auto& a : g.agentic)
        if (keep.count(a.id)) out.agentic.push_back(a);
    for (const auto& e : g.edges)
        if (keep.count(e.agentic_id)) out.edges.push_back(e);
    out.unmatched_official = derive_unmatched_official(out);
    out.unmatched_agentic = derive_unmatched_agentic(out);
    return out;
}

PaperMetrics compute_paper_metrics(const GraphCase& c, const LadderConfig& cfg,
                                   const std::string& run_id) {
    const MatchGraph& g = *c.graph;
    const PaperRecord& p = *c.paper;
    PaperMetrics m;
    m.paper_id = p.paper_id;
    m.run_id = run_id;
    m.official_verdict = p.official_verdict;
    m.predicted = predicted_verdict(c, cfg.predicted_verdict_source);
    m.recall = concern_recall(g, cfg);
    m.phantom = phantom_rate(g, cfg);
    m.official_total = static_cast<long>(g.official.size());
    m.agentic_total = static_cast<long>(g.agentic.size());

    for (const auto& a : g.agentic)
        if (a.decisive) ++m.decisive_flags;

    if (p.official_verdict == Verdict::accept) {
        m.harmful_phantom = harmful_phantom_rate(g, p, cfg);
        m.excused = false_decisive_rate({c}, cfg).excused;
    } else {
        for (const auto& a : g.agentic) {
            if (!a.decisive) continue;
            bool hit = false;
            for (const auto& e : g.edges) {
                if (e.agentic_id != a.id || !counted(e, cfg.inclusion)) continue;
                const OfficialConcern* o = g.find_official(e.official_id);
                if (o && o->treatment == AcTreatment::decisive_blocker) {
                    hit = true;
                    break;
                }
            }
            if (hit) ++m.decisive_matched_blocker;
            if (!has_counted_edge_agentic(g, a.id, cfg.inclusion)) ++m.phantom_decisive;
        }
    }

    for (const auto& e : g.edges) {
        if (!counted(e, cfg.inclusion)) continue;
        const OfficialConcern* o = g.find_official(e.official_id);
        const AgenticConcern* a = g.find_agentic(e.agentic_id);
        if (!o || !a || o->treatment != AcTreatment::resolved ||
            o->addressed_in_pdf != PdfState::addressed)
            continue;
        ++m.resesc_denom;
        if (fatal_or_major(a->severity)) ++m.resesc_numer;
    }

    for (AcTreatment t : kAllTreatments)
        m.treatment_recall[t] = paper_treatment_recall(g, t, cfg);
    m.decomposition = decompose_relevant_harmful(g, p, cfg);
    return m;
}

RunMetrics compute_run_metrics(const std::vector<GraphCase>& cases, const LadderConfig& cfg,
                               const std::string& run_id) {
    RunMetrics r;
    r.run_id = run_id;

    std::vector<GraphCase> accepted, rejected;
    for (const auto& c : cases)
        (c.paper->official_verdict == Verdict::accept ? accepted : rejected).push_back(c);

    for (const auto& c : cases) r.papers.push_back(compute_paper_metrics(c, cfg, run_id));

    auto acc_pairs = [&](const std::vector<GraphCase>& subset) {
        std::vector<std::pair<Verdict, Verdict>> pairs;
        for (const auto& c : subset) {
            auto pv = predicted_verdict(c, cfg.predicted_verdict_source);
            if (pv) pairs.push_back({*pv, c.paper->official_verdict});
        }
        return binary_accuracy(pairs);
    };
    r.acc_overall = acc_pairs(cases);
    r.acc_accepted = acc_pairs(accepted);
    r.acc_rejected = acc_pairs(rejected);

    // Per-paper means reuse the already-computed PaperMetrics.
    auto stratum_mean = [&](Verdict v, auto value_of) {
        std::vector<std::optional<double>> xs;
        for (const auto& pm : r.papers)
            if (pm.official_verdict == v) xs.push_back(value_of(pm));
        return mean_defined(xs);
    };
    r.recall_accepted = stratum_mean(Verdict::accept, [](const PaperMetrics& pm) {
        return pm.recall;
    });
    r.recall_rejected = stratum_mean(Verdict::reject, [](const PaperMetrics& pm) {
        return pm.recall;
    });
    r.phantom_accepted = stratum_mean(Verdict::accept, [](const PaperMetrics& pm) {
        return pm.phantom;
    });
    r.phantom_rejected = stratum_mean(Verdict::reject, [](const PaperMetrics& pm) {
        return pm.phantom;
    });
    r.harmful_phantom_accepted = stratum_mean(Verdict::accept, [](const PaperMetrics& pm) {
        return pm.harmful_phantom;
    });

    r.fdr_accepted = false_decisive_rate(accepted, cfg);
    r.decisive_precision_rejected = decisive_precision_strict(rejected, cfg);
    r.phantom_decisive_rejected = phantom_decisive_rate(rejected, cfg);
    r.resolved_escalation_accepted = resolved_escalation_rate(accepted, cfg);

    r.treatment_recall_rejected = recall_by_treatment(rejected, cfg);
    r.attention_gap_rejected = attention_gap(r.treatment_recall_rejected);

    r.relevant_rate_accepted = stratum_mean(Verdict::accept, [](const PaperMetrics& pm) {
        return pm.decomposition.relevant_rate;
    });
    r.harmful_rate_accepted = stratum_mean(Verdict::accept, [](const PaperMetrics& pm) {
        return pm.decomposition.harmful_rate;
    });
    r.relevant_rate_rejected = stratum_mean(Verdict::reject, [](const PaperMetrics& pm) {
        return pm.decomposition.relevant_rate;
    });
    r.harmful_rate_rejected = stratum_mean(Verdict::reject, [](const PaperMetrics& pm) {
        return pm.decomposition.harmful_rate;
    });
    for (const auto& pm : r.papers) {
        r.harmful_components.reescalation += pm.decomposition.components.reescalation;
        r.harmful_components.harmful_phantom += pm.decomposition.components.harmful_phantom;
        r.harmful_components.severity_underrate +=
            pm.decomposition.components.severity_underrate;
        r.harmful_components.missed_blocker += pm.decomposition.components.missed_blocker;
    }

    for (int k : cfg.k_values) {
        r.fdr_at_k[k] = metric_at_k(
            [&](const std::vector<GraphCase>& view) { return false_decisive_rate(view, cfg).fdr; },
            accepted, k);
        r.decisive_recall_at_k[k] = metric_at_k(
            [&](const std::vector<GraphCase>& view) {
                return recall_by_treatment(view, cfg)[AcTreatment::decisive_blocker];
            },
            rejected, k);
    }
    return r;
}

MetricCell mean_std(const std::vector<std::optional<double>>& values) {
    std::vector<double> xs;
    for (const auto& v : values)
        if (v) xs.push_back(*v);
    MetricCell cell;
    if (xs.empty()) return cell;
    double sum = 0.0;
    for (double x : xs) sum += x;
    double mean = sum / static_cast<double>(xs.size());
    cell.mean = mean;
    if (xs.size() == 1) {
        cell.stddev = 0.0;
        return cell;
    }
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    cell.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return cell;
}

}  // namespace calign
