#include "calign/fixtures.hpp"

#include <filesystem>
#include <string>
#include <vector>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "calign/json_io.hpp"
#include "calign/match_graph.hpp"
#include "calign/stats.hpp"
#include "calign/verdict_gate.hpp"

namespace calign {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(FixtureProfile p) {
    switch (p) {
        case FixtureProfile::reject_heavy: return "reject_heavy";
        case FixtureProfile::dilution: return "dilution";
        case FixtureProfile::inverted_attention: return "inverted_attention";
        case FixtureProfile::calibrated: return "calibrated";
    }
    return "calibrated";
}

FixtureProfile fixture_profile_from_string(std::string_view tok) {
    if (tok == "reject_heavy" || tok == "reject-heavy") return FixtureProfile::reject_heavy;
    if (tok == "dilution") return FixtureProfile::dilution;
    if (tok == "inverted_attention" || tok == "inverted-attention")
        return FixtureProfile::inverted_attention;
    if (tok == "calibrated") return FixtureProfile::calibrated;
    throw ParseError("unknown fixture profile \"" + std::string(tok) + "\"");
}

namespace {

// Position-determined stream; sub-seeds make each paper/run independent of
// how much randomness earlier entities consumed.
struct Stream {
    std::uint64_t seed;
    std::uint64_t pos = 0;
    std::uint64_t next() { return splitmix64_at(seed, pos++); }
    long range(long n) { return n <= 0 ? 0 : static_cast<long>(next() % static_cast<std::uint64_t>(n)); }
    bool chance(long percent) { return range(100) < percent; }
};

// Statement fragments. Deliberately free of verdict tokens so worksheet
// isolation checks can grep emitted files for them.
const char* kSubjects[] = {
    "The evaluation",      "The theoretical analysis", "The dataset pipeline",
    "The central claim",   "The comparison set",       "The training procedure",
    "The measurement protocol", "The stated threat model",
};
const char* kIssues[] = {
    "covers a single domain",
    "omits stronger baselines",
    "relies on an unverified assumption",
    "lacks variance estimates",
    "uses an inconsistent normalization",
    "depends on hand-tuned thresholds",
    "leaves the sensitivity analysis incomplete",
    "conflates two distinct effects",
};
const char* kScopes[] = {
    "across the reported benchmarks",
    "for the central experiments",
    "in the scaled setting",
    "under the stated constraints",
};

std::string make_statement(Stream& s) {
    std::string out = kSubjects[s.range(8)];
    out += " ";
    out += kIssues[s.range(8)];
    out += " ";
    out += kScopes[s.range(4)];
    out += ".";
    return out;
}

std::string pad3(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", n);
    return buf;
}

struct PlannedEdge {
    int official_index;  // 0-based
    int agentic_index;
    MatchType type;
};

struct PlannedReview {
    std::vector<AgenticConcern> concerns;
    std::vector<PlannedEdge> edges;
    std::optional<Verdict> native_verdict;
    bool positive_signal = false;
    std::vector<GateCategory> gate_codes;  // one per concern
};

OfficialConcern make_official(int index, Severity sev, AcTreatment treatment, PdfState pdf,
                              Stream& s) {
    OfficialConcern o;
    o.id = "O" + std::to_string(index + 1);
    o.statement = make_statement(s);
    o.evidence_quotes = {make_statement(s)};
    o.severity = sev;
    o.treatment = treatment;
    o.decisive = treatment == AcTreatment::decisive_blocker;
    o.addressed_in_pdf = pdf;
    o.provenance = {"reviewer-" + std::to_string(1 + s.range(3))};
    o.tags = {"topic-" + std::to_string(1 + s.range(4))};
    return o;
}

AgenticConcern make_agentic(int index, Severity sev, bool decisive, Stream& s) {
    AgenticConcern a;
    a.id = "A" + std::to_string(index + 1);
    a.statement = make_statement(s);
    a.severity = sev;
    a.decisive = decisive;
    a.addressability = decisive ? Addressability::unresolved : Addressability::addressable;
    a.source_detail = std::string("section ") + std::to_string(1 + s.range(5));
    return a;
}

GateCategory cycle_gate(long i) {
    switch (i % 4) {
        case 0: return GateCategory::g1_claim_evidence;
        case 1: return GateCategory::g2_baseline_fairness;
        case 2: return GateCategory::g4_validity;
        default: return GateCategory::g5_novelty;
    }
}

PaperRecord plan_paper(FixtureProfile profile, int index, bool accepted, Stream& s) {
    PaperRecord p;
    p.paper_id = "P" + pad3(index + 1);
    p.official_verdict = accepted ? Verdict::accept : Verdict::reject;
    p.venue = "venue-alpha-2026";
    p.pdf_is_revised = accepted;

    if (accepted) {
        // Two resolved (one fixed in the PDF, one rebuttal-only), plus a mix
        // of non-blocking treatments. No decisive blockers by construction.
        p.concerns.push_back(
            make_official(0, Severity::major, AcTreatment::resolved, PdfState::addressed, s));
        p.concerns.push_back(
            make_official(1, Severity::moderate, AcTreatment::resolved, PdfState::not_addressed, s));
        p.concerns.push_back(make_official(2, Severity::moderate, AcTreatment::accepted_limitation,
                                           PdfState::not_applicable, s));
        p.concerns.push_back(
            make_official(3, Severity::minor, AcTreatment::dismissed, PdfState::not_applicable, s));
        int extra = static_cast<int>(s.range(3));
        for (int i = 0; i < extra; ++i)
            p.concerns.push_back(make_official(4 + i, s.chance(50) ? Severity::moderate : Severity::minor,
                                               AcTreatment::not_mentioned, PdfState::not_applicable, s));
    } else {
        p.concerns.push_back(make_official(0, Severity::fatal, AcTreatment::decisive_blocker,
                                           PdfState::not_applicable, s));
        p.concerns.push_back(make_official(1, Severity::major, AcTreatment::decisive_blocker,
                                           PdfState::not_applicable, s));
        p.concerns.push_back(
            make_official(2, Severity::major, AcTreatment::resolved, PdfState::addressed, s));
        p.concerns.push_back(
            make_official(3, Severity::moderate, AcTreatment::resolved, PdfState::addressed, s));
        p.concerns.push_back(
            make_official(4, Severity::major, AcTreatment::unresolved, PdfState::not_applicable, s));
        int extra = static_cast<int>(s.range(2));
        for (int i = 0; i < extra; ++i)
            p.concerns.push_back(make_official(5 + i, Severity::moderate,
                                               AcTreatment::not_mentioned, PdfState::not_applicable, s));
    }
    (void)profile;
    return p;
}

// Review construction per profile. Indices into p.concerns; agentic concerns
// are appended in creation order and re-numbered at the end.
PlannedReview plan_review(FixtureProfile profile, const PaperRecord& p, Stream& s) {
    PlannedReview r;
    bool accepted = p.official_verdict == Verdict::accept;

    auto add_concern = [&](Severity sev, bool decisive) {
        int idx = static_cast<int>(r.concerns.size());
        r.concerns.push_back(make_agentic(idx, sev, decisive, s));
        return idx;
    };
    auto add_match = [&](int official_index, Severity sev, bool decisive, MatchType t) {
        int idx = add_concern(sev, decisive);
        r.edges.push_back({official_index, idx, t});
        return idx;
    };
    auto official_sev = [&](int i) { return p.concerns[static_cast<size_t>(i)].severity; };

    switch (profile) {
        case FixtureProfile::dilution: {
            if (accepted) {
                // Two fatal decisive flags buried under minor chatter: the
                // full-review decisive fraction is low, the top-3 one is not.
                add_match(0, Severity::fatal, true, MatchType::partial);
                add_concern(Severity::fatal, true);
                int minors = 5 + static_cast<int>(s.range(2));
                for (int i = 0; i < minors; ++i) {
                    if (i == 0)
                        add_match(2, Severity::minor, false, MatchType::exact);
                    else
                        add_concern(Severity::minor, false);
                }
            } else {
                add_match(0, official_sev(0), true, MatchType::exact);
                if (s.chance(70)) add_match(1, official_sev(1), true, MatchType::partial);
                int minors = 4 + static_cast<int>(s.range(2));
                for (int i = 0; i < minors; ++i) add_concern(Severity::minor, false);
            }
            break;
        }
        case FixtureProfile::inverted_attention: {
            if (accepted) {
                add_match(0, Severity::major, false, MatchType::exact);
                add_match(2, Severity::moderate, false, MatchType::partial);
                add_concern(Severity::moderate, false);
            } else {
                // Misses both blockers, recovers the resolved concerns.
                add_match(2, official_sev(2), s.chance(30), MatchType::exact);
                add_match(3, official_sev(3), false, MatchType::exact);
                if (s.chance(50)) add_match(4, Severity::moderate, false, MatchType::partial);
                add_concern(Severity::moderate, false);
                add_concern(Severity::minor, false);
            }
            break;
        }
        case FixtureProfile::reject_heavy:
        case FixtureProfile::calibrated: {
            if (accepted) {
                // One excused decisive flag (matches the rebuttal-only
                // resolved concern), otherwise constructive feedback.
                add_match(1, Severity::major, true, MatchType::exact);
                add_match(0, s.chance(30) ? Severity::major : Severity::moderate, false,
                          MatchType::exact);
                add_match(2, Severity::moderate, false, MatchType::partial);
                add_concern(Severity::minor, false);
                if (s.chance(40)) add_concern(Severity::moderate, false);
            } else {
                // Both blockers found and flagged; resolved concerns get
                // less attention (one of two, alternating).
                add_match(0, Severity::fatal, true, MatchType::exact);
                add_match(1, Severity::major, true, MatchType::partial);
                if (s.chance(50))
                    add_match(2, Severity::moderate, false, MatchType::exact);
                else
                    add_match(3, Severity::moderate, false, MatchType::exact);
                add_match(4, Severity::major, s.chance(30), MatchType::partial);
                add_concern(Severity::minor, false);
            }
            break;
        }
    }

    // Occasional related edge to an otherwise untouched official concern.
    if (s.chance(40)) {
        std::vector<char> used(p.concerns.size(), 0);
        for (const auto& e : r.edges) used[static_cast<size_t>(e.official_index)] = 1;
        for (size_t i = 0; i < p.concerns.size(); ++i) {
            if (used[i]) continue;
            int idx = static_cast<int>(r.concerns.size());
            r.concerns.push_back(make_agentic(idx, Severity::moderate, false, s));
            r.edges.push_back({static_cast<int>(i), idx, MatchType::related});
            break;
        }
    }

    if (profile == FixtureProfile::reject_heavy) {
        r.native_verdict = Verdict::reject;
        r.positive_signal = false;
    } else if (profile == FixtureProfile::calibrated) {
        r.native_verdict = p.official_verdict;  // systems with an explicit decision field
        r.positive_signal = accepted;
    } else {
        r.native_verdict = std::nullopt;
        bool has_fatal = false;
        for (const auto& c : r.concerns)
            if (c.severity == Severity::fatal) has_fatal = true;
        r.positive_signal = !has_fatal;
    }

    long gated = 0;
    for (const auto& c : r.concerns) {
        bool high = c.severity == Severity::fatal || c.severity == Severity::major;
        r.gate_codes.push_back(high && c.decisive ? cycle_gate(gated++) : GateCategory::none);
    }
    return r;
}

}  // namespace

void generate_fixture_corpus(FixtureProfile profile, int size, std::uint64_t seed,
                             const std::string& out_dir) {
    if (size < 1) throw ParseError("fixture corpus size must be >= 1");

    fs::create_directories(fs::path(out_dir) / "papers");
    fs::create_directories(fs::path(out_dir) / "reviews");
    fs::create_directories(fs::path(out_dir) / "graphs");
    fs::create_directories(fs::path(out_dir) / "gates");

    const std::string system_id = "sys";
    const std::vector<std::string> run_ids = {"r1", "r2", "r3"};
    const int accepted_count = (size + 1) / 2;

    json manifest;
    manifest["papers"] = json::array();
    manifest["systems"] = json::array(
        {{{"system_id", system_id}, {"model_id", "synthetic"}, {"runs", run_ids}}});
    manifest["graphs"] = json::array();

    for (int pi = 0; pi < size; ++pi) {
        Stream paper_stream{splitmix64_at(seed, static_cast<std::uint64_t>(pi))};
        bool accepted = pi < accepted_count;
        PaperRecord paper = plan_paper(profile, pi, accepted, paper_stream);

        std::string paper_rel = "papers/" + paper.paper_id + ".json";
        write_file((fs::path(out_dir) / paper_rel).string(), serialize_official_sheet(paper));
        manifest["papers"].push_back(paper_rel);

        for (size_t ri = 0; ri < run_ids.size(); ++ri) {
            Stream run_stream{splitmix64_at(paper_stream.seed, 1000 + ri)};
            PlannedReview plan = plan_review(profile, paper, run_stream);

            AgenticReview review;
            review.paper_id = paper.paper_id;
            review.system_id = system_id;
            review.run_id = run_ids[ri];
            review.native_verdict = plan.native_verdict;
            review.concerns = plan.concerns;

            std::vector<MatchEdge> edges;
            for (const auto& pe : plan.edges) {
                MatchEdge e;
                e.official_id = paper.concerns[static_cast<size_t>(pe.official_index)].id;
                e.agentic_id = plan.concerns[static_cast<size_t>(pe.agentic_index)].id;
                e.match_type = pe.type;
                e.judgment_alignment = JudgmentAlignment::not_applicable;
                edges.push_back(e);
            }
            MatchGraph g = build_graph(paper, review, edges, SeverityPolicy::hybrid);

            GateClassifiedReview gate;
            gate.positive_acceptance_signal = plan.positive_signal;
            for (size_t ci = 0; ci < plan.concerns.size(); ++ci)
                gate.concerns.push_back({plan.concerns[ci], plan.gate_codes[ci]});

            std::string stem = paper.paper_id + "_" + system_id + "_" + run_ids[ri];
            std::string review_rel = "reviews/" + stem + ".json";
            std::string graph_rel = "graphs/" + stem + ".json";
            std::string gate_rel = "gates/" + stem + ".json";
            write_file((fs::path(out_dir) / review_rel).string(),
                       serialize_agentic_sheet(review));
            write_file((fs::path(out_dir) / graph_rel).string(),
                       serialize_graph_file(to_graph_file(g)));
            write_file((fs::path(out_dir) / gate_rel).string(), serialize_gate_file(gate));

            manifest["graphs"].push_back({{"paper_id", paper.paper_id},
                                          {"system_id", system_id},
                                          {"run_id", run_ids[ri]},
                                          {"graph", graph_rel},
                                          {"review", review_rel},
                                          {"gate", gate_rel}});
        }
    }

    write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");

    json truth;
    truth["profile"] = std::string(to_string(profile));
    truth["size"] = size;
    truth["seed"] = seed;
    truth["accepted_papers"] = accepted_count;
    truth["rejected_papers"] = size - accepted_count;
    json planted;
    switch (profile) {
        case FixtureProfile::reject_heavy:
            planted["native_verdict_all_reject"] = true;
            planted["accepted_accuracy_zero"] = true;
            break;
        case FixtureProfile::dilution:
            planted["fdr_at_3_exceeds_full"] = true;
            break;
        case FixtureProfile::inverted_attention:
            planted["attention_gap_negative"] = true;
            break;
        case FixtureProfile::calibrated:
            planted["attention_gap_positive"] = true;
            planted["excused_flags_present"] = true;
            break;
    }
    truth["planted"] = std::move(planted);
    write_file((fs::path(out_dir) / "truth.json").string(), truth.dump(2) + "\n");
}

}  // namespace calign
