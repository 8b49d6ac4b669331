#include "doctest.h"

#include <cmath>

#include "calign/metrics.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace calign;

namespace {

const double kTol = 1e-12;

bool near(std::optional<double> a, std::optional<double> b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return std::fabs(*a - *b) <= kTol;
}

struct Held {
    // keeps the random fixtures alive while GraphCase points at them
    std::vector<oracle::RandomCase> cases;
    std::vector<GraphCase> view() {
        std::vector<GraphCase> v;
        for (auto& rc : cases)
            v.push_back({&rc.graph, &rc.paper, rc.review.native_verdict, std::nullopt});
        return v;
    }
};

Held random_corpus(std::uint64_t seed, int n, int max_side = 8) {
    Held h;
    for (int i = 0; i < n; ++i) h.cases.push_back(oracle::random_case(seed, i, max_side));
    return h;
}

std::vector<GraphCase> stratum(const std::vector<GraphCase>& cases, Verdict v) {
    std::vector<GraphCase> out;
    for (const auto& c : cases)
        if (c.paper->official_verdict == v) out.push_back(c);
    return out;
}

}  // namespace

TEST_CASE("binary accuracy") {
    CHECK(*binary_accuracy({{Verdict::reject, Verdict::reject},
                            {Verdict::reject, Verdict::accept}}) == doctest::Approx(0.5));
    CHECK(*binary_accuracy({{Verdict::accept, Verdict::accept}}) == 1.0);
    CHECK(!binary_accuracy({}).has_value());

    // An all-reject scorer on a balanced corpus: accepted accuracy collapses
    // to zero while rejected accuracy saturates.
    std::vector<std::pair<Verdict, Verdict>> accepted, rejected, all;
    for (int i = 0; i < 24; ++i) {
        accepted.push_back({Verdict::reject, Verdict::accept});
        rejected.push_back({Verdict::reject, Verdict::reject});
    }
    all = accepted;
    all.insert(all.end(), rejected.begin(), rejected.end());
    CHECK(*binary_accuracy(accepted) == 0.0);
    CHECK(*binary_accuracy(rejected) == 1.0);
    CHECK(*binary_accuracy(all) == 0.5);
}

TEST_CASE("worked-example graph metrics") {
    MatchGraph g = testfx::worked_graph();
    PaperRecord paper = testfx::worked_paper();
    LadderConfig cfg;
    GraphCase c{&g, &paper, std::nullopt, std::nullopt};

    SUBCASE("recall counts officials with a strict edge") {
        CHECK(*concern_recall(g, cfg) == doctest::Approx(4.0 / 6.0));
    }
    SUBCASE("phantom rate counts agentic concerns without a strict edge") {
        CHECK(*phantom_rate(g, cfg) == doctest::Approx(2.0 / 6.0));
    }
    SUBCASE("related-only concerns count as phantoms") {
        // A5 only carries a related edge
        CHECK(!has_counted_edge_agentic(g, "A5", cfg.inclusion));
    }
    SUBCASE("harmful phantom rate sees only fatal/major phantoms") {
        CHECK(*harmful_phantom_rate(g, paper, cfg) == doctest::Approx(1.0 / 6.0));
    }
    SUBCASE("false decisive rate excuses the rebuttal-only detection") {
        FdrBreakdown b = false_decisive_rate({c}, cfg);
        CHECK(b.total_agentic == 6);
        CHECK(b.decisive_flags == 3);
        CHECK(b.excused == 1);
        CHECK(b.excused_ids == std::vector<std::string>{"P1/A1"});
        CHECK(*b.fdr == 2.0 / 6.0);  // bit-exact
    }
    SUBCASE("decomposition separates re-escalation from fabrication") {
        DecompositionResult d = decompose_relevant_harmful(g, paper, cfg);
        CHECK(*d.harmful_rate == doctest::Approx(2.0 / 6.0));
        CHECK(d.components.reescalation == 1);     // A2 re-escalates the fixed O1
        CHECK(d.components.harmful_phantom == 1);  // A6 fabricated fatal
        CHECK(d.components.severity_underrate == 0);
        CHECK(d.components.missed_blocker == 0);
        CHECK(*d.relevant_rate == doctest::Approx(3.0 / 6.0));  // A3, A4, A5
    }
    SUBCASE("resolved escalation counts only pdf-fixed resolved matches") {
        // Only O1--A2 qualifies (O2 is resolved but not fixed in the PDF).
        CHECK(*resolved_escalation_rate({c}, cfg) == 1.0);
    }
}

TEST_CASE("recall on a sixteen-concern sheet with six matches") {
    PaperRecord p;
    p.paper_id = "PA";
    p.official_verdict = Verdict::accept;
    p.venue = "v";
    for (int i = 1; i <= 16; ++i)
        p.concerns.push_back(testfx::official("O" + std::to_string(i), Severity::moderate,
                                              AcTreatment::not_mentioned));
    AgenticReview r;
    r.paper_id = "PA";
    r.system_id = "s";
    r.run_id = "r1";
    std::vector<MatchEdge> edges;
    for (int i = 1; i <= 6; ++i) {
        r.concerns.push_back(testfx::agentic("A" + std::to_string(i), Severity::moderate, false));
        edges.push_back(testfx::edge("O" + std::to_string(i), "A" + std::to_string(i),
                                     MatchType::exact));
    }
    MatchGraph g = build_graph(p, r, edges);
    LadderConfig cfg;
    CHECK(*concern_recall(g, cfg) == doctest::Approx(0.375));

    SUBCASE("with no edges at all, recall is zero and phantom rate is one") {
        MatchGraph none = build_graph(p, r, {});
        CHECK(*concern_recall(none, cfg) == 0.0);
        CHECK(*phantom_rate(none, cfg) == 1.0);
    }
    SUBCASE("with every official matched, recall is one") {
        for (int i = 7; i <= 16; ++i) {
            r.concerns.push_back(
                testfx::agentic("A" + std::to_string(i), Severity::moderate, false));
            edges.push_back(testfx::edge("O" + std::to_string(i), "A" + std::to_string(i),
                                         MatchType::partial));
        }
        MatchGraph all = build_graph(p, r, edges);
        CHECK(*concern_recall(all, cfg) == 1.0);
    }
    SUBCASE("no decisive flags give a zero FDR over a nonzero pool") {
        GraphCase c{&g, &p, std::nullopt, std::nullopt};
        FdrBreakdown b = false_decisive_rate({c}, cfg);
        CHECK(b.decisive_flags == 0);
        CHECK(*b.fdr == 0.0);
    }
}

TEST_CASE("decomposition spot values") {
    LadderConfig cfg;
    SUBCASE("accepted paper with one fatal phantom among five benign concerns") {
        PaperRecord p;
        p.paper_id = "PD";
        p.official_verdict = Verdict::accept;
        p.venue = "v";
        p.concerns = {testfx::official("O1", Severity::moderate, AcTreatment::not_mentioned)};
        AgenticReview r;
        r.paper_id = "PD";
        r.system_id = "s";
        r.run_id = "r1";
        r.concerns = {testfx::agentic("A1", Severity::fatal, true)};
        for (int i = 2; i <= 6; ++i)
            r.concerns.push_back(
                testfx::agentic("A" + std::to_string(i), Severity::moderate, false));
        MatchGraph g = build_graph(p, r, {});
        DecompositionResult d = decompose_relevant_harmful(g, p, cfg);
        CHECK(*d.harmful_rate == doctest::Approx(1.0 / 6.0));
        CHECK(d.components.harmful_phantom == 1);
        CHECK(d.components.reescalation == 0);
    }
    SUBCASE("fatal match to a dismissed concern is a re-escalation") {
        PaperRecord p;
        p.paper_id = "PD2";
        p.official_verdict = Verdict::accept;
        p.venue = "v";
        p.concerns = {testfx::official("O1", Severity::moderate, AcTreatment::dismissed)};
        AgenticReview r;
        r.paper_id = "PD2";
        r.system_id = "s";
        r.run_id = "r1";
        r.concerns = {testfx::agentic("A1", Severity::fatal, true)};
        MatchGraph g = build_graph(p, r, {testfx::edge("O1", "A1", MatchType::exact)});
        DecompositionResult d = decompose_relevant_harmful(g, p, cfg);
        CHECK(d.components.reescalation == 1);
        CHECK(*d.harmful_rate == 1.0);
    }
    SUBCASE("rejected paper with all matches at aligned severity is harmless") {
        PaperRecord p;
        p.paper_id = "PD3";
        p.official_verdict = Verdict::reject;
        p.venue = "v";
        p.concerns = {testfx::official("O1", Severity::fatal, AcTreatment::decisive_blocker),
                      testfx::official("O2", Severity::major, AcTreatment::unresolved)};
        AgenticReview r;
        r.paper_id = "PD3";
        r.system_id = "s";
        r.run_id = "r1";
        r.concerns = {testfx::agentic("A1", Severity::fatal, true),
                      testfx::agentic("A2", Severity::major, false)};
        MatchGraph g = build_graph(p, r,
                                   {testfx::edge("O1", "A1", MatchType::exact),
                                    testfx::edge("O2", "A2", MatchType::exact)});
        DecompositionResult d = decompose_relevant_harmful(g, p, cfg);
        CHECK(*d.harmful_rate == 0.0);
        CHECK(*d.relevant_rate == 1.0);
    }
}

TEST_CASE("decisive precision on the three-flag fixture") {
    PaperRecord p;
    p.paper_id = "P3F";
    p.official_verdict = Verdict::reject;
    p.venue = "v";
    p.concerns = {testfx::official("O1", Severity::fatal, AcTreatment::decisive_blocker),
                  testfx::official("O2", Severity::major, AcTreatment::unresolved)};
    AgenticReview r;
    r.paper_id = "P3F";
    r.system_id = "s";
    r.run_id = "r1";
    r.concerns = {testfx::agentic("A1", Severity::fatal, true),
                  testfx::agentic("A2", Severity::major, true),
                  testfx::agentic("A3", Severity::major, true)};
    MatchGraph g = build_graph(p, r,
                               {testfx::edge("O1", "A1", MatchType::exact),
                                testfx::edge("O2", "A2", MatchType::partial)});
    GraphCase c{&g, &p, std::nullopt, std::nullopt};
    LadderConfig cfg;
    // three flags, one matching a decisive blocker
    CHECK(*decisive_precision_strict({c}, cfg) == doctest::Approx(1.0 / 3.0));

    SUBCASE("every flag on a blocker gives precision one") {
        r.concerns = {testfx::agentic("A1", Severity::fatal, true)};
        MatchGraph g2 = build_graph(p, r, {testfx::edge("O1", "A1", MatchType::exact)});
        GraphCase c2{&g2, &p, std::nullopt, std::nullopt};
        CHECK(*decisive_precision_strict({c2}, cfg) == 1.0);
    }
}

TEST_CASE("preconditions and undefined values") {
    MatchGraph g = testfx::worked_graph();
    PaperRecord accepted = testfx::worked_paper();
    PaperRecord rejected = accepted;
    rejected.official_verdict = Verdict::reject;
    LadderConfig cfg;

    SUBCASE("harmful phantom rate refuses rejected papers") {
        CHECK_THROWS_AS(harmful_phantom_rate(g, rejected, cfg), DomainError);
    }
    SUBCASE("fdr refuses rejected papers in the pool") {
        GraphCase c{&g, &rejected, std::nullopt, std::nullopt};
        CHECK_THROWS_AS(false_decisive_rate({c}, cfg), DomainError);
    }
    SUBCASE("empty-side graphs yield undefined, not zero") {
        PaperRecord p = accepted;
        p.concerns.clear();
        AgenticReview r = testfx::worked_review();
        r.concerns.clear();
        MatchGraph empty = build_graph(p, r, {});
        CHECK(!concern_recall(empty, cfg).has_value());
        CHECK(!phantom_rate(empty, cfg).has_value());
    }
    SUBCASE("no decisive flags means undefined precision, zero fdr") {
        PaperRecord p = rejected;
        AgenticReview r = testfx::worked_review();
        for (auto& a : r.concerns) a.decisive = false;
        MatchGraph quiet = build_graph(p, r, testfx::worked_edges());
        GraphCase c{&quiet, &p, std::nullopt, std::nullopt};
        CHECK(!decisive_precision_strict({c}, cfg).has_value());
        CHECK(*phantom_decisive_rate({c}, cfg) == 0.0);
    }
    SUBCASE("resolved escalation undefined without qualifying edges") {
        PaperRecord p = accepted;
        for (auto& o : p.concerns)
            if (o.treatment == AcTreatment::resolved) {
                o.treatment = AcTreatment::unresolved;
                o.addressed_in_pdf = PdfState::not_applicable;
            }
        MatchGraph q = build_graph(p, testfx::worked_review(), testfx::worked_edges());
        GraphCase c{&q, &p, std::nullopt, std::nullopt};
        CHECK(!resolved_escalation_rate({c}, cfg).has_value());
    }
}

TEST_CASE("decisive precision and phantom decisive rate on a rejected fixture") {
    PaperRecord p;
    p.paper_id = "PR";
    p.official_verdict = Verdict::reject;
    p.venue = "v";
    p.concerns = {
        testfx::official("O1", Severity::fatal, AcTreatment::decisive_blocker),
        testfx::official("O2", Severity::major, AcTreatment::unresolved),
        testfx::official("O3", Severity::moderate, AcTreatment::resolved, PdfState::addressed),
    };
    AgenticReview r;
    r.paper_id = "PR";
    r.system_id = "s";
    r.run_id = "r1";
    // 10 concerns: 3 decisive. A1 matches the blocker, A2 matches a
    // non-blocker, A3 is an unmatched decisive flag. A4 is a second phantom
    // decisive? no: exactly 2 unmatched decisive flags wanted.
    for (int i = 1; i <= 10; ++i)
        r.concerns.push_back(testfx::agentic("A" + std::to_string(i), Severity::moderate, false));
    r.concerns[0].decisive = true;
    r.concerns[0].severity = Severity::fatal;
    r.concerns[1].decisive = true;
    r.concerns[2].decisive = true;
    r.concerns[3].decisive = true;
    std::vector<MatchEdge> edges = {
        testfx::edge("O1", "A1", MatchType::exact),
        testfx::edge("O2", "A2", MatchType::partial),
    };
    MatchGraph g = build_graph(p, r, edges);
    GraphCase c{&g, &p, std::nullopt, std::nullopt};
    LadderConfig cfg;

    // 4 flags, 1 matching a blocker
    CHECK(*decisive_precision_strict({c}, cfg) == doctest::Approx(0.25));
    // 2 unmatched decisive flags over 10 concerns
    CHECK(*phantom_decisive_rate({c}, cfg) == doctest::Approx(0.2));

    SUBCASE("missed blockers are counted on the official side") {
        DecompositionResult d = decompose_relevant_harmful(g, p, cfg);
        CHECK(d.components.missed_blocker == 0);  // O1 is matched
        MatchGraph none = build_graph(p, r, {});
        DecompositionResult d2 = decompose_relevant_harmful(none, p, cfg);
        CHECK(d2.components.missed_blocker == 1);
    }
    SUBCASE("under-rating fatal/major officials is harmful") {
        // A1 drops to moderate against the fatal O1; A2 (moderate) already
        // under-rates the major O2, so two of ten concerns under-rate.
        AgenticReview low = r;
        low.concerns[0].severity = Severity::moderate;
        MatchGraph g2 = build_graph(p, low, edges);
        DecompositionResult d = decompose_relevant_harmful(g2, p, cfg);
        CHECK(d.components.severity_underrate == 2);
        CHECK(*d.harmful_rate == doctest::Approx(0.2));
    }
}

TEST_CASE("resolved escalation arithmetic") {
    PaperRecord p;
    p.paper_id = "PE";
    p.official_verdict = Verdict::accept;
    p.venue = "v";
    p.concerns = {
        testfx::official("O1", Severity::major, AcTreatment::resolved, PdfState::addressed),
        testfx::official("O2", Severity::major, AcTreatment::resolved, PdfState::addressed),
        testfx::official("O3", Severity::major, AcTreatment::resolved, PdfState::not_addressed),
    };
    AgenticReview r;
    r.paper_id = "PE";
    r.system_id = "s";
    r.run_id = "r1";
    r.concerns = {
        testfx::agentic("A1", Severity::major, false),
        testfx::agentic("A2", Severity::moderate, false),
        testfx::agentic("A3", Severity::fatal, true),
    };
    std::vector<MatchEdge> edges = {
        testfx::edge("O1", "A1", MatchType::exact),
        testfx::edge("O2", "A2", MatchType::exact),
        testfx::edge("O3", "A3", MatchType::exact),  // rebuttal-only: excluded
    };
    MatchGraph g = build_graph(p, r, edges);
    GraphCase c{&g, &p, std::nullopt, std::nullopt};
    LadderConfig cfg;
    CHECK(*resolved_escalation_rate({c}, cfg) == doctest::Approx(0.5));
}

TEST_CASE("recall by treatment and the attention gap") {
    LadderConfig cfg;
    SUBCASE("per-paper treatment recall") {
        PaperRecord p;
        p.paper_id = "PT";
        p.official_verdict = Verdict::reject;
        p.venue = "v";
        p.concerns = {
            testfx::official("O1", Severity::fatal, AcTreatment::decisive_blocker),
            testfx::official("O2", Severity::major, AcTreatment::decisive_blocker),
            testfx::official("O3", Severity::moderate, AcTreatment::resolved,
                             PdfState::addressed),
        };
        AgenticReview r;
        r.paper_id = "PT";
        r.system_id = "s";
        r.run_id = "r1";
        r.concerns = {testfx::agentic("A1", Severity::fatal, true)};
        MatchGraph g = build_graph(p, r, {testfx::edge("O1", "A1", MatchType::exact)});
        GraphCase c{&g, &p, std::nullopt, std::nullopt};
        auto profile = recall_by_treatment({c}, cfg);
        CHECK(*profile[AcTreatment::decisive_blocker] == doctest::Approx(0.5));
        CHECK(*profile[AcTreatment::resolved] == 0.0);
        CHECK(!profile[AcTreatment::dismissed].has_value());  // absent corpus-wide
    }
    SUBCASE("gap arithmetic in percentage points") {
        std::map<AcTreatment, std::optional<double>> prof;
        prof[AcTreatment::decisive_blocker] = 0.68;
        prof[AcTreatment::resolved] = 0.48;
        CHECK(*attention_gap(prof) == doctest::Approx(20.0));
        prof[AcTreatment::decisive_blocker] = 0.24;
        prof[AcTreatment::resolved] = 0.33;
        CHECK(*attention_gap(prof) == doctest::Approx(-9.0));
        prof[AcTreatment::resolved] = 0.24;
        CHECK(*attention_gap(prof) == doctest::Approx(0.0));
        prof[AcTreatment::resolved] = std::nullopt;
        CHECK(!attention_gap(prof).has_value());
    }
}

TEST_CASE("top-K restriction") {
    PaperRecord p;
    p.paper_id = "PK";
    p.official_verdict = Verdict::accept;
    p.venue = "v";
    p.concerns = {testfx::official("O1", Severity::major, AcTreatment::unresolved)};
    AgenticReview r;
    r.paper_id = "PK";
    r.system_id = "s";
    r.run_id = "r1";
    r.concerns = {
        testfx::agentic("A1", Severity::fatal, false),
        testfx::agentic("A2", Severity::fatal, false),
        testfx::agentic("A3", Severity::major, true),
        testfx::agentic("A4", Severity::major, true),
        testfx::agentic("A5", Severity::minor, false),
        testfx::agentic("A6", Severity::minor, false),
    };
    MatchGraph g = build_graph(p, r, {testfx::edge("O1", "A5", MatchType::exact)});

    SUBCASE("k of at least the concern count is the identity") {
        MatchGraph same = top_k_restrict(g, 6);
        CHECK(same == g);
        CHECK(top_k_restrict(g, 100) == g);
    }
    SUBCASE("severity first, decisive flag breaks ties, then ascending id") {
        MatchGraph top3 = top_k_restrict(g, 3);
        REQUIRE(top3.agentic.size() == 3);
        CHECK(top3.agentic[0].id == "A1");
        CHECK(top3.agentic[1].id == "A2");
        CHECK(top3.agentic[2].id == "A3");  // id-least of the two major-decisive
        // the edge to the dropped A5 disappears and O1 re-joins the misses
        CHECK(top3.edges.empty());
        CHECK(top3.unmatched_official == std::vector<std::string>{"O1"});
    }
    SUBCASE("decisive flag wins inside one severity level") {
        AgenticReview mins = r;
        mins.concerns = {
            testfx::agentic("A1", Severity::minor, false),
            testfx::agentic("A2", Severity::minor, true),
            testfx::agentic("A3", Severity::minor, false),
        };
        MatchGraph g2 = build_graph(p, mins, {});
        MatchGraph top1 = top_k_restrict(g2, 1);
        REQUIRE(top1.agentic.size() == 1);
        CHECK(top1.agentic[0].id == "A2");
    }
    SUBCASE("unknown severity ranks below minor") {
        AgenticReview mix = r;
        mix.concerns = {
            testfx::agentic("A1", Severity::unknown, true),
            testfx::agentic("A2", Severity::minor, false),
        };
        MatchGraph g2 = build_graph(p, mix, {});
        MatchGraph top1 = top_k_restrict(g2, 1);
        CHECK(top1.agentic[0].id == "A2");
    }
    SUBCASE("k must be positive") {
        CHECK_THROWS_AS(top_k_restrict(g, 0), DomainError);
        CHECK_THROWS_AS(top_k_restrict(g, -3), DomainError);
    }
    SUBCASE("restriction matches the oracle's keep set") {
        for (int i = 0; i < 40; ++i) {
            auto rc = oracle::random_case(606, i);
            for (int k : {1, 2, 3, 5, 8}) {
                MatchGraph cut = top_k_restrict(rc.graph, k);
                auto keep = oracle::top_k_ids(rc.graph, k);
                CHECK(cut.agentic.size() == keep.size());
                for (const auto& a : cut.agentic) CHECK(keep.count(a.id) == 1);
            }
        }
    }
}

TEST_CASE("metric@K identities and monotonicity") {
    LadderConfig cfg;
    SUBCASE("FDR@K equals FDR@all once K covers every concern") {
        Held h = random_corpus(808, 30);
        auto accepted = stratum(h.view(), Verdict::accept);
        size_t max_n = 0;
        for (const auto& c : accepted) max_n = std::max(max_n, c.graph->agentic.size());
        auto full = false_decisive_rate(accepted, cfg).fdr;
        auto at_cap = metric_at_k(
            [&](const std::vector<GraphCase>& v) { return false_decisive_rate(v, cfg).fdr; },
            accepted, static_cast<int>(std::max<size_t>(max_n, 1)));
        CHECK(full == at_cap);  // bit-exact
    }
    SUBCASE("decisive recall is non-decreasing in K") {
        Held h = random_corpus(909, 30);
        auto rejected = stratum(h.view(), Verdict::reject);
        std::optional<double> prev;
        for (int k = 1; k <= 9; ++k) {
            auto v = metric_at_k(
                [&](const std::vector<GraphCase>& view) {
                    return recall_by_treatment(view, cfg)[AcTreatment::decisive_blocker];
                },
                rejected, k);
            if (prev && v) CHECK(*v >= *prev - kTol);
            if (v) prev = v;
        }
    }
}

TEST_CASE("oracle equivalence on random graphs") {
    LadderConfig cfg;
    for (auto inclusion :
         {InclusionPolicy::strict_only, InclusionPolicy::strict_partial, InclusionPolicy::loose}) {
        cfg.inclusion = inclusion;
        Held h = random_corpus(0xC0FFEE + static_cast<int>(inclusion), 60);
        auto cases = h.view();
        auto accepted = stratum(cases, Verdict::accept);
        auto rejected = stratum(cases, Verdict::reject);

        for (const auto& c : cases) {
            CHECK(near(concern_recall(*c.graph, cfg), oracle::recall(*c.graph, inclusion)));
            CHECK(near(phantom_rate(*c.graph, cfg), oracle::phantom(*c.graph, inclusion)));
            if (c.paper->official_verdict == Verdict::accept)
                CHECK(near(harmful_phantom_rate(*c.graph, *c.paper, cfg),
                           oracle::harmful_phantom(*c.graph, inclusion)));
            auto lib_d = decompose_relevant_harmful(*c.graph, *c.paper, cfg);
            auto ora_d = oracle::decompose(*c.graph, *c.paper, cfg.severity_policy, inclusion);
            CHECK(near(lib_d.relevant_rate, ora_d.relevant));
            CHECK(near(lib_d.harmful_rate, ora_d.harmful));
            CHECK(lib_d.components.reescalation == ora_d.reesc);
            CHECK(lib_d.components.harmful_phantom == ora_d.hphantom);
            CHECK(lib_d.components.severity_underrate == ora_d.underrate);
            CHECK(lib_d.components.missed_blocker == ora_d.missed);
        }
        CHECK(near(false_decisive_rate(accepted, cfg).fdr, oracle::fdr(accepted, inclusion)));
        CHECK(near(decisive_precision_strict(rejected, cfg),
                   oracle::dec_prec(rejected, inclusion)));
        CHECK(near(phantom_decisive_rate(rejected, cfg), oracle::ph_dec(rejected, inclusion)));
        CHECK(near(resolved_escalation_rate(cases, cfg), oracle::res_esc(cases, inclusion)));
        for (AcTreatment t :
             {AcTreatment::decisive_blocker, AcTreatment::unresolved, AcTreatment::resolved})
            CHECK(near(recall_by_treatment(rejected, cfg)[t],
                       oracle::treatment_recall_mean(rejected, t, inclusion)));
    }
}

TEST_CASE("run metrics roll-up") {
    LadderConfig cfg;
    SUBCASE("stratification consistency: overall is the paper-weighted mean") {
        Held h = random_corpus(2024, 40);
        auto cases = h.view();
        // force a defined predicted verdict everywhere
        for (auto& c : cases) c.native_verdict = Verdict::reject;
        cfg.predicted_verdict_source = VerdictSource::native;
        RunMetrics m = compute_run_metrics(cases, cfg, "r1");
        long n_acc = stratum(cases, Verdict::accept).size();
        long n_rej = stratum(cases, Verdict::reject).size();
        double weighted =
            (*m.acc_accepted * n_acc + *m.acc_rejected * n_rej) / double(n_acc + n_rej);
        CHECK(*m.acc_overall == doctest::Approx(weighted).epsilon(1e-12));
    }
    SUBCASE("cross-run cells") {
        MetricCell cell = mean_std({0.42, 0.44, 0.46});
        CHECK(*cell.mean == doctest::Approx(0.44));
        CHECK(*cell.stddev == doctest::Approx(0.02));
        MetricCell single = mean_std({std::optional<double>(0.3)});
        CHECK(*single.mean == doctest::Approx(0.3));
        CHECK(*single.stddev == 0.0);
        MetricCell none = mean_std({std::nullopt, std::nullopt});
        CHECK(!none.mean.has_value());
    }
    SUBCASE("undefined cells stay undefined through the roll-up") {
        RunMetrics m = compute_run_metrics({}, cfg, "r1");
        CHECK(!m.acc_overall.has_value());
        CHECK(!m.recall_rejected.has_value());
        CHECK(!m.fdr_accepted.fdr.has_value());
    }
}

TEST_CASE("stratified concern metrics ignore the predicted-verdict source") {
    Held h = random_corpus(31337, 36);
    auto cases = h.view();
    LadderConfig native_cfg, gate_cfg, fold_cfg;
    native_cfg.predicted_verdict_source = VerdictSource::native;
    gate_cfg.predicted_verdict_source = VerdictSource::gate;
    fold_cfg.predicted_verdict_source = VerdictSource::gate_default_reject;
    RunMetrics a = compute_run_metrics(cases, native_cfg, "r1");
    RunMetrics b = compute_run_metrics(cases, gate_cfg, "r1");
    RunMetrics c = compute_run_metrics(cases, fold_cfg, "r1");
    auto same = [&](const RunMetrics& x, const RunMetrics& y) {
        CHECK(x.recall_accepted == y.recall_accepted);
        CHECK(x.recall_rejected == y.recall_rejected);
        CHECK(x.phantom_accepted == y.phantom_accepted);
        CHECK(x.phantom_rejected == y.phantom_rejected);
        CHECK(x.fdr_accepted.fdr == y.fdr_accepted.fdr);
        CHECK(x.decisive_precision_rejected == y.decisive_precision_rejected);
        CHECK(x.phantom_decisive_rejected == y.phantom_decisive_rejected);
        CHECK(x.resolved_escalation_accepted == y.resolved_escalation_accepted);
        CHECK(x.attention_gap_rejected == y.attention_gap_rejected);
        CHECK(x.fdr_at_k == y.fdr_at_k);
        CHECK(x.decisive_recall_at_k == y.decisive_recall_at_k);
    };
    same(a, b);
    same(b, c);
}
