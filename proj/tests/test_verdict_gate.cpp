#include "doctest.h"

#include <algorithm>
#include <random>

#include "calign/verdict_gate.hpp"
#include "fixtures.hpp"

using namespace calign;

namespace {

GateClassifiedReview review_of(std::vector<std::pair<Severity, GateCategory>> specs,
                               bool signal) {
    GateClassifiedReview r;
    int i = 0;
    for (auto [sev, gate] : specs) {
        AgenticConcern c = testfx::agentic("A" + std::to_string(++i), sev, false);
        r.concerns.push_back({c, gate});
    }
    r.positive_acceptance_signal = signal;
    return r;
}

}  // namespace

TEST_CASE("gate verdict rules") {
    SUBCASE("a single fatal concern forces reject") {
        auto r = review_of({{Severity::fatal, GateCategory::none}}, false);
        CHECK(gate_verdict(r).value == InferredValue::reject);
    }
    SUBCASE("two gated majors force reject") {
        auto r = review_of({{Severity::major, GateCategory::g2_baseline_fairness},
                            {Severity::major, GateCategory::g4_validity}},
                           false);
        CHECK(gate_verdict(r).value == InferredValue::reject);
    }
    SUBCASE("no trigger plus a positive signal is accept") {
        auto r = review_of({{Severity::moderate, GateCategory::g1_claim_evidence},
                            {Severity::minor, GateCategory::none}},
                           true);
        CHECK(gate_verdict(r).value == InferredValue::accept);
    }
    SUBCASE("one gated major and no signal is ambiguous") {
        auto r = review_of({{Severity::major, GateCategory::g5_novelty}}, false);
        CHECK(gate_verdict(r).value == InferredValue::ambiguous);
    }
    SUBCASE("ungated majors never trigger the two-major rule") {
        auto r = review_of({{Severity::major, GateCategory::none},
                            {Severity::major, GateCategory::none},
                            {Severity::major, GateCategory::none}},
                           false);
        CHECK(gate_verdict(r).value == InferredValue::ambiguous);
    }
    SUBCASE("moderate gated concerns do not count toward the trigger") {
        auto r = review_of({{Severity::moderate, GateCategory::g1_claim_evidence},
                            {Severity::moderate, GateCategory::g4_validity}},
                           false);
        CHECK(gate_verdict(r).value == InferredValue::ambiguous);
    }
}

TEST_CASE("default-reject fold") {
    InferredVerdict amb{InferredValue::ambiguous, VerdictSource::gate};
    InferredVerdict acc{InferredValue::accept, VerdictSource::gate};
    InferredVerdict rej{InferredValue::reject, VerdictSource::gate};

    CHECK(default_reject_fold(amb).value == InferredValue::reject);
    CHECK(default_reject_fold(amb).source == VerdictSource::gate_default_reject);
    CHECK(default_reject_fold(acc) == acc);
    CHECK(default_reject_fold(rej) == rej);

    SUBCASE("idempotent") {
        for (auto v : {amb, acc, rej})
            CHECK(default_reject_fold(default_reject_fold(v)) == default_reject_fold(v));
    }
    SUBCASE("the fold never yields ambiguous") {
        for (auto v : {amb, acc, rej})
            CHECK(default_reject_fold(v).value != InferredValue::ambiguous);
    }
}

TEST_CASE("gate verdict is order-invariant and monotone in fatal evidence") {
    std::mt19937_64 rng(99);
    const Severity sevs[] = {Severity::minor, Severity::moderate, Severity::major,
                             Severity::fatal, Severity::unknown};
    const GateCategory gates[] = {GateCategory::none, GateCategory::g1_claim_evidence,
                                  GateCategory::g2_baseline_fairness, GateCategory::g4_validity,
                                  GateCategory::g5_novelty};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<Severity, GateCategory>> specs;
        size_t n = rng() % 6;
        for (size_t i = 0; i < n; ++i) specs.push_back({sevs[rng() % 5], gates[rng() % 5]});
        bool signal = rng() % 2 == 0;

        auto base = gate_verdict(review_of(specs, signal));

        auto shuffled = specs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(gate_verdict(review_of(shuffled, signal)).value == base.value);

        auto with_fatal = specs;
        with_fatal.push_back({Severity::fatal, GateCategory::none});
        auto stronger = gate_verdict(review_of(with_fatal, signal));
        // adding a fatal concern never moves the verdict toward accept
        CHECK(stronger.value == InferredValue::reject);
    }
}

TEST_CASE("gate file parsing") {
    AgenticReview review = testfx::worked_review();
    GateClassifiedReview gcr;
    gcr.positive_acceptance_signal = true;
    for (const auto& c : review.concerns)
        gcr.concerns.push_back(
            {c, c.decisive ? GateCategory::g4_validity : GateCategory::none});

    std::string body = serialize_gate_file(gcr);
    GateClassifiedReview round = parse_gate_file(body, review);
    CHECK(round.positive_acceptance_signal == gcr.positive_acceptance_signal);
    REQUIRE(round.concerns.size() == review.concerns.size());
    for (size_t i = 0; i < round.concerns.size(); ++i) {
        CHECK(round.concerns[i].first == gcr.concerns[i].first);
        CHECK(round.concerns[i].second == gcr.concerns[i].second);
    }

    SUBCASE("absent concerns default to none") {
        std::string sparse = R"({"positive_acceptance_signal": false,
                                 "concerns": [{"agentic_id": "A2", "gate_code": "G1"}]})";
        GateClassifiedReview g = parse_gate_file(sparse, review);
        CHECK(g.concerns.size() == review.concerns.size());
        for (const auto& [concern, gate] : g.concerns)
            CHECK(gate == (concern.id == "A2" ? GateCategory::g1_claim_evidence
                                              : GateCategory::none));
    }
    SUBCASE("unknown ids are rejected") {
        std::string bad = R"({"positive_acceptance_signal": false,
                              "concerns": [{"agentic_id": "A99", "gate_code": "G1"}]})";
        CHECK_THROWS_AS(parse_gate_file(bad, review), ParseError);
    }
    SUBCASE("duplicate ids are rejected") {
        std::string bad = R"({"positive_acceptance_signal": false,
                              "concerns": [{"agentic_id": "A1", "gate_code": "G1"},
                                           {"agentic_id": "A1", "gate_code": "G2"}]})";
        CHECK_THROWS_AS(parse_gate_file(bad, review), ParseError);
    }
    SUBCASE("missing signal is rejected") {
        CHECK_THROWS_AS(parse_gate_file(R"({"concerns": []})", review), ParseError);
    }
    SUBCASE("there is no G3") {
        CHECK_THROWS_AS(gate_category_from_string("G3"), ParseError);
    }
}

TEST_CASE("binary projection of inferred verdicts") {
    CHECK(*to_binary({InferredValue::accept, VerdictSource::gate}) == Verdict::accept);
    CHECK(*to_binary({InferredValue::reject, VerdictSource::gate}) == Verdict::reject);
    CHECK(!to_binary({InferredValue::ambiguous, VerdictSource::gate}).has_value());
}
