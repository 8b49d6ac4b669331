#include "doctest.h"

#include <filesystem>

#include "calign/json_io.hpp"
#include "calign/manifest.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace calign;

TEST_CASE("severity gap arithmetic") {
    CHECK(severity_gap(Severity::fatal, Severity::fatal) == 0);
    CHECK(severity_gap(Severity::major, Severity::minor) == 2);
    CHECK(!severity_gap(Severity::unknown, Severity::major).has_value());
    CHECK(!severity_gap(Severity::minor, Severity::unknown).has_value());

    const Severity ordered[] = {Severity::minor, Severity::moderate, Severity::major,
                                Severity::fatal};
    for (Severity a : ordered)
        for (Severity b : ordered) {
            CHECK(severity_gap(a, b) == severity_gap(b, a));
            for (Severity c : ordered)
                CHECK(*severity_gap(a, c) <= *severity_gap(a, b) + *severity_gap(b, c));
        }
}

TEST_CASE("severity tokens are a closed enum") {
    CHECK(severity_from_string("fatal") == Severity::fatal);
    CHECK(severity_from_string("unknown") == Severity::unknown);
    CHECK_THROWS_AS(severity_from_string("catastrophic"), ParseError);
}

namespace {

const char* kMinimalSheet = R"({
  "paper_id": "P9",
  "official_verdict": "accept",
  "venue": "venue-alpha-2026",
  "pdf_is_revised": true,
  "concerns": [
    {"id": "O1", "statement": "The ablation coverage is thin.",
     "evidence_quotes": ["thin ablations"], "severity": "major",
     "ac_treatment": "resolved", "decisive": false, "addressed_in_pdf": true,
     "provenance": ["reviewer-2"], "tags": ["evaluation"],
     "critical_references": [{"citation": "prior benchmark suite", "role": "missing_comparison"}]}
  ]
})";

}  // namespace

TEST_CASE("official sheet parsing") {
    SUBCASE("minimal well-formed sheet") {
        PaperRecord p = parse_official_sheet(kMinimalSheet);
        CHECK(p.paper_id == "P9");
        CHECK(p.official_verdict == Verdict::accept);
        REQUIRE(p.concerns.size() == 1);
        CHECK(p.concerns[0].severity == Severity::major);
        CHECK(p.concerns[0].treatment == AcTreatment::resolved);
        CHECK(p.concerns[0].addressed_in_pdf == PdfState::addressed);
        CHECK(p.concerns[0].critical_references.size() == 1);
    }
    SUBCASE("decisive flag must agree with treatment") {
        std::string sheet = kMinimalSheet;
        // decisive_blocker with decisive=false is a contradiction
        size_t pos = sheet.find("\"resolved\"");
        sheet.replace(pos, 10, "\"decisive_blocker\"");
        pos = sheet.find("\"addressed_in_pdf\": true,");
        sheet.erase(pos, std::string("\"addressed_in_pdf\": true,").size());
        CHECK_THROWS_AS(parse_official_sheet(sheet), ParseError);
    }
    SUBCASE("addressed_in_pdf forbidden off the resolved treatment") {
        std::string sheet = kMinimalSheet;
        size_t pos = sheet.find("\"resolved\"");
        sheet.replace(pos, 10, "\"dismissed\"");
        CHECK_THROWS_AS(parse_official_sheet(sheet), ParseError);
    }
    SUBCASE("resolved concern must state its PDF status") {
        std::string sheet = kMinimalSheet;
        size_t pos = sheet.find("\"addressed_in_pdf\": true,");
        sheet.erase(pos, std::string("\"addressed_in_pdf\": true,").size());
        CHECK_THROWS_AS(parse_official_sheet(sheet), ParseError);
    }
    SUBCASE("malformed syntax") {
        CHECK_THROWS_AS(parse_official_sheet("{not json"), ParseError);
    }
    SUBCASE("missing required field") {
        CHECK_THROWS_AS(parse_official_sheet(R"({"paper_id": "P1"})"), ParseError);
    }
}

TEST_CASE("duplicate concern id rejected") {
    PaperRecord p = testfx::worked_paper();
    p.concerns.push_back(p.concerns.front());
    CHECK_THROWS_AS(validate(p), ParseError);
}

TEST_CASE("accepted papers carry no decisive blockers") {
    PaperRecord p = testfx::worked_paper();
    p.concerns.push_back(testfx::official("O7", Severity::fatal, AcTreatment::decisive_blocker));
    CHECK_THROWS_AS(validate(p), ParseError);
    p.official_verdict = Verdict::reject;
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("sixteen-concern sheet keeps its cardinality") {
    PaperRecord p;
    p.paper_id = "PA";
    p.official_verdict = Verdict::accept;
    p.venue = "venue-alpha-2026";
    p.pdf_is_revised = true;
    for (int i = 1; i <= 16; ++i)
        p.concerns.push_back(testfx::official("O" + std::to_string(i), Severity::moderate,
                                              AcTreatment::not_mentioned));
    PaperRecord round = parse_official_sheet(serialize_official_sheet(p));
    CHECK(round.concerns.size() == 16);
    CHECK(round == p);
}

TEST_CASE("agentic sheet parsing") {
    AgenticReview r = testfx::worked_review();
    SUBCASE("six concerns, three decisive") {
        AgenticReview round = parse_agentic_sheet(serialize_agentic_sheet(r));
        CHECK(round.concerns.size() == 6);
        long decisive = 0;
        for (const auto& c : round.concerns)
            if (c.decisive) ++decisive;
        CHECK(decisive == 3);
        CHECK(!round.native_verdict.has_value());
    }
    SUBCASE("empty concern list is valid") {
        r.concerns.clear();
        AgenticReview round = parse_agentic_sheet(serialize_agentic_sheet(r));
        CHECK(round.concerns.empty());
    }
    SUBCASE("unknown severity token rejected") {
        std::string body = serialize_agentic_sheet(r);
        size_t pos = body.find("\"fatal\"");
        body.replace(pos, 7, "\"catastrophic\"");
        CHECK_THROWS_AS(parse_agentic_sheet(body), ParseError);
    }
    SUBCASE("duplicate agentic id rejected") {
        r.concerns.push_back(r.concerns.front());
        CHECK_THROWS_AS(validate(r), ParseError);
    }
    SUBCASE("native verdict is optional metadata") {
        r.native_verdict = Verdict::reject;
        AgenticReview round = parse_agentic_sheet(serialize_agentic_sheet(r));
        CHECK(round.native_verdict == Verdict::reject);
    }
}

TEST_CASE("parse-serialize round trip on random records") {
    for (int i = 0; i < 40; ++i) {
        oracle::Rng rng(900 + i);
        PaperRecord p = oracle::random_paper(rng, i);
        CHECK(parse_official_sheet(serialize_official_sheet(p)) == p);
        AgenticReview r = oracle::random_review(rng, p);
        CHECK(parse_agentic_sheet(serialize_agentic_sheet(r)) == r);
        MatchGraph g = build_graph(p, r, oracle::random_edges(rng, p, r));
        GraphFile gf = to_graph_file(g);
        CHECK(parse_graph_file(serialize_graph_file(gf)) == gf);
    }
}

TEST_CASE("manifest parsing and reference checks") {
    auto dir = testfx::fresh_dir("manifest");

    PaperRecord p1 = testfx::worked_paper();
    PaperRecord p2 = testfx::worked_paper();
    p2.paper_id = "P2";
    write_file((dir / "P1.json").string(), serialize_official_sheet(p1));
    write_file((dir / "P2.json").string(), serialize_official_sheet(p2));

    std::string graph_entries;
    for (const std::string& pid : {std::string("P1"), std::string("P2")}) {
        for (const std::string& run : {std::string("r1"), std::string("r2"), std::string("r3")}) {
            AgenticReview r = testfx::worked_review();
            r.paper_id = pid;
            r.run_id = run;
            PaperRecord& p = pid == "P1" ? p1 : p2;
            MatchGraph g = build_graph(p, r, testfx::worked_edges());
            std::string stem = pid + "_sys_" + run;
            write_file((dir / (stem + ".review.json")).string(), serialize_agentic_sheet(r));
            write_file((dir / (stem + ".graph.json")).string(),
                       serialize_graph_file(to_graph_file(g)));
            if (!graph_entries.empty()) graph_entries += ",";
            graph_entries += "{\"paper_id\":\"" + pid + "\",\"system_id\":\"sys\",\"run_id\":\"" +
                             run + "\",\"graph\":\"" + stem + ".graph.json\",\"review\":\"" +
                             stem + ".review.json\"}";
        }
    }
    std::string manifest_body =
        "{\"papers\":[\"P1.json\",\"P2.json\"],"
        "\"systems\":[{\"system_id\":\"sys\",\"model_id\":\"m\",\"runs\":[\"r1\",\"r2\",\"r3\"]}],"
        "\"graphs\":[" +
        graph_entries + "]}";

    SUBCASE("2 papers x 1 system x 3 runs resolves to 6 entries") {
        CorpusManifest m = parse_manifest(manifest_body, dir.string());
        CHECK(m.graph_index.size() == 6);
        Corpus corpus = load_corpus(m);
        CHECK(corpus.graphs.size() == 6);
        CHECK(corpus.papers.size() == 2);
    }
    SUBCASE("dangling graph reference is an error") {
        std::string broken = manifest_body;
        size_t pos = broken.find("P2_sys_r3.graph.json");
        broken.replace(pos, 20, "missing-file.json");
        CHECK_THROWS_AS(parse_manifest(broken, dir.string()), ParseError);
    }
    SUBCASE("duplicate (paper, system, run) key is an error") {
        std::string dup = manifest_body;
        size_t pos = dup.rfind("]}");
        std::string extra =
            ",{\"paper_id\":\"P1\",\"system_id\":\"sys\",\"run_id\":\"r1\","
            "\"graph\":\"P1_sys_r1.graph.json\",\"review\":\"P1_sys_r1.review.json\"}";
        dup.insert(pos, extra);
        CHECK_THROWS_AS(parse_manifest(dup, dir.string()), ParseError);
    }
    SUBCASE("graph file key must agree with the manifest key") {
        std::string wrong = manifest_body;
        size_t pos = wrong.find("P1_sys_r1.graph.json");
        wrong.replace(pos, 20, "P2_sys_r1.graph.json");
        CorpusManifest m = parse_manifest(wrong, dir.string());
        CHECK_THROWS_AS(load_corpus(m), ParseError);
    }
}
