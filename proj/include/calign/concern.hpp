#pragma once
// Domain records: official concerns (human reviews + AC metadata), agentic
// concerns (AI review output), and the per-paper / per-review containers.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "calign/severity.hpp"

namespace calign {

struct CriticalReference {
    std::string citation;
    std::string role;
    friend bool operator==(const CriticalReference&, const CriticalReference&) = default;
};

// One atomic reviewer concern. Invariants (enforced at parse/validate time):
//   - id matches O<digits>, statement non-empty
//   - decisive == (treatment == decisive_blocker)
//   - addressed_in_pdf is addressed/not_addressed iff treatment == resolved
struct OfficialConcern {
    std::string id;
    std::string statement;
    std::vector<std::string> evidence_quotes;
    Severity severity = Severity::moderate;  // never `unknown` on the official side
    AcTreatment treatment = AcTreatment::not_mentioned;
    bool decisive = false;
    PdfState addressed_in_pdf = PdfState::not_applicable;
    std::vector<std::string> provenance;
    std::vector<std::string> tags;
    std::vector<CriticalReference> critical_references;

    friend bool operator==(const OfficialConcern&, const OfficialConcern&) = default;
};

// One atomic AI-review concern. id matches A<digits>; severity may be unknown.
struct AgenticConcern {
    std::string id;
    std::string statement;
    Severity severity = Severity::unknown;
    bool decisive = false;
    Addressability addressability = Addressability::unknown;
    std::optional<std::string> mechanism;
    std::optional<std::string> origin;
    std::optional<std::string> source_detail;

    friend bool operator==(const AgenticConcern&, const AgenticConcern&) = default;
};

struct PaperRecord {
    std::string paper_id;
    Verdict official_verdict = Verdict::reject;
    std::string venue;
    bool pdf_is_revised = false;
    std::vector<OfficialConcern> concerns;

    const OfficialConcern* find(std::string_view concern_id) const;
    friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

// One system run over one paper, as parsed from an agentic sheet.
// native_verdict is present only when the source system emits one.
struct AgenticReview {
    std::string paper_id;
    std::string system_id;
    std::string run_id;
    std::optional<Verdict> native_verdict;
    std::vector<AgenticConcern> concerns;

    const AgenticConcern* find(std::string_view concern_id) const;
    friend bool operator==(const AgenticReview&, const AgenticReview&) = default;
};

// Structural invariant checks; throw ParseError with a field-specific message.
void validate(const PaperRecord& paper);
void validate(const AgenticReview& review);

// Numeric suffix of an O<digits>/A<digits> id, for canonical ordering.
// Falls back to -1 for ids that do not match the pattern.
long id_number(std::string_view id);

// Canonical id order: numeric suffix, then the full string as tiebreak.
bool id_less(std::string_view a, std::string_view b);

}  // namespace calign
