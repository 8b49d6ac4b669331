#pragma once
// Core enums for review concerns: severity levels, AC treatment labels,
// verdicts, and the severity-gap arithmetic every matching policy builds on.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace calign {

// Ordered severity scale. `unknown` sits outside the order: it never
// participates in gap arithmetic and never matches under any policy.
enum class Severity { minor = 0, moderate = 1, major = 2, fatal = 3, unknown = 4 };

// Post-rebuttal disposition assigned by the area chair.
enum class AcTreatment {
    decisive_blocker,
    unresolved,
    resolved,
    accepted_limitation,
    dismissed,
    reframed_feature,
    not_mentioned,
};

// Tri-state PDF status for resolved concerns. `not_applicable` is distinct
// from false: it means the question does not arise for this concern.
enum class PdfState { addressed, not_addressed, not_applicable };

enum class Verdict { accept, reject };

enum class Addressability { unresolved, addressable, unknown };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool severity_ordered(Severity s) { return s != Severity::unknown; }

// Rank within the ordered scale; unknown has no rank.
inline std::optional<int> severity_rank(Severity s) {
    if (!severity_ordered(s)) return std::nullopt;
    return static_cast<int>(s);
}

// |rank(a) - rank(b)| over ordered levels; nullopt when either is unknown.
inline std::optional<int> severity_gap(Severity a, Severity b) {
    auto ra = severity_rank(a);
    auto rb = severity_rank(b);
    if (!ra || !rb) return std::nullopt;
    int d = *ra - *rb;
    return d < 0 ? -d : d;
}

std::string_view to_string(Severity s);
std::string_view to_string(AcTreatment t);
std::string_view to_string(Verdict v);
std::string_view to_string(Addressability a);

Severity severity_from_string(std::string_view tok);
AcTreatment treatment_from_string(std::string_view tok);
Verdict verdict_from_string(std::string_view tok);
Addressability addressability_from_string(std::string_view tok);

}  // namespace calign
