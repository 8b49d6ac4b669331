#pragma once
// Structural lint gate. Errors block metric computation; warnings do not.
//
// Codes:
//   EDGE_CAP                 error    concern appears in more than 2 edges
//   DANGLING_ENDPOINT        error    edge endpoint missing from concern lists
//   DUPLICATE_EDGE           error    two edges share the same endpoint pair
//   ILLEGAL_RELATED_SEVERITY error    related edge carries a severity label
//   UNMATCHED_INCONSISTENT   error    stated unmatched lists differ from derived
//   IMPLAUSIBLE_COMBO        warning  minor official concern marked decisive
//
// The 2-edge cap is applied across all edge kinds, related included.

#include <string>
#include <vector>

#include "calign/match_graph.hpp"

namespace calign {

enum class DiagSeverity { error, warning };

struct Diagnostic {
    DiagSeverity severity = DiagSeverity::error;
    std::string code;
    std::string location;  // <paper_id>/<edge-or-concern-id>
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::vector<Diagnostic> lint_graph(const MatchGraph& g);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == DiagSeverity::error) return true;
    return false;
}

// Line format: <severity> <code> <location>: <message>
std::string render_diagnostic(const Diagnostic& d);

// Throws GraphError listing the first offending diagnostic if any error is present.
void require_lint_clean(const MatchGraph& g);

}  // namespace calign
