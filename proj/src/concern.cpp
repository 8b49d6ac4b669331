#include "calign/concern.hpp"

#include <cctype>
#include <set>

namespace calign {

namespace {

bool id_matches(std::string_view id, char prefix) {
    if (id.size() < 2 || id[0] != prefix) return false;
    for (size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    return true;
}

}  // namespace

long id_number(std::string_view id) {
    if (id.size() < 2) return -1;
    long n = 0;
    for (size_t i = 1; i < id.size(); ++i) {
        char c = id[i];
        if (c < '0' || c > '9') return -1;
        n = n * 10 + (c - '0');
    }
    return n;
}

bool id_less(std::string_view a, std::string_view b) {
    long na = id_number(a), nb = id_number(b);
    if (na != nb) return na < nb;
    return a < b;
}

const OfficialConcern* PaperRecord::find(std::string_view concern_id) const {
    for (const auto& c : concerns)
        if (c.id == concern_id) return &c;
    return nullptr;
}

const AgenticConcern* AgenticReview::find(std::string_view concern_id) const {
    for (const auto& c : concerns)
        if (c.id == concern_id) return &c;
    return nullptr;
}

void validate(const PaperRecord& paper) {
    if (paper.paper_id.empty()) throw ParseError("paper_id is empty");
    std::set<std::string> seen;
    long blockers = 0;
    for (const auto& c : paper.concerns) {
        if (!id_matches(c.id, 'O'))
            throw ParseError(paper.paper_id + ": concern id \"" + c.id +
                             "\" does not match O<digits>");
        if (!seen.insert(c.id).second)
            throw ParseError(paper.paper_id + ": duplicate concern id " + c.id);
        if (c.statement.empty())
            throw ParseError(paper.paper_id + "/" + c.id + ": statement is empty");
        if (c.severity == Severity::unknown)
            throw ParseError(paper.paper_id + "/" + c.id +
                             ": official concerns cannot carry unknown severity");
        if (c.decisive != (c.treatment == AcTreatment::decisive_blocker))
            throw ParseError(paper.paper_id + "/" + c.id +
                             ": decisive flag does not agree with treatment label");
        bool resolved = c.treatment == AcTreatment::resolved;
        bool has_pdf_state = c.addressed_in_pdf != PdfState::not_applicable;
        if (resolved && !has_pdf_state)
            throw ParseError(paper.paper_id + "/" + c.id +
                             ": resolved concern missing addressed_in_pdf");
        if (!resolved && has_pdf_state)
            throw ParseError(paper.paper_id + "/" + c.id +
                             ": addressed_in_pdf present on non-resolved concern");
        if (c.treatment == AcTreatment::decisive_blocker) ++blockers;
    }
    if (paper.official_verdict == Verdict::accept && blockers > 0)
        throw ParseError(paper.paper_id + ": accepted paper carries " + std::to_string(blockers) +
                         " decisive blocker(s)");
}

void validate(const AgenticReview& review) {
    if (review.paper_id.empty()) throw ParseError("paper_id is empty");
    if (review.system_id.empty()) throw ParseError("system_id is empty");
    if (review.run_id.empty()) throw ParseError("run_id is empty");
    std::set<std::string> seen;
    for (const auto& c : review.concerns) {
        if (!id_matches(c.id, 'A'))
            throw ParseError(review.paper_id + ": concern id \"" + c.id +
                             "\" does not match A<digits>");
        if (!seen.insert(c.id).second)
            throw ParseError(review.paper_id + ": duplicate concern id " + c.id);
        if (c.statement.empty())
            throw ParseError(review.paper_id + "/" + c.id + ": statement is empty");
    }
}

}  // namespace calign
