#include "calign/severity.hpp"

namespace calign {

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::fatal: return "fatal";
        case Severity::major: return "major";
        case Severity::moderate: return "moderate";
        case Severity::minor: return "minor";
        case Severity::unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(AcTreatment t) {
    switch (t) {
        case AcTreatment::decisive_blocker: return "decisive_blocker";
        case AcTreatment::unresolved: return "unresolved";
        case AcTreatment::resolved: return "resolved";
        case AcTreatment::accepted_limitation: return "accepted_limitation";
        case AcTreatment::dismissed: return "dismissed";
        case AcTreatment::reframed_feature: return "reframed_feature";
        case AcTreatment::not_mentioned: return "not_mentioned";
    }
    return "not_mentioned";
}

std::string_view to_string(Verdict v) {
    return v == Verdict::accept ? "accept" : "reject";
}

std::string_view to_string(Addressability a) {
    switch (a) {
        case Addressability::unresolved: return "unresolved";
        case Addressability::addressable: return "addressable";
        case Addressability::unknown: return "unknown";
    }
    return "unknown";
}

Severity severity_from_string(std::string_view tok) {
    if (tok == "fatal") return Severity::fatal;
    if (tok == "major") return Severity::major;
    if (tok == "moderate") return Severity::moderate;
    if (tok == "minor") return Severity::minor;
    if (tok == "unknown") return Severity::unknown;
    throw ParseError("unknown severity token \"" + std::string(tok) + "\"");
}

AcTreatment treatment_from_string(std::string_view tok) {
    if (tok == "decisive_blocker") return AcTreatment::decisive_blocker;
    if (tok == "unresolved") return AcTreatment::unresolved;
    if (tok == "resolved") return AcTreatment::resolved;
    if (tok == "accepted_limitation") return AcTreatment::accepted_limitation;
    if (tok == "dismissed") return AcTreatment::dismissed;
    if (tok == "reframed_feature") return AcTreatment::reframed_feature;
    if (tok == "not_mentioned") return AcTreatment::not_mentioned;
    throw ParseError("unknown treatment token \"" + std::string(tok) + "\"");
}

Verdict verdict_from_string(std::string_view tok) {
    if (tok == "accept") return Verdict::accept;
    if (tok == "reject") return Verdict::reject;
    throw ParseError("unknown verdict token \"" + std::string(tok) + "\"");
}

Addressability addressability_from_string(std::string_view tok) {
    if (tok == "unresolved") return Addressability::unresolved;
    if (tok == "addressable") return Addressability::addressable;
    if (tok == "unknown") return Addressability::unknown;
    throw ParseError("unknown addressability token \"" + std::string(tok) + "\"");
}

}  // namespace calign
