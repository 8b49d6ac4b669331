#pragma once
// Reliability and uncertainty statistics: ICC(2,1) from the two-way
// random-effects ANOVA decomposition, Cohen's kappa, and seeded paper-level
// percentile bootstrap intervals.
//
// Bootstrap stream contract (part of the reproducibility surface): draws come
// from the SplitMix64 sequence
//     draw(i) = mix64(seed + (i + 1) * 0x9E3779B97F4A7C15)
// where mix64 is the standard SplitMix64 finalizer. Resample r over n papers
// consumes draws [r*n, (r+1)*n); each draw selects paper index draw % n. The
// stream is position-determined, so raising the resample count never changes
// earlier resamples.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calign/severity.hpp"

namespace calign {

// Position-determined SplitMix64 draw.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index);

// Stable 64-bit label hash (FNV-1a), used to derive per-cell bootstrap seeds.
std::uint64_t fnv1a64(std::string_view s);

// One metric over an n_papers x k_runs grid; rectangular with no missing
// cells. Papers with an undefined value in any run are dropped before
// construction and counted in dropped_papers.
struct RunMatrix {
    std::vector<std::string> paper_ids;
    std::vector<std::string> run_ids;
    std::vector<std::vector<double>> values;  // [paper][run]
    long dropped_papers = 0;

    size_t rows() const { return values.size(); }
    size_t cols() const { return values.empty() ? 0 : values[0].size(); }
};

RunMatrix make_run_matrix(const std::vector<std::string>& paper_ids,
                          const std::vector<std::string>& run_ids,
                          const std::vector<std::vector<std::optional<double>>>& cells);

// Shrout-Fleiss ICC(2,1): two-way random effects, single measures. Requires
// n >= 2 papers and k >= 2 runs; a zero-variance (constant) matrix or a zero
// denominator yields nullopt. May be negative.
std::optional<double> icc_2_1(const RunMatrix& m);

// Cohen's kappa over a square contingency table of counts. Expected
// agreement from marginal products; p_e == 1 yields nullopt. Non-square
// tables, negative counts, or zero total throw DomainError-compatible
// std::invalid_argument.
std::optional<double> cohen_kappa(const std::vector<std::vector<long>>& table);

struct ConfidenceInterval {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    long resamples = 0;
    std::uint64_t seed = 0;
};

enum class BootstrapStatistic { mean, pooled_ratio };

// Paper-level percentile bootstrap (2.5 / 97.5 order statistics:
// lower = sorted[floor(0.025*R)], upper = sorted[ceil(0.975*R)-1]).
//   mean          values = per-paper metric values
//   pooled_ratio  pairs  = per-paper (numerator, denominator); the statistic
//                 is sum(num)/sum(den) over the resampled papers. Resamples
//                 with a zero pooled denominator are skipped (not imputed).
ConfidenceInterval bootstrap_ci_mean(const std::vector<double>& values, long resamples,
                                     std::uint64_t seed);
ConfidenceInterval bootstrap_ci_pooled_ratio(const std::vector<std::pair<double, double>>& pairs,
                                             long resamples, std::uint64_t seed);

}  // namespace calign
