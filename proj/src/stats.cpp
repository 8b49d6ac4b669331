#include "calign/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace calign {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * kGolden);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

RunMatrix make_run_matrix(const std::vector<std::string>& paper_ids,
                          const std::vector<std::string>& run_ids,
                          const std::vector<std::vector<std::optional<double>>>& cells) {
    if (cells.size() != paper_ids.size())
        throw std::invalid_argument("run matrix: one row per paper required");
    RunMatrix m;
    m.run_ids = run_ids;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].size() != run_ids.size())
            throw std::invalid_argument("run matrix: ragged row for paper " + paper_ids[i]);
        bool complete = std::all_of(cells[i].begin(), cells[i].end(),
                                    [](const auto& v) { return v.has_value(); });
        if (!complete) {
            ++m.dropped_papers;
            continue;
        }
        m.paper_ids.push_back(paper_ids[i]);
        std::vector<double> row;
        row.reserve(cells[i].size());
        for (const auto& v : cells[i]) row.push_back(*v);
        m.values.push_back(std::move(row));
    }
    return m;
}

std::optional<double> icc_2_1(const RunMatrix& m) {
    const size_t n = m.rows(), k = m.cols();
    if (n < 2 || k < 2) return std::nullopt;

    double grand = 0.0;
    for (const auto& row : m.values)
        for (double x : row) grand += x;
    grand /= static_cast<double>(n * k);

    std::vector<double> row_mean(n, 0.0), col_mean(k, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) {
            row_mean[i] += m.values[i][j];
            col_mean[j] += m.values[i][j];
        }
        row_mean[i] /= static_cast<double>(k);
    }
    for (size_t j = 0; j < k; ++j) col_mean[j] /= static_cast<double>(n);

    double ss_total = 0.0, ss_rows = 0.0, ss_cols = 0.0, ss_err = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            double x = m.values[i][j];
            ss_total += (x - grand) * (x - grand);
            double resid = x - row_mean[i] - col_mean[j] + grand;
            ss_err += resid * resid;
        }
    for (size_t i = 0; i < n; ++i) ss_rows += (row_mean[i] - grand) * (row_mean[i] - grand);
    for (size_t j = 0; j < k; ++j) ss_cols += (col_mean[j] - grand) * (col_mean[j] - grand);
    ss_rows *= static_cast<double>(k);
    ss_cols *= static_cast<double>(n);

    if (ss_total == 0.0) return std::nullopt;  // constant matrix: no variance to apportion

    double msr = ss_rows / static_cast<double>(n - 1);
    double msc = ss_cols / static_cast<double>(k - 1);
    double mse = ss_err / static_cast<double>((n - 1) * (k - 1));

    double denom = msr + static_cast<double>(k - 1) * mse +
                   static_cast<double>(k) * (msc - mse) / static_cast<double>(n);
    if (denom == 0.0) return std::nullopt;
    return (msr - mse) / denom;
}

std::optional<double> cohen_kappa(const std::vector<std::vector<long>>& table) {
    const size_t n = table.size();
    if (n < 2) throw std::invalid_argument("kappa: at least 2 categories required");
    for (const auto& row : table) {
        if (row.size() != n) throw std::invalid_argument("kappa: table must be square");
        for (long v : row)
            if (v < 0) throw std::invalid_argument("kappa: negative count");
    }
    double total = 0.0;
    std::vector<double> row_sum(n, 0.0), col_sum(n, 0.0);
    double diag = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            double v = static_cast<double>(table[i][j]);
            total += v;
            row_sum[i] += v;
            col_sum[j] += v;
            if (i == j) diag += v;
        }
    if (total == 0.0) throw std::invalid_argument("kappa: empty table");

    double po = diag / total;
    double pe = 0.0;
    for (size_t i = 0; i < n; ++i) pe += (row_sum[i] / total) * (col_sum[i] / total);
    if (pe == 1.0) return std::nullopt;
    return (po - pe) / (1.0 - pe);
}

namespace {

ConfidenceInterval percentile_interval(double point, std::vector<double> stats, long resamples,
                                       std::uint64_t seed) {
    ConfidenceInterval ci;
    ci.point = point;
    ci.resamples = resamples;
    ci.seed = seed;
    if (stats.empty()) {
        ci.lower = ci.upper = point;
        return ci;
    }
    std::sort(stats.begin(), stats.end());
    const double r = static_cast<double>(stats.size());
    size_t lo = static_cast<size_t>(std::floor(0.025 * r));
    size_t hi = static_cast<size_t>(std::ceil(0.975 * r)) - 1;
    lo = std::min(lo, stats.size() - 1);
    hi = std::min(hi, stats.size() - 1);
    ci.lower = stats[lo];
    ci.upper = stats[hi];
    return ci;
}

}  // namespace

ConfidenceInterval bootstrap_ci_mean(const std::vector<double>& values, long resamples,
                                     std::uint64_t seed) {
    if (values.empty()) throw std::invalid_argument("bootstrap: empty input");
    if (resamples < 1) throw std::invalid_argument("bootstrap: resamples must be >= 1");
    const size_t n = values.size();
    double point = 0.0;
    for (double v : values) point += v;
    point /= static_cast<double>(n);

    std::vector<double> stats;
    stats.reserve(static_cast<size_t>(resamples));
    for (long r = 0; r < resamples; ++r) {
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i) {
            std::uint64_t draw = splitmix64_at(seed, static_cast<std::uint64_t>(r) * n + i);
            sum += values[draw % n];
        }
        stats.push_back(sum / static_cast<double>(n));
    }
    return percentile_interval(point, std::move(stats), resamples, seed);
}

ConfidenceInterval bootstrap_ci_pooled_ratio(const std::vector<std::pair<double, double>>& pairs,
                                             long resamples, std::uint64_t seed) {
    if (pairs.empty()) throw std::invalid_argument("bootstrap: empty input");
    if (resamples < 1) throw std::invalid_argument("bootstrap: resamples must be >= 1");
    const size_t n = pairs.size();
    double num = 0.0, den = 0.0;
    for (const auto& [a, b] : pairs) {
        num += a;
        den += b;
    }
    double point = den != 0.0 ? num / den : 0.0;

    std::vector<double> stats;
    stats.reserve(static_cast<size_t>(resamples));
    for (long r = 0; r < resamples; ++r) {
        double rn = 0.0, rd = 0.0;
        for (size_t i = 0; i < n; ++i) {
            std::uint64_t draw = splitmix64_at(seed, static_cast<std::uint64_t>(r) * n + i);
            const auto& [a, b] = pairs[draw % n];
            rn += a;
            rd += b;
        }
        if (rd != 0.0) stats.push_back(rn / rd);
    }
    return percentile_interval(point, std::move(stats), resamples, seed);
}

}  // namespace calign
