#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ri2d/rng.hpp"

namespace ri2d {

/// Inverse standard-normal CDF (Acklam's approximation plus one refinement).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b), for the exact binomial interval.
double incomplete_beta(double a, double b, double x);

/// A Monte Carlo estimate with reproducible provenance.
struct Estimate {
    double mean = 0;
    double stderr_ = 0;
    std::int64_t n_samples = 0;
    double ci_level = 0.99;
    double bias_bound = 0;         // systematic allowance added to comparisons
    std::int64_t successes = -1;   // >= 0 for binomial estimates

    double z() const { return normal_quantile(0.5 * (1.0 + ci_level)); }

    /// Normal-approximation half width, replaced by the exact binomial
    /// (Clopper-Pearson) width when either count is below 30.
    double half_width() const;
    double ci_lo() const;
    double ci_hi() const;
};

/// Estimates P[event] over n independent replicas. Replica i draws from
/// substream(seed, i), so the result is identical for any thread count.
Estimate mc_estimate(const std::function<bool(Rng&)>& event, std::int64_t n_samples,
                     RngSeed seed, int threads = 1);

enum class Verdict { pass, fail, inconclusive };

struct ComparisonReport {
    std::string name;
    double predicted = 0;
    Estimate estimate;
    double slack = 0;  // model allowance beyond statistics and bias
    Verdict verdict = Verdict::fail;
    std::string tolerance_policy;

    bool ok() const { return verdict != Verdict::fail; }
};

/// pass iff |mean - predicted| <= half_width + bias_bound + slack; flagged
/// inconclusive when the interval is sharper than a tenth of the slack.
ComparisonReport compare(const std::string& name, double predicted, const Estimate& est,
                         double slack = 0.0);

/// Least-squares slope of log(value) against log(r). Values must be positive.
double loglog_slope(const std::vector<std::pair<double, double>>& pairs);

/// Runs fn(begin, end, chunk_index) over a static partition of [0, n).
void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(std::int64_t, std::int64_t, int)>& fn);

}  // namespace ri2d
