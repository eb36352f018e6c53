#pragma once

// Small statistics toolbox used by the Monte Carlo harness and the tests:
// moment summaries, normal/KS/chi-square machinery, and a Hill tail-index
// estimator with bootstrap errors.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ladderwalk/rng.hpp"

namespace ladderwalk::stats {

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

// Raised when a tail estimate has too little data to mean anything.
struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MeanSE mean_se(std::span<const double> xs);
double sample_variance(std::span<const double> xs);        // unbiased, n-1
double variance_se(std::span<const double> xs);            // large-sample se of S^2

double normal_cdf(double x);

// Two-sided KS distance of a sample against the standard normal, and the
// asymptotic p-value (with the small-sample effective-n correction).
double ks_statistic_normal(std::vector<double> samples);
double ks_p_value(double d, std::size_t n);

// Regularized upper incomplete gamma Q(a, x); chi-square survival function.
double gamma_q(double a, double x);
double chi2_sf(double x, double df);

// Pearson chi-square statistic of observed counts vs expected (same length).
double chi2_statistic(std::span<const double> observed, std::span<const double> expected);

struct HillEstimate {
    double tail_index = 0.0;   // estimated exponent rho
    double threshold = 0.0;    // order statistic the tail was cut at
    std::size_t tail_count = 0;
};

// Hill estimator over the top `top_fraction` order statistics. Durations at
// or below the threshold are bulk, not tail; the estimate needs at least
// `min_tail` strict exceeders and a threshold past `min_threshold`, else
// insufficient_data_error.
HillEstimate hill_tail_index(std::vector<double> samples, double top_fraction,
                             std::size_t min_tail = 100, double min_threshold = 0.0);

// Bootstrap standard error of the Hill point estimate (resamples that land in
// the insufficient branch are skipped).
double hill_bootstrap_se(const std::vector<double>& samples, double top_fraction,
                         int resamples, rng::Stream& stream,
                         std::size_t min_tail = 100, double min_threshold = 0.0);

}  // namespace ladderwalk::stats
