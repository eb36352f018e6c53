#pragma once

// Monte Carlo experiments confronting the simulation with the closed forms:
// speed curves, conditional passage times, trap-time tails, central limit
// behaviour, the Einstein relation, and escape-probability bounds.
//
// Replicas draw from counter-based streams keyed by (seed, domain, replica),
// and every aggregate is an ordered fold over replica index, so results are
// bit-identical for any job count.

#include <cstdint>
#include <vector>

#include "ladderwalk/closed_form.hpp"
#include "ladderwalk/common.hpp"
#include "ladderwalk/stats.hpp"

namespace ladderwalk::mc {

using closed_form::ModelParams;

struct McOptions {
    int jobs = 0;  // 0 = all available
};

struct EstimateCI {
    double point = 0.0;
    double std_error = 0.0;
    int replicas = 0;
    std::int64_t steps_per_replica = 0;
    std::uint64_t seed = 0;
    double capped_fraction = 0.0;
};

enum class CltMode { annealed, quenched };

struct CltReport {
    std::vector<double> endpoints;  // raw X2 after n steps, by replica
    std::vector<double> samples;    // standardized endpoints
    double ks_statistic = 0.0;
    double ks_p_value = 0.0;
    double sample_variance = 0.0;  // of the samples as standardized
    CltMode mode = CltMode::annealed;
};

// Mean of X2/steps across fresh-tree replicas, burn-in of steps/10 dropped.
EstimateCI estimate_speed(const ModelParams& p, std::int64_t steps, int replicas,
                          McOptions opt = {});

// Same estimate on the straight-ray tree (every W forced equal).
EstimateCI estimate_speed_uniform_tree(const ModelParams& p, std::int64_t steps, int replicas,
                                       McOptions opt = {});

// Mean passage time to ray column 1 with the origin block forced to the
// event (a, b, k, sigma); capped replicas are excluded and counted.
EstimateCI estimate_tau1_conditional(const ModelParams& p, int a, int b, int k, int sigma,
                                     int replicas, std::int64_t step_cap = 1'000'000'000,
                                     McOptions opt = {});

// Unconditional mean passage time to ray column 1 over sampled origin blocks.
EstimateCI estimate_tau1(const ModelParams& p, int replicas,
                         std::int64_t step_cap = 1'000'000'000, McOptions opt = {});

struct TailReport {
    EstimateCI hill;          // point = tail exponent, se = bootstrap
    double top_fraction = 0.05;
    double threshold = 0.0;
    std::int64_t tail_count = 0;
    double hill_unfloored = 0.0;  // same estimator without the bulk floor
};

// Hill tail-index of type-(a) trap exit times with geometric arm lengths,
// bootstrap standard error. Throws stats::insufficient_data_error when the
// tail never leaves the bulk.
TailReport trap_tail_exponent(const ModelParams& p, int n_samples, McOptions opt = {});

// Endpoint law after n steps. annealed: fresh tree per replica, centered by
// v*n, self-standardized. quenched: one tree for every replica, beta must be
// 1, standardized by sqrt(sigma2 * n) with the Einstein variance.
CltReport clt_experiment(const ModelParams& p, std::int64_t n, int replicas, CltMode mode,
                         McOptions opt = {});

struct EinsteinReport {
    EstimateCI sigma2_mc;       // quenched variance of X2/sqrt(n) at beta = 1
    double sigma2_formula = 0.0;
    EstimateCI slope_mc;        // v(1 + eps)/eps by simulation
    double slope_at_eps = 0.0;  // closed-form v(1 + eps)/eps, bias-free reference
    double epsilon = 0.0;
};

EinsteinReport einstein_check(double alpha, std::uint64_t seed, std::int64_t n, int replicas,
                              McOptions opt = {});

struct EscapePoint {
    std::int64_t ray_index = 0;
    std::int64_t column = 0;
    double oracle = 0.0;
    double empirical = 0.0;
    double empirical_se = 0.0;
};

struct EscapeBoundReport {
    double lower_bound = 0.0;  // (beta-1)/(2(beta+1))
    double upper_bound = 0.0;  // (beta-1)/(beta+1)
    double regen_bound = 0.0;  // (beta-1)/(2 beta)
    std::vector<EscapePoint> ray_points;
    std::vector<EscapePoint> boundary_points;  // never-return past a missing edge
};

// Oracle and empirical never-return probabilities on sampled windows, for
// random ray positions and for block boundaries.
EscapeBoundReport escape_bound_check(const ModelParams& p, int n_windows, int points_per_window,
                                     int replicas_per_point, McOptions opt = {});

// Ergodic ray statistics over a freshly sampled window of n_blocks blocks:
// column advance per ray index and mean holding time (trap size + 1).
struct RayStatsReport {
    double ray_ratio = 0.0;
    double holding_mean = 0.0;
    std::int64_t blocks = 0;
};
RayStatsReport measure_ray_statistics(double alpha, std::uint64_t seed, int n_blocks);

}  // namespace ladderwalk::mc
