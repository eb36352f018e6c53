#pragma once

// Closed-form quantities of the ladder spanning-tree walk: critical biases,
// speed, trap exit times, block probabilities, diffusivity. Everything here
// is a pure function of (alpha, beta); the Monte Carlo harness treats these
// values as ground truth.

#include <cstdint>
#include <optional>
#include <utility>

#include "ladderwalk/common.hpp"

namespace ladderwalk::closed_form {

// A nonnegative quantity that may diverge. Kept as a tagged value so +inf
// never enters arithmetic by accident; callers branch on `infinite`.
struct ExtReal {
    double value = 0.0;
    bool infinite = false;

    static ExtReal of(double v) { return {v, false}; }
    static ExtReal inf() { return {0.0, true}; }
};

// Full experiment configuration. Exactly one of {c, alpha} is given by the
// user; the other is derived.
struct ModelParams {
    double c = 1.0;       // vertical edge weight
    double alpha = 0.0;   // rung-gap geometric parameter, in (0,1)
    double beta = 1.0;    // bias, >= 1
    std::uint64_t seed = 0;

    static ModelParams from_c(double c, double beta, std::uint64_t seed);
    static ModelParams from_alpha(double alpha, double beta, std::uint64_t seed);
};

struct CriticalValues {
    double beta_c1 = 0.0;             // 1/alpha, speed vanishes at and above
    double beta_c2 = 0.0;             // 1/sqrt(alpha), second moments below
    std::optional<double> rho;        // -log(alpha)/log(beta), beta > 1 only
};

struct SpeedBreakdown {
    ExtReal s_plus;       // E[beta^F], diverges once alpha*beta >= 1
    double s_minus = 0.0; // E[beta^-F]
    ExtReal big_c;        // mean conductance weight left of a fresh boundary
    double v_uniform = 0.0;
    ExtReal e_tau1;       // mean time per unit ray column
    double v = 0.0;
};

struct RayStatistics {
    double ray_ratio = 0.0;     // columns advanced per ray index
    double holding_mean = 0.0;  // mean holding time of the unbiased time change
};

struct SmallAlphaLimits {
    double v_limit = 0.0;
    double dv_dalpha_limit = 0.0;
};

double alpha_from_c(double c);
double c_from_alpha(double alpha);

CriticalValues critical_values(double alpha, std::optional<double> beta = std::nullopt);

// (s_plus, s_minus); s_plus is the divergent one.
std::pair<ExtReal, double> s_bounds(double alpha, double beta);

// Mean total conductance weight strictly left of a fresh block boundary,
// normalized to that boundary. Requires beta > 1. Evaluated through both
// algebraic forms and cross-checked internally.
double weight_sum_c(double alpha, double beta);

// Mean time spent in a single trap before the first step back on the ray
// (that step excluded). kind a uses k >= 1, kind b uses l >= 1, kind c both
// arms >= 0.
double trap_mean_time(TrapKind kind, double beta, int k, int l);

// Trap time averaged over geometric arm lengths; finite for beta < 1/alpha.
double mean_trap_time_avg(double alpha, double beta);

// Speed of the simplified model whose ray is a single straight row.
double speed_uniform(double alpha, double beta);

// Asymptotic speed and its ingredients. v = 0 for beta = 1 and beta >= 1/alpha.
// Internally evaluates 1/v through two independent routes and insists they
// agree to 1e-10 relative.
SpeedBreakdown speed(double alpha, double beta);

// Probability of the origin-block event (F'0 = a, F0 = b, V0 = -k, |W1-W0| = sigma).
double block_probability(double alpha, int a, int b, int k, int sigma);

// Diffusivity of the unbiased walk; equals twice the slope of the speed at
// beta = 1 (Einstein relation).
double einstein_sigma2(double alpha);

RayStatistics ray_statistics(double alpha);

SmallAlphaLimits small_alpha_limits(double beta);

// Per-case contributions to the conditional passage time over one column,
// given the origin-block event (a, b, k, sigma). Valid for beta > 1.
double f1_term(double alpha, double beta, int a, int k);
double f2_term(double alpha, double beta, int a, int b, int k);
double f3_term(double alpha, double beta, int a, int b);
double tau1_conditional(double alpha, double beta, int a, int b, int k, int sigma);

// The speed formula evaluated as an analytic expression on (alpha, 1/alpha)
// excluding beta = 1; negative for beta < 1. Used by derivative checks
// straddling beta = 1.
double speed_continued(double alpha, double beta);

}  // namespace ladderwalk::closed_form
