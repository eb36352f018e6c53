#include "ladderwalk/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace ladderwalk::closed_form {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

bool finite_positive(double x) {
    return std::isfinite(x) && x > 0.0;
}

// s_plus - s_minus without cancellation; the (beta^2 - 1) factor keeps the
// difference exact through beta -> 1.
double s_gap(double alpha, double beta) {
    return alpha * (1.0 - alpha) * (beta * beta - 1.0) /
           ((1.0 - alpha * beta) * (beta - alpha));
}

double s_minus_of(double alpha, double beta) {
    return (1.0 - alpha) * beta / (beta - alpha);
}

// Rational form of the left-weight sum; also its analytic continuation to
// beta < 1, where the series no longer converges but the formula still does.
double big_c_formula(double alpha, double beta) {
    return 2.0 * beta / (beta - 1.0) - (beta - alpha) / (beta - alpha * alpha);
}

// 1/v as the direct formula: base drift term plus the block-averaged
// slowdown (trap passages and rung crossings).
double inv_speed_direct(double alpha, double beta) {
    const double q = (1.0 - alpha) / (1.0 + alpha);
    const double sm = s_minus_of(alpha, beta);
    const double gap = s_gap(alpha, beta);
    const double c = big_c_formula(alpha, beta);
    const double bm1 = beta - 1.0;
    return (beta + 1.0) / bm1 +
           q * ((beta + 3.0) / (2.0 * bm1) +
                beta * (beta + 1.0) / (bm1 * bm1) * gap + c * sm);
}

// 1/v as mean passage time: the straight-ray value plus the correction for
// crossing an in-ray rung.
double inv_speed_tau_route(double alpha, double beta) {
    const double q = (1.0 - alpha) / (1.0 + alpha);
    const double sm = s_minus_of(alpha, beta);
    const double sp = (1.0 - alpha) / (1.0 - alpha * beta);
    const double c = weight_sum_c(alpha, beta);
    const double bm1 = beta - 1.0;
    const double inv_vu =
        (beta + 1.0) / bm1 * (1.0 + q * mean_trap_time_avg(alpha, beta));
    return inv_vu +
           0.5 * q * (1.0 + 2.0 * (c - beta / bm1) * sm + 2.0 * beta / bm1 * sp);
}

}  // namespace

ModelParams ModelParams::from_c(double c, double beta, std::uint64_t seed) {
    require(finite_positive(c), "c must be positive and finite");
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    return {c, alpha_from_c(c), beta, seed};
}

ModelParams ModelParams::from_alpha(double alpha, double beta, std::uint64_t seed) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    return {c_from_alpha(alpha), alpha, beta, seed};
}

double alpha_from_c(double c) {
    require(finite_positive(c), "c must be positive and finite");
    // c + 1 - sqrt(c^2 + 2c), rationalized so large c does not cancel
    return 1.0 / (c + 1.0 + std::sqrt(c * (c + 2.0)));
}

double c_from_alpha(double alpha) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    // alpha is a root of a^2 - 2(c+1)a + 1 = 0
    return (1.0 - alpha) * (1.0 - alpha) / (2.0 * alpha);
}

CriticalValues critical_values(double alpha, std::optional<double> beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    CriticalValues cv;
    cv.beta_c1 = 1.0 / alpha;
    cv.beta_c2 = 1.0 / std::sqrt(alpha);
    if (beta.has_value()) {
        require(std::isfinite(*beta) && *beta > 1.0, "rho requires beta > 1");
        cv.rho = -std::log(alpha) / std::log(*beta);
    }
    return cv;
}

std::pair<ExtReal, double> s_bounds(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    const double sm = s_minus_of(alpha, beta);
    if (alpha * beta >= 1.0) return {ExtReal::inf(), sm};
    return {ExtReal::of((1.0 - alpha) / (1.0 - alpha * beta)), sm};
}

double weight_sum_c(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(std::isfinite(beta) && beta > 1.0, "weight sum diverges for beta <= 1");
    const double direct = 2.0 * beta / (beta - 1.0) - (beta - alpha) / (beta - alpha * alpha);
    const double sm = s_minus_of(alpha, beta);
    const double via_sm =
        2.0 * beta / (beta - 1.0) - (1.0 - sm / beta) / (1.0 - sm * sm / beta);
    if (std::abs(direct - via_sm) > 1e-12 * std::abs(direct)) {
        throw std::logic_error("weight_sum_c: algebraic forms disagree");
    }
    return direct;
}

double trap_mean_time(TrapKind kind, double beta, int k, int l) {
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    require(k >= 0 && l >= 0, "arm lengths must be nonnegative");
    const double lb = std::log(beta);
    switch (kind) {
        case TrapKind::a:
            require(k >= 1, "type-a trap needs k >= 1");
            if (beta == 1.0) return static_cast<double>(k);
            return beta * std::expm1(k * lb) / (beta - 1.0);
        case TrapKind::b:
            require(l >= 1, "type-b trap needs l >= 1");
            if (beta == 1.0) return static_cast<double>(l);
            return 2.0 * beta / (beta + 1.0) * (-std::expm1(-l * lb)) / (beta - 1.0);
        default:
            if (beta == 1.0) return static_cast<double>(k + l + 1);
            return 2.0 / (1.0 + beta) *
                   (1.0 + beta / (beta - 1.0) * (std::expm1(k * lb) - std::expm1(-l * lb)));
    }
}

double mean_trap_time_avg(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(std::isfinite(beta) && beta >= 1.0 && alpha * beta < 1.0,
            "mean trap time diverges for beta >= 1/alpha");
    // (2/(b+1)) (1 + b/(b-1) (s+ - s-)); the (b-1) pole cancels against the
    // gap's (b^2-1) factor, leaving a form that is smooth through beta = 1.
    return 2.0 / (beta + 1.0) +
           2.0 * alpha * beta * (1.0 - alpha) / ((1.0 - alpha * beta) * (beta - alpha));
}

double speed_uniform(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    if (beta == 1.0 || alpha * beta >= 1.0) return 0.0;
    const double p = (1.0 - alpha) / (1.0 + alpha);
    return (beta - 1.0) / (beta + 1.0) / (1.0 + p * mean_trap_time_avg(alpha, beta));
}

SpeedBreakdown speed(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    SpeedBreakdown out;
    auto [sp, sm] = s_bounds(alpha, beta);
    out.s_plus = sp;
    out.s_minus = sm;
    out.big_c = beta > 1.0 ? ExtReal::of(weight_sum_c(alpha, beta)) : ExtReal::inf();
    out.v_uniform = speed_uniform(alpha, beta);
    if (beta == 1.0 || alpha * beta >= 1.0) {
        out.e_tau1 = ExtReal::inf();
        out.v = 0.0;
        return out;
    }
    const double inv_direct = inv_speed_direct(alpha, beta);
    const double inv_tau = inv_speed_tau_route(alpha, beta);
    if (std::abs(inv_direct - inv_tau) > 1e-10 * std::abs(inv_direct)) {
        throw std::logic_error("speed: passage-time route disagrees with direct formula");
    }
    out.e_tau1 = ExtReal::of(inv_tau);
    out.v = 1.0 / inv_direct;
    return out;
}

double block_probability(double alpha, int a, int b, int k, int sigma) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(a >= 0 && b >= 0, "arm lengths must be nonnegative");
    require(sigma == 0 || sigma == 1, "sigma must be 0 or 1");
    require(-a <= k && k <= b, "rung offset k must lie in [-a, b]");
    const double q = (1.0 - alpha) / (1.0 + alpha);
    return 0.5 * q * (1.0 - alpha) * (1.0 - alpha) * std::pow(alpha, a + b);
}

double einstein_sigma2(double alpha) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    return (1.0 + alpha) / (3.0 + alpha);
}

RayStatistics ray_statistics(double alpha) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    const double r = 2.0 * (1.0 + alpha) / (3.0 + alpha);
    return {r, 2.0 * r};
}

SmallAlphaLimits small_alpha_limits(double beta) {
    require(std::isfinite(beta) && beta > 1.0, "beta must be > 1");
    const double den = 5.0 * beta + 7.0;
    return {2.0 * (beta - 1.0) / den,
            4.0 * (beta - 1.0) * (beta + 1.0) * (3.0 - beta) / (den * den)};
}

double f1_term(double alpha, double beta, int a, int k) {
    require(a >= 0 && k >= -a, "invalid block event");
    const double c = weight_sum_c(alpha, beta);
    return 2.0 * (c / beta - 1.0 / (beta - 1.0)) * std::pow(beta, -(a + k));
}

double f2_term(double alpha, double beta, int a, int b, int k) {
    require(a >= 0 && b >= 0 && k >= 0 && k <= b, "invalid block event");
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(beta > 1.0, "beta must be > 1");
    return 2.0 * std::pow(beta, -k) *
           (1.0 / beta + (std::pow(beta, b) - std::pow(beta, -a)) / (beta - 1.0));
}

double f3_term(double alpha, double beta, int a, int b) {
    require(a >= 0 && b >= 0, "invalid block event");
    const double c = weight_sum_c(alpha, beta);
    return 1.0 + 2.0 * (c - beta / (beta - 1.0)) * std::pow(beta, -a) +
           2.0 * beta / (beta - 1.0) * std::pow(beta, b);
}

double tau1_conditional(double alpha, double beta, int a, int b, int k, int sigma) {
    require(std::isfinite(beta) && beta > 1.0, "beta must be > 1");
    require(a >= 0 && b >= 0, "arm lengths must be nonnegative");
    require(sigma == 0 || sigma == 1, "sigma must be 0 or 1");
    require(-a <= k && k <= b, "rung offset k must lie in [-a, b]");
    double t = (beta + 1.0) / (beta - 1.0) + f1_term(alpha, beta, a, k);
    if (k >= 0) t += f2_term(alpha, beta, a, b, k);
    if (k == 0 && sigma == 1) t += f3_term(alpha, beta, a, b);
    return t;
}

double speed_continued(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(std::isfinite(beta) && beta != 1.0 && beta > alpha && alpha * beta < 1.0,
            "continuation valid on (alpha, 1/alpha) away from beta = 1");
    return 1.0 / inv_speed_direct(alpha, beta);
}

}  // namespace ladderwalk::closed_form
