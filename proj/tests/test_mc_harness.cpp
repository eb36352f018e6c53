#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ladderwalk/closed_form.hpp"
#include "ladderwalk/mc.hpp"
#include "ladderwalk/stats.hpp"

using namespace ladderwalk;
namespace cf = ladderwalk::closed_form;

namespace {
const double kAlphaC1 = cf::alpha_from_c(1.0);
}

TEST_CASE("speed estimate against the formula") {
    SUBCASE("ballistic point") {
        const auto p = cf::ModelParams::from_alpha(kAlphaC1, 2.0, 81001);
        const auto est = mc::estimate_speed(p, 50'000, 240, {});
        const double v = cf::speed(kAlphaC1, 2.0).v;
        CHECK(est.capped_fraction == 0.0);
        CHECK(std::abs(est.point - v) <= 3.0 * est.std_error);
    }
    SUBCASE("unbiased walk has no drift") {
        const auto p = cf::ModelParams::from_alpha(kAlphaC1, 1.0, 81002);
        const auto est = mc::estimate_speed(p, 20'000, 200, {});
        CHECK(std::abs(est.point) <= 3.0 * est.std_error);
    }
    SUBCASE("deep-trap regime crawls") {
        // above beta_c1 the limit speed is zero; at a finite horizon the
        // estimate is a small positive remnant that shrinks with the horizon
        const auto zero = mc::estimate_speed(
            cf::ModelParams::from_alpha(0.8, 1.05 / 0.8, 81003), 50'000, 60, {});
        CHECK(zero.point > 0.0);
        CHECK(zero.point < 0.03);
        CHECK(zero.std_error < 0.005);
        const auto longer = mc::estimate_speed(
            cf::ModelParams::from_alpha(0.8, 1.05 / 0.8, 81003), 200'000, 60, {});
        CHECK(longer.point < zero.point);
    }
    SUBCASE("straight-ray tree matches its own closed form") {
        const auto p = cf::ModelParams::from_alpha(0.5, 1.5, 81004);
        const auto est = mc::estimate_speed_uniform_tree(p, 50'000, 240, {});
        CHECK(std::abs(est.point - cf::speed_uniform(0.5, 1.5)) <= 3.0 * est.std_error);
    }
    SUBCASE("deterministic and independent of the job count") {
        const auto p = cf::ModelParams::from_alpha(0.5, 1.5, 81005);
        const auto a = mc::estimate_speed(p, 10'000, 24, {1});
        const auto b = mc::estimate_speed(p, 10'000, 24, {2});
        const auto c = mc::estimate_speed(p, 10'000, 24, {0});
        CHECK(a.point == b.point);
        CHECK(a.std_error == b.std_error);
        CHECK(a.point == c.point);
    }
}

TEST_CASE("conditional passage times by origin event") {
    const double alpha = 0.5;
    const double beta = 1.5;
    const auto p = cf::ModelParams::from_alpha(alpha, beta, 81010);

    SUBCASE("rung ahead of the walker") {
        const auto est = mc::estimate_tau1_conditional(p, 2, 1, -1, 0, 4000);
        CHECK(est.capped_fraction == 0.0);
        CHECK(std::abs(est.point - cf::tau1_conditional(alpha, beta, 2, 1, -1, 0)) <=
              3.0 * est.std_error);
    }
    SUBCASE("rung at the walker, crossing required vs not") {
        const auto through = mc::estimate_tau1_conditional(p, 1, 1, 0, 1, 6000);
        const auto beside = mc::estimate_tau1_conditional(p, 1, 1, 0, 0, 6000);
        const double gap = through.point - beside.point;
        const double se =
            std::sqrt(through.std_error * through.std_error +
                      beside.std_error * beside.std_error);
        CHECK(std::abs(gap - cf::f3_term(alpha, beta, 1, 1)) <= 3.0 * se);
        // each also matches its own case formula
        CHECK(std::abs(through.point - cf::tau1_conditional(alpha, beta, 1, 1, 0, 1)) <=
              3.0 * through.std_error);
        CHECK(std::abs(beside.point - cf::tau1_conditional(alpha, beta, 1, 1, 0, 0)) <=
              3.0 * beside.std_error);
    }
    SUBCASE("rung behind the walker") {
        const auto est = mc::estimate_tau1_conditional(p, 1, 2, 2, 0, 4000);
        CHECK(std::abs(est.point - cf::tau1_conditional(alpha, beta, 1, 2, 2, 0)) <=
              3.0 * est.std_error);
    }
    SUBCASE("unconditional mixture recovers the mean passage time") {
        const auto est = mc::estimate_tau1(p, 8000);
        CHECK(std::abs(est.point - cf::speed(alpha, beta).e_tau1.value) <=
              3.0 * est.std_error);
    }
    SUBCASE("impossible events are rejected") {
        CHECK_THROWS_AS(mc::estimate_tau1_conditional(p, 1, 1, 2, 0, 10),
                        std::domain_error);
    }
}

TEST_CASE("trap tail exponent") {
    SUBCASE("the desk-scale tail window is recognized as bulk") {
        // at (0.5, 1.2) the top-5% threshold of 1e5 samples sits far below
        // the power-law onset scale rho*beta/(beta-1) ~ 23
        const auto p = cf::ModelParams::from_alpha(0.5, 1.2, 81020);
        CHECK_THROWS_AS(mc::trap_tail_exponent(p, 100'000, {}),
                        stats::insufficient_data_error);
    }
    SUBCASE("unbiased traps have no power tail to estimate") {
        const auto p = cf::ModelParams::from_alpha(0.5, 1.0, 81021);
        CHECK_THROWS_AS(mc::trap_tail_exponent(p, 50'000, {}),
                        stats::insufficient_data_error);
    }
    SUBCASE("deep-trap regime yields a finite positive estimate") {
        // at beta near beta_c2 the onset scale is small enough for the
        // window to clear the bulk
        const auto p = cf::ModelParams::from_alpha(0.5, 1.41, 81022);
        const auto rep = mc::trap_tail_exponent(p, 100'000, {});
        CHECK(rep.hill.point > 0.0);
        CHECK(rep.hill.std_error > 0.0);
        CHECK(rep.threshold >= 2.0 * 1.41 / 0.41);  // cleared the onset floor
        CHECK(rep.tail_count == 5000);
    }
    SUBCASE("larger samples reach deeper traps") {
        const auto p = cf::ModelParams::from_alpha(0.5, 1.41, 81023);
        const auto small = mc::trap_tail_exponent(p, 30'000, {});
        const auto large = mc::trap_tail_exponent(p, 120'000, {});
        CHECK(large.threshold >= small.threshold * 0.9);
    }
}

TEST_CASE("endpoint laws") {
    SUBCASE("quenched at beta 1 is normal with the Einstein variance") {
        const auto p = cf::ModelParams::from_alpha(kAlphaC1, 1.0, 81030);
        const auto rep = mc::clt_experiment(p, 20'000, 4000, mc::CltMode::quenched, {});
        CHECK(rep.ks_p_value > 0.01);
        CHECK(rep.sample_variance > 0.9);
        CHECK(rep.sample_variance < 1.1);
        CHECK(rep.endpoints.size() == 4000);
    }
    SUBCASE("annealed below beta_c2 is normal after self-standardization") {
        const auto p = cf::ModelParams::from_alpha(kAlphaC1, 1.5, 81031);
        const auto rep = mc::clt_experiment(p, 20'000, 3000, mc::CltMode::annealed, {});
        CHECK(rep.ks_p_value > 0.01);
        CHECK(std::abs(stats::sample_variance(rep.samples) - 1.0) < 1e-12);
    }
    SUBCASE("diffusive scaling: unscaled endpoint variance doubles with n") {
        const auto p = cf::ModelParams::from_alpha(kAlphaC1, 1.0, 81032);
        const auto a = mc::clt_experiment(p, 20'000, 4000, mc::CltMode::quenched, {});
        const auto b = mc::clt_experiment(p, 40'000, 4000, mc::CltMode::quenched, {});
        const double va = stats::sample_variance(a.endpoints);
        const double vb = stats::sample_variance(b.endpoints);
        CHECK(vb / va == doctest::Approx(2.0).epsilon(0.10));
    }
    SUBCASE("mode and beta must agree") {
        const auto p1 = cf::ModelParams::from_alpha(0.5, 1.5, 81033);
        CHECK_THROWS_AS(mc::clt_experiment(p1, 2000, 200, mc::CltMode::quenched, {}),
                        std::domain_error);
        const auto p2 = cf::ModelParams::from_alpha(0.5, 1.0, 81034);
        CHECK_THROWS_AS(mc::clt_experiment(p2, 2000, 200, mc::CltMode::annealed, {}),
                        std::domain_error);
        // annealed requires beta below beta_c2
        const auto p3 = cf::ModelParams::from_alpha(0.5, 1.6, 81035);
        CHECK_THROWS_AS(mc::clt_experiment(p3, 2000, 200, mc::CltMode::annealed, {}),
                        std::domain_error);
    }
}

TEST_CASE("einstein relation by simulation") {
    const auto rep = mc::einstein_check(kAlphaC1, 81040, 20'000, 3000, {});
    CHECK(std::abs(rep.sigma2_mc.point - rep.sigma2_formula) <= 3.0 * rep.sigma2_mc.std_error);
    // the simulated slope agrees with the closed-form value at the same
    // finite epsilon (the bias-free reference)
    CHECK(std::abs(rep.slope_mc.point - rep.slope_at_eps) <= 3.0 * rep.slope_mc.std_error);
    // and twice the slope is near the diffusivity up to the epsilon bias
    CHECK(2.0 * rep.slope_mc.point == doctest::Approx(rep.sigma2_formula).epsilon(0.15));

    const auto rep9 = mc::einstein_check(0.9, 81041, 20'000, 3000, {});
    CHECK(std::abs(rep9.sigma2_mc.point - 1.9 / 3.9) <= 3.0 * rep9.sigma2_mc.std_error);
}

TEST_CASE("escape bounds on sampled windows") {
    SUBCASE("oracle inside the interval and empirical near the oracle") {
        const auto p = cf::ModelParams::from_alpha(0.5, 2.0, 81050);
        const auto rep = mc::escape_bound_check(p, 6, 5, 3000, {});
        REQUIRE(rep.ray_points.size() == 30);
        for (const auto& pt : rep.ray_points) {
            CHECK(pt.oracle >= rep.lower_bound - 1e-12);
            CHECK(pt.oracle <= rep.upper_bound + 1e-12);
            CHECK(std::abs(pt.empirical - pt.oracle) <= 4.0 * pt.empirical_se);
        }
        for (const auto& pt : rep.boundary_points) {
            CHECK(pt.oracle >= rep.regen_bound - 1e-12);
            CHECK(pt.empirical >= rep.regen_bound - 4.0 * pt.empirical_se);
        }
    }
    SUBCASE("bias near one sends every escape probability to zero") {
        const auto p = cf::ModelParams::from_alpha(0.5, 1.01, 81051);
        const auto rep = mc::escape_bound_check(p, 3, 6, 0, {});
        for (const auto& pt : rep.ray_points) CHECK(pt.oracle < 0.005);
    }
}

TEST_CASE("ergodic ray statistics at scale") {
    for (double alpha : {0.2, 0.5, 0.8}) {
        const auto rep = mc::measure_ray_statistics(alpha, 81060, 100'000);
        const auto want = cf::ray_statistics(alpha);
        CHECK(std::abs(rep.ray_ratio - want.ray_ratio) < 0.01 * want.ray_ratio);
        CHECK(std::abs(rep.holding_mean - want.holding_mean) < 0.01 * want.holding_mean);
    }
}
