#include "ladderwalk/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ladderwalk/oracle.hpp"
#include "ladderwalk/parallel.hpp"
#include "ladderwalk/rng.hpp"
#include "ladderwalk/tree.hpp"
#include "ladderwalk/walk.hpp"

namespace ladderwalk::mc {

namespace {

enum Domain : std::uint64_t {
    kTreeDomain = 1,
    kWalkDomain = 2,
    kTrapDomain = 3,
    kEscapeDomain = 4,
    kBootstrapDomain = 5,
};

std::uint64_t tree_key(std::uint64_t seed, std::uint64_t replica) {
    return rng::derive(rng::derive(seed, kTreeDomain), replica);
}

std::uint64_t walk_key(std::uint64_t seed, std::uint64_t replica) {
    return rng::derive(rng::derive(seed, kWalkDomain), replica);
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

EstimateCI summarize(const std::vector<double>& vals, std::int64_t steps,
                     std::uint64_t seed, double capped_fraction = 0.0) {
    const auto ms = stats::mean_se(vals);
    EstimateCI out;
    out.point = ms.mean;
    out.std_error = ms.se;
    out.replicas = static_cast<int>(vals.size());
    out.steps_per_replica = steps;
    out.seed = seed;
    out.capped_fraction = capped_fraction;
    return out;
}

// One displacement-per-step sample: run `steps` steps on a fresh window and
// discard the first tenth as burn-in.
double speed_sample(std::uint64_t tkey, std::uint64_t wkey, const ModelParams& p,
                    std::int64_t steps, const tree::WindowOptions& wopt) {
    tree::TreeWindow win(tkey, p.alpha, 1, 1, wopt);
    rng::Stream rs(wkey);
    walk::WalkerState st = walk::WalkerState::at(win.ray_start());
    const walk::StepKernel kern(p.beta);
    const std::int64_t burn = steps / 10;
    std::int64_t col_burn = st.pos.col;
    for (std::int64_t i = 0; i < steps; ++i) {
        walk::step(st, win, kern, rs);
        if (st.step_count == burn) col_burn = st.pos.col;
    }
    return static_cast<double>(st.pos.col - col_burn) / static_cast<double>(steps - burn);
}

EstimateCI run_speed(const ModelParams& p, std::int64_t steps, int replicas, McOptions opt,
                     const tree::WindowOptions& wopt) {
    require(steps >= 10'000, "speed estimate needs at least 1e4 steps");
    require(replicas >= 10, "speed estimate needs at least 10 replicas");
    std::vector<double> vals(static_cast<std::size_t>(replicas));
    par::for_each_replica(replicas, opt.jobs, [&](int r) {
        vals[static_cast<std::size_t>(r)] =
            speed_sample(tree_key(p.seed, static_cast<std::uint64_t>(r)),
                         walk_key(p.seed, static_cast<std::uint64_t>(r)), p, steps, wopt);
    });
    return summarize(vals, steps, p.seed);
}

}  // namespace

EstimateCI estimate_speed(const ModelParams& p, std::int64_t steps, int replicas,
                          McOptions opt) {
    return run_speed(p, steps, replicas, opt, {});
}

EstimateCI estimate_speed_uniform_tree(const ModelParams& p, std::int64_t steps, int replicas,
                                       McOptions opt) {
    tree::WindowOptions wopt;
    wopt.force_w = 0;
    return run_speed(p, steps, replicas, opt, wopt);
}

namespace {

EstimateCI run_tau1(const ModelParams& p, int replicas, std::int64_t step_cap, McOptions opt,
                    bool pin, int a, int b, int k, int sigma) {
    require(replicas >= 1, "need at least one replica");
    require(p.beta > 1.0, "passage times to the right need beta > 1");
    std::vector<double> taus(static_cast<std::size_t>(replicas));
    std::vector<std::uint8_t> capped(static_cast<std::size_t>(replicas), 0);
    par::for_each_replica(replicas, opt.jobs, [&](int r) {
        const std::uint64_t tkey = tree_key(p.seed, static_cast<std::uint64_t>(r));
        tree::WindowOptions wopt;
        if (pin) {
            const int w0 = static_cast<int>(
                tree::block_field_u64(tkey, 0, tree::BlockField::w0) & 1ull);
            tree::OriginBlock o;
            o.g0 = a + b + 1;
            o.h0 = -(static_cast<std::int64_t>(k) + a);
            o.f0_prime = a;
            o.w0 = w0;
            wopt.pin_origin = o;
            wopt.pin_w1 = sigma ? 1 - w0 : w0;
        }
        tree::TreeWindow win(tkey, p.alpha, 1, 1, wopt);
        rng::Stream rs(walk_key(p.seed, static_cast<std::uint64_t>(r)));
        walk::WalkerState st = walk::WalkerState::at(win.ray_start());
        const walk::StepKernel kern(p.beta);
        const auto ps = walk::run_passage(st, win, kern, rs, 1, step_cap);
        taus[static_cast<std::size_t>(r)] = static_cast<double>(ps.tau);
        capped[static_cast<std::size_t>(r)] = ps.capped ? 1 : 0;
    });
    std::vector<double> kept;
    kept.reserve(taus.size());
    int n_capped = 0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (capped[i]) {
            ++n_capped;
        } else {
            kept.push_back(taus[i]);
        }
    }
    return summarize(kept, step_cap, p.seed,
                     static_cast<double>(n_capped) / static_cast<double>(replicas));
}

}  // namespace

EstimateCI estimate_tau1_conditional(const ModelParams& p, int a, int b, int k, int sigma,
                                     int replicas, std::int64_t step_cap, McOptions opt) {
    // validates the block event, including -a <= k <= b
    closed_form::block_probability(p.alpha, a, b, k, sigma);
    return run_tau1(p, replicas, step_cap, opt, true, a, b, k, sigma);
}

EstimateCI estimate_tau1(const ModelParams& p, int replicas, std::int64_t step_cap,
                         McOptions opt) {
    return run_tau1(p, replicas, step_cap, opt, false, 0, 0, 0, 0);
}

TailReport trap_tail_exponent(const ModelParams& p, int n_samples, McOptions opt) {
    require(n_samples >= 1000, "tail estimate needs a large sample");
    require(p.beta >= 1.0 && p.alpha * p.beta < 1.0,
            "trap tail sampling needs beta in [1, 1/alpha)");
    std::vector<double> durations(static_cast<std::size_t>(n_samples));
    const std::uint64_t base = rng::derive(p.seed, kTrapDomain);
    par::for_each_replica(n_samples, opt.jobs, [&](int i) {
        rng::Stream s(rng::derive(base, static_cast<std::uint64_t>(i)));
        const int k = rng::sample_geometric(s.next_unit_open(), p.alpha);
        durations[static_cast<std::size_t>(i)] =
            k == 0 ? 0.0
                   : static_cast<double>(walk::simulate_trap_exit(TrapKind::a, k, 0, p.beta, s));
    });

    constexpr double kTopFraction = 0.05;
    // The power tail of the duration mixture only dominates the within-trap
    // noise past the onset scale rho * beta/(beta-1); a Hill threshold below
    // that sits in the bulk and carries no tail information. At beta = 1 the
    // tail is not a power law at all, so the floor is infinite there.
    const double tail_floor =
        p.beta > 1.0
            ? -std::log(p.alpha) / std::log(p.beta) * p.beta / (p.beta - 1.0)
            : std::numeric_limits<double>::infinity();
    const double unfloored =
        stats::hill_tail_index(durations, kTopFraction, 100, 0.0).tail_index;
    const auto hill = stats::hill_tail_index(durations, kTopFraction, 100, tail_floor);
    rng::Stream bs(rng::derive(p.seed, kBootstrapDomain));
    const double se =
        stats::hill_bootstrap_se(durations, kTopFraction, 200, bs, 100, tail_floor);

    TailReport out;
    out.hill.point = hill.tail_index;
    out.hill.std_error = se;
    out.hill.replicas = n_samples;
    out.hill.seed = p.seed;
    out.top_fraction = kTopFraction;
    out.threshold = hill.threshold;
    out.tail_count = static_cast<std::int64_t>(hill.tail_count);
    out.hill_unfloored = unfloored;
    return out;
}

CltReport clt_experiment(const ModelParams& p, std::int64_t n, int replicas, CltMode mode,
                         McOptions opt) {
    require(n >= 1000, "endpoint law needs a reasonable horizon");
    require(replicas >= 100, "endpoint law needs many replicas");
    CltReport out;
    out.mode = mode;

    std::vector<double> endpoints(static_cast<std::size_t>(replicas));
    const bool quenched = mode == CltMode::quenched;
    if (quenched) {
        require(p.beta == 1.0, "the quenched experiment runs at beta = 1");
    } else {
        const auto cv = closed_form::critical_values(p.alpha);
        require(p.beta > 1.0 && p.beta < cv.beta_c2,
                "the annealed experiment needs beta in (1, beta_c2)");
    }
    par::for_each_replica(replicas, opt.jobs, [&](int r) {
        const std::uint64_t tkey =
            tree_key(p.seed, quenched ? 0ull : static_cast<std::uint64_t>(r));
        tree::TreeWindow win(tkey, p.alpha, 1, 1);
        rng::Stream rs(walk_key(p.seed, static_cast<std::uint64_t>(r)));
        walk::WalkerState st = walk::WalkerState::at(win.ray_start());
        const walk::StepKernel kern(p.beta);
        for (std::int64_t i = 0; i < n; ++i) walk::step(st, win, kern, rs);
        endpoints[static_cast<std::size_t>(r)] = static_cast<double>(st.pos.col);
    });

    out.endpoints = endpoints;
    const double sn = std::sqrt(static_cast<double>(n));
    if (quenched) {
        const double sigma2 = closed_form::einstein_sigma2(p.alpha);
        const double scale = std::sqrt(sigma2) * sn;
        out.samples.resize(endpoints.size());
        for (std::size_t i = 0; i < endpoints.size(); ++i) {
            out.samples[i] = endpoints[i] / scale;
        }
    } else {
        const double v = closed_form::speed(p.alpha, p.beta).v;
        std::vector<double> centered(endpoints.size());
        for (std::size_t i = 0; i < endpoints.size(); ++i) {
            centered[i] = (endpoints[i] - v * static_cast<double>(n)) / sn;
        }
        const double sd = std::sqrt(stats::sample_variance(centered));
        out.samples.resize(centered.size());
        for (std::size_t i = 0; i < centered.size(); ++i) out.samples[i] = centered[i] / sd;
    }
    out.sample_variance = stats::sample_variance(out.samples);
    out.ks_statistic = stats::ks_statistic_normal(out.samples);
    out.ks_p_value = stats::ks_p_value(out.ks_statistic, out.samples.size());
    return out;
}

EinsteinReport einstein_check(double alpha, std::uint64_t seed, std::int64_t n, int replicas,
                              McOptions opt) {
    require(n >= 10'000, "einstein check needs a reasonable horizon");
    EinsteinReport out;
    out.epsilon = 0.05;
    out.sigma2_formula = closed_form::einstein_sigma2(alpha);

    const ModelParams p1 = ModelParams::from_alpha(alpha, 1.0, seed);
    std::vector<double> scaled(static_cast<std::size_t>(replicas));
    const double sn = std::sqrt(static_cast<double>(n));
    par::for_each_replica(replicas, opt.jobs, [&](int r) {
        tree::TreeWindow win(tree_key(p1.seed, 0), p1.alpha, 1, 1);
        rng::Stream rs(walk_key(p1.seed, static_cast<std::uint64_t>(r)));
        walk::WalkerState st = walk::WalkerState::at(win.ray_start());
        const walk::StepKernel kern(1.0);
        for (std::int64_t i = 0; i < n; ++i) walk::step(st, win, kern, rs);
        scaled[static_cast<std::size_t>(r)] = static_cast<double>(st.pos.col) / sn;
    });
    out.sigma2_mc.point = stats::sample_variance(scaled);
    out.sigma2_mc.std_error = stats::variance_se(scaled);
    out.sigma2_mc.replicas = replicas;
    out.sigma2_mc.steps_per_replica = n;
    out.sigma2_mc.seed = seed;

    const double beta_eps = 1.0 + out.epsilon;
    const ModelParams p2 = ModelParams::from_alpha(alpha, beta_eps, seed);
    const EstimateCI v_eps = estimate_speed(p2, n, replicas, opt);
    out.slope_mc = v_eps;
    out.slope_mc.point = v_eps.point / out.epsilon;
    out.slope_mc.std_error = v_eps.std_error / out.epsilon;
    out.slope_at_eps = closed_form::speed(alpha, beta_eps).v / out.epsilon;
    return out;
}

namespace {

// Empirical never-return frequency for the ray walk started at `start` on
// the fixed tree `proto` (copied per replica so extensions stay private).
// `forbidden` is the vertex whose first visit counts as a return; when it is
// the start vertex itself, visits only count after the walk has first moved
// to another ray vertex (trap excursions from the start do not count).
double never_return_frequency(const ModelParams& p, const tree::TreeWindow& proto,
                              std::uint64_t key, const Vertex& start,
                              const Vertex& forbidden, std::int64_t escape_col, int replicas,
                              int jobs) {
    std::vector<double> esc(static_cast<std::size_t>(replicas));
    par::for_each_replica(replicas, jobs, [&](int r) {
        tree::TreeWindow win = proto;
        rng::Stream rs(rng::derive(rng::derive(key, kWalkDomain), static_cast<std::uint64_t>(r)));
        walk::WalkerState st = walk::WalkerState::at(start);
        const walk::StepKernel kern(p.beta);
        const bool self = forbidden == start;
        bool armed = !self;  // self-escape arms after the first ray move away
        double escaped = 0.0;
        for (std::int64_t i = 0; i < 10'000'000; ++i) {
            walk::step(st, win, kern, rs);
            walk::ensure_margin(win, st.pos.col);
            const bool onray = win.on_ray(st.pos.row, st.pos.col);
            if (!armed) {
                if (onray && !(st.pos == start)) armed = true;
                continue;
            }
            if (st.pos == forbidden) break;
            if (onray && st.pos.col >= escape_col) {
                escaped = 1.0;
                break;
            }
        }
        esc[static_cast<std::size_t>(r)] = escaped;
    });
    double s = 0.0;
    for (double e : esc) s += e;
    return s / static_cast<double>(replicas);
}

}  // namespace

EscapeBoundReport escape_bound_check(const ModelParams& p, int n_windows, int points_per_window,
                                     int replicas_per_point, McOptions opt) {
    require(p.beta > 1.0, "escape bounds need beta > 1");
    EscapeBoundReport out;
    out.lower_bound = 0.5 * (p.beta - 1.0) / (p.beta + 1.0);
    out.upper_bound = (p.beta - 1.0) / (p.beta + 1.0);
    out.regen_bound = (p.beta - 1.0) / (2.0 * p.beta);

    const std::int64_t advance =
        std::max<std::int64_t>(45, static_cast<std::int64_t>(30.0 / std::log(p.beta)));
    // enough blocks to truncate the effective resistance at rel_tol = 1e-9
    // even in the worst all-rung geometry (every block spans >= 1 column)
    const int blocks_right = std::max(
        600, static_cast<int>(std::log(3.0e10 / (p.beta - 1.0)) / std::log(p.beta)) + 200);
    const std::uint64_t base = rng::derive(p.seed, kEscapeDomain);
    for (int wi = 0; wi < n_windows; ++wi) {
        const std::uint64_t key = rng::derive(base, static_cast<std::uint64_t>(wi));
        tree::TreeWindow win(key, p.alpha, 60, blocks_right);
        const tree::RayEnumeration ray = ray_of(win);
        rng::Stream pick(rng::derive(key, 7));

        // random ray positions with a little room on both sides
        std::int64_t i_min = 0;
        while (i_min < ray.i_hi() && ray.col(i_min) < 2) ++i_min;
        std::int64_t i_max = i_min;
        while (i_max + 2 < ray.i_hi() && ray.col(i_max) < 60) ++i_max;
        for (int q = 0; q < points_per_window; ++q) {
            const std::int64_t j =
                i_min + static_cast<std::int64_t>(pick.next_below(
                            static_cast<std::uint64_t>(i_max - i_min + 1)));
            EscapePoint pt;
            pt.ray_index = j;
            pt.column = ray.col(j);
            pt.oracle = oracle::escape_probability(ray, j, p.beta, 1e-9);
            if (replicas_per_point > 0) {
                const Vertex start = ray.at(j);
                pt.empirical = never_return_frequency(
                    p, win, rng::derive(key, 1000 + static_cast<std::uint64_t>(q)), start, start,
                    ray.col(j) + advance, replicas_per_point, opt.jobs);
                pt.empirical_se = std::sqrt(std::max(pt.oracle * (1.0 - pt.oracle), 1e-12) /
                                            replicas_per_point);
            }
            out.ray_points.push_back(pt);
        }

        // block boundaries: never stepping back across the missing edge
        for (std::int64_t n = 1; n <= std::min<std::int64_t>(2, win.n_right() - 2); ++n) {
            const Vertex bv{1 - win.w(n), win.h(n)};
            EscapePoint pt;
            pt.column = bv.col;
            const auto j = ray.index_of(bv);
            if (!j.has_value()) continue;
            pt.ray_index = *j;
            pt.oracle = oracle::regeneration_escape_probability(ray, bv, p.beta, 1e-9);
            if (replicas_per_point > 0) {
                const Vertex forbidden{bv.row, bv.col - 1};
                pt.empirical = never_return_frequency(
                    p, win, rng::derive(key, 5000 + static_cast<std::uint64_t>(n)), bv, forbidden,
                    bv.col + advance, replicas_per_point, opt.jobs);
                pt.empirical_se = std::sqrt(std::max(pt.oracle * (1.0 - pt.oracle), 1e-12) /
                                            replicas_per_point);
            }
            out.boundary_points.push_back(pt);
        }
    }
    return out;
}

RayStatsReport measure_ray_statistics(double alpha, std::uint64_t seed, int n_blocks) {
    require(n_blocks >= 10, "ray statistics need a few blocks");
    tree::TreeWindow win(tree_key(seed, 0), alpha, 1, n_blocks + 1);
    const tree::RayEnumeration ray = ray_of(win);
    const std::int64_t i_top = ray.i_hi() - 1;

    RayStatsReport out;
    out.blocks = n_blocks;
    out.ray_ratio = static_cast<double>(ray.col(i_top)) / static_cast<double>(i_top);

    // mean holding time = 1 + (trap edges anchored at phi(i)), averaged over i
    double total = static_cast<double>(i_top + 1);
    for (const auto& t : tree::traps_of(win)) {
        const auto j = ray.index_of(t.anchor);
        if (!j.has_value() || *j < 0 || *j > i_top) continue;
        const int edges = t.k + t.l + (t.kind == TrapKind::c ? 1 : 0);
        total += static_cast<double>(edges);
    }
    out.holding_mean = total / static_cast<double>(i_top + 1);
    return out;
}

}  // namespace ladderwalk::mc
