#include "ladderwalk/cli_app.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ladderwalk/closed_form.hpp"
#include "ladderwalk/mc.hpp"
#include "ladderwalk/oracle.hpp"
#include "ladderwalk/rng.hpp"
#include "ladderwalk/stats.hpp"
#include "ladderwalk/tree.hpp"
#include "ladderwalk/walk.hpp"

namespace ladderwalk::cli {

namespace {

namespace cf = ladderwalk::closed_form;
using nlohmann::json;

// All floating output is fixed at 12 significant digits so files reproduce
// byte-for-byte across platforms.
std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round12(double x) {
    return std::strtod(fmt12(x).c_str(), nullptr);
}

struct CommonArgs {
    std::optional<double> c;
    std::optional<double> alpha;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
    std::string format = "csv";
    int jobs = 0;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LADDERWALK_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 12345;
}

double resolve_alpha(const CommonArgs& a) {
    if (a.c.has_value()) return cf::alpha_from_c(*a.c);
    if (a.alpha.has_value()) {
        if (!(*a.alpha > 0.0 && *a.alpha < 1.0)) {
            throw CLI::ValidationError("--alpha", "alpha must be in (0,1)");
        }
        return *a.alpha;
    }
    throw CLI::RequiredError("--c or --alpha");
}

// temp file + rename; empty path writes to stdout
void write_atomic(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open output path: " + path);
        os << content;
        if (!os.good()) throw std::runtime_error("write failed: " + path);
    }
    fs::rename(tmp, target);
}

std::string header_comment(const std::string& command,
                           const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream os;
    os << "# ladderwalk " << kVersion << "\n";
    os << "# command: " << command << "\n";
    for (const auto& [k, v] : kv) os << "# " << k << ": " << v << "\n";
    return os.str();
}

json meta_json(const std::string& command,
               const std::vector<std::pair<std::string, std::string>>& kv) {
    json m;
    m["version"] = kVersion;
    m["command"] = command;
    for (const auto& [k, v] : kv) m[k] = v;
    return m;
}

struct VerifyCheck {
    std::string name;
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

VerifyCheck make_check(std::string name, double expected, double observed, double tol) {
    VerifyCheck c;
    c.name = std::move(name);
    c.expected = expected;
    c.observed = observed;
    c.tolerance = tol;
    c.pass = std::abs(observed - expected) <= tol;
    return c;
}

std::vector<VerifyCheck> run_verify_checks(double alpha, double beta, std::uint64_t seed,
                                           bool quick, int jobs) {
    std::vector<VerifyCheck> checks;
    const auto cv = cf::critical_values(alpha);

    checks.push_back(make_check("alpha_c_roundtrip", alpha,
                                cf::alpha_from_c(cf::c_from_alpha(alpha)), 1e-12));
    checks.push_back(make_check("critical_order", 1.0,
                                (1.0 < cv.beta_c2 && cv.beta_c2 < cv.beta_c1) ? 1.0 : 0.0,
                                0.0));

    {  // two routes to 1/v across random parameters
        rng::Stream s(rng::derive(seed, 101));
        double worst = 0.0;
        const int n = quick ? 50 : 500;
        for (int i = 0; i < n; ++i) {
            const double a = 0.02 + 0.93 * s.next_unit();
            const double b = 1.0 + (0.999 / a - 1.0) * std::pow(s.next_unit_open(), 2.0);
            if (b <= 1.0 || a * b >= 1.0) continue;
            const auto sp = cf::speed(a, b);
            worst = std::max(worst, std::abs(sp.e_tau1.value - 1.0 / sp.v) /
                                        std::abs(sp.e_tau1.value));
        }
        checks.push_back(make_check("speed_dual_route_rel", 0.0, worst, 1e-10));
    }

    {  // trap closed forms vs linear solves
        double worst = 0.0;
        const int arm_max = quick ? 6 : 12;
        for (double b : {1.0, 1.1, 1.5, 2.0, 3.0}) {
            for (int k = 1; k <= arm_max; ++k) {
                const double f = cf::trap_mean_time(TrapKind::a, b, k, 0);
                const double o = oracle::trap_gadget_mean_time(TrapKind::a, k, 0, b);
                worst = std::max(worst, std::abs(f - o) / std::max(1.0, std::abs(f)));
            }
            for (int l = 1; l <= arm_max; ++l) {
                const double f = cf::trap_mean_time(TrapKind::b, b, 0, l);
                const double o = oracle::trap_gadget_mean_time(TrapKind::b, 0, l, b);
                worst = std::max(worst, std::abs(f - o) / std::max(1.0, std::abs(f)));
            }
            for (int k = 0; k <= arm_max; k += 2) {
                for (int l = 0; l <= arm_max; l += 2) {
                    const double f = cf::trap_mean_time(TrapKind::c, b, k, l);
                    const double o = oracle::trap_gadget_mean_time(TrapKind::c, k, l, b);
                    worst = std::max(worst, std::abs(f - o) / std::max(1.0, std::abs(f)));
                }
            }
        }
        checks.push_back(make_check("trap_time_formula_vs_solve", 0.0, worst, 1e-9));
    }

    {  // block probability total mass
        const int arm_hi = std::max(60, static_cast<int>(std::ceil(-30.0 / std::log(alpha))));
        double total = 0.0;
        for (int a = 0; a <= arm_hi; ++a) {
            for (int b = 0; b <= arm_hi; ++b) {
                total += 2.0 * (a + b + 1) * cf::block_probability(alpha, a, b, 0, 0);
            }
        }
        checks.push_back(make_check("block_probability_mass", 1.0, total, 1e-10));
    }

    if (alpha * beta < 1.0 && beta > 1.0) {  // geometric series for s+ and s-
        double sp = 0.0;
        double sm = 0.0;
        double w = 1.0 - alpha;
        for (int k = 0; k <= 2000; ++k) {
            sp += w * std::pow(beta, k);
            sm += w * std::pow(beta, -k);
            w *= alpha;
        }
        const auto [sp_cf, sm_cf] = cf::s_bounds(alpha, beta);
        checks.push_back(make_check("s_plus_series", sp, sp_cf.value, 1e-9 * sp));
        checks.push_back(make_check("s_minus_series", sm, sm_cf, 1e-9));
    }

    {  // Einstein relation against a numerical slope
        const double eps = 1e-5;
        const double slope =
            (cf::speed_continued(alpha, 1.0 + eps) - cf::speed_continued(alpha, 1.0 - eps)) /
            (2.0 * eps);
        checks.push_back(make_check("einstein_vs_slope", cf::einstein_sigma2(alpha),
                                    2.0 * slope, 1e-6 * cf::einstein_sigma2(alpha)));
    }

    {  // ergodic ray statistics on a sampled window
        const auto rs = mc::measure_ray_statistics(alpha, seed, quick ? 20'000 : 100'000);
        const auto want = cf::ray_statistics(alpha);
        checks.push_back(make_check("ray_ratio", want.ray_ratio, rs.ray_ratio,
                                    0.015 * want.ray_ratio));
        checks.push_back(make_check("holding_mean", want.holding_mean, rs.holding_mean,
                                    0.015 * want.holding_mean));
    }

    // Monte Carlo speed against the formula. Close to and beyond the
    // ballistic threshold the finite-time estimate decays only slowly toward
    // its limit, so the comparison is made where it is sharp.
    if (beta == 1.0 || alpha * beta <= 0.9) {
        const auto p = cf::ModelParams::from_alpha(alpha, beta, seed);
        const std::int64_t steps = quick ? 20'000 : 100'000;
        const int reps = quick ? 60 : 300;
        const auto est = mc::estimate_speed(p, steps, reps, {jobs});
        const double v = cf::speed(alpha, beta).v;
        checks.push_back(make_check("speed_mc_vs_formula", v, est.point,
                                    4.0 * est.std_error + (beta == 1.0 ? 1e-4 : 0.0)));
    }

    if (beta > 1.0) {  // oracle escape probabilities inside the bounds
        const auto rep = mc::escape_bound_check(cf::ModelParams::from_alpha(alpha, beta, seed),
                                                quick ? 4 : 12, 8, 0, {jobs});
        int violations = 0;
        for (const auto& pt : rep.ray_points) {
            if (pt.oracle < rep.lower_bound - 1e-12 || pt.oracle > rep.upper_bound + 1e-12) {
                ++violations;
            }
        }
        for (const auto& pt : rep.boundary_points) {
            if (pt.oracle < rep.regen_bound - 1e-12) ++violations;
        }
        checks.push_back(make_check("escape_bounds_oracle", 0.0, violations, 0.0));
    }

    return checks;
}

int cmd_verify(const CommonArgs& common, double beta, bool quick) {
    const double alpha = resolve_alpha(common);
    const auto checks = run_verify_checks(alpha, beta, common.seed, quick, common.jobs);

    json j;
    j["meta"] = meta_json("verify", {{"alpha", fmt12(alpha)},
                                     {"beta", fmt12(beta)},
                                     {"seed", std::to_string(common.seed)},
                                     {"quick", quick ? "true" : "false"}});
    bool all_pass = true;
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"expected", round12(c.expected)},
                       {"observed", round12(c.observed)},
                       {"tolerance", round12(c.tolerance)},
                       {"pass", c.pass}});
        all_pass = all_pass && c.pass;
    }
    j["checks"] = arr;
    j["pass"] = all_pass;
    write_atomic(common.out, j.dump(2) + "\n");

    for (const auto& c : checks) {
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " expected=" << fmt12(c.expected)
                  << " observed=" << fmt12(c.observed) << " tol=" << fmt12(c.tolerance) << "\n";
    }
    return all_pass ? 0 : 3;
}

int cmd_speed_curve(const CommonArgs& common, double beta_min, double beta_max, int beta_count,
                    std::int64_t steps, int replicas) {
    const double alpha = resolve_alpha(common);
    std::vector<std::pair<std::string, std::string>> kv = {
        {"alpha", fmt12(alpha)},
        {"beta_min", fmt12(beta_min)},
        {"beta_max", fmt12(beta_max)},
        {"beta_count", std::to_string(beta_count)},
        {"steps", std::to_string(steps)},
        {"replicas", std::to_string(replicas)},
        {"seed", std::to_string(common.seed)},
    };

    struct Row {
        double beta, v_formula, v_mc, se, capped;
    };
    std::vector<Row> rows;
    for (int i = 0; i < beta_count; ++i) {
        const double beta =
            beta_count == 1
                ? beta_min
                : beta_min + (beta_max - beta_min) * static_cast<double>(i) / (beta_count - 1);
        const auto p = cf::ModelParams::from_alpha(alpha, beta, common.seed + i);
        const auto est = mc::estimate_speed(p, steps, replicas, {common.jobs});
        rows.push_back({beta, cf::speed(alpha, beta).v, est.point, est.std_error,
                        est.capped_fraction});
    }

    if (common.format == "json") {
        json j;
        j["meta"] = meta_json("speed-curve", kv);
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"alpha", round12(alpha)},
                           {"beta", round12(r.beta)},
                           {"v_formula", round12(r.v_formula)},
                           {"v_mc", round12(r.v_mc)},
                           {"std_err", round12(r.se)},
                           {"replicas", replicas},
                           {"steps", steps},
                           {"capped_fraction", round12(r.capped)}});
        }
        j["rows"] = arr;
        write_atomic(common.out, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << header_comment("speed-curve", kv);
    os << "alpha,beta,v_formula,v_mc,std_err,replicas,steps,capped_fraction\n";
    for (const auto& r : rows) {
        os << fmt12(alpha) << ',' << fmt12(r.beta) << ',' << fmt12(r.v_formula) << ','
           << fmt12(r.v_mc) << ',' << fmt12(r.se) << ',' << replicas << ',' << steps << ','
           << fmt12(r.capped) << '\n';
    }
    write_atomic(common.out, os.str());
    return 0;
}

int cmd_speed_vs_alpha(const CommonArgs& common, double beta, double alpha_min,
                       double alpha_max, int alpha_count) {
    std::vector<std::pair<std::string, std::string>> kv = {
        {"beta", fmt12(beta)},
        {"alpha_min", fmt12(alpha_min)},
        {"alpha_max", fmt12(alpha_max)},
        {"alpha_count", std::to_string(alpha_count)},
        {"seed", std::to_string(common.seed)},
    };
    std::ostringstream os;
    json arr = json::array();
    os << header_comment("speed-vs-alpha", kv);
    os << "beta,alpha,v_formula\n";
    for (int i = 0; i < alpha_count; ++i) {
        const double a = alpha_count == 1 ? alpha_min
                                          : alpha_min + (alpha_max - alpha_min) *
                                                            static_cast<double>(i) /
                                                            (alpha_count - 1);
        const double v = cf::speed(a, beta).v;
        os << fmt12(beta) << ',' << fmt12(a) << ',' << fmt12(v) << '\n';
        arr.push_back({{"beta", round12(beta)}, {"alpha", round12(a)}, {"v_formula", round12(v)}});
    }
    if (common.format == "json") {
        json j;
        j["meta"] = meta_json("speed-vs-alpha", kv);
        j["rows"] = arr;
        write_atomic(common.out, j.dump(2) + "\n");
    } else {
        write_atomic(common.out, os.str());
    }
    return 0;
}

int cmd_clt_hist(const CommonArgs& common, double beta, std::int64_t steps, int replicas) {
    const double alpha = resolve_alpha(common);
    const auto p = cf::ModelParams::from_alpha(alpha, beta, common.seed);
    const auto mode = beta == 1.0 ? mc::CltMode::quenched : mc::CltMode::annealed;
    const auto rep = mc::clt_experiment(p, steps, replicas, mode, {common.jobs});

    std::vector<std::pair<std::string, std::string>> kv = {
        {"alpha", fmt12(alpha)},
        {"beta", fmt12(beta)},
        {"steps", std::to_string(steps)},
        {"replicas", std::to_string(replicas)},
        {"mode", mode == mc::CltMode::quenched ? "quenched" : "annealed"},
        {"ks_statistic", fmt12(rep.ks_statistic)},
        {"ks_p_value", fmt12(rep.ks_p_value)},
        {"sample_variance", fmt12(rep.sample_variance)},
        {"seed", std::to_string(common.seed)},
    };
    if (common.format == "json") {
        json j;
        j["meta"] = meta_json("clt-hist", kv);
        json arr = json::array();
        for (std::size_t i = 0; i < rep.samples.size(); ++i) {
            arr.push_back({{"replica", i},
                           {"endpoint", round12(rep.endpoints[i])},
                           {"standardized", round12(rep.samples[i])}});
        }
        j["rows"] = arr;
        write_atomic(common.out, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << header_comment("clt-hist", kv);
    os << "replica,endpoint,standardized\n";
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        os << i << ',' << fmt12(rep.endpoints[i]) << ',' << fmt12(rep.samples[i]) << '\n';
    }
    write_atomic(common.out, os.str());
    return 0;
}

int cmd_trap_times(const CommonArgs& common, double beta, int k_max, int l_max, int replicas) {
    std::vector<std::pair<std::string, std::string>> kv = {
        {"beta", fmt12(beta)},
        {"k_max", std::to_string(k_max)},
        {"l_max", std::to_string(l_max)},
        {"replicas", std::to_string(replicas)},
        {"seed", std::to_string(common.seed)},
    };
    struct Row {
        char kind;
        int k, l;
        double formula, oracle, mc, se;
    };
    std::vector<Row> rows;
    auto run_mc = [&](TrapKind kind, int k, int l, std::uint64_t salt) {
        rng::Stream s(rng::derive(common.seed, salt));
        std::vector<double> xs(static_cast<std::size_t>(replicas));
        for (int r = 0; r < replicas; ++r) {
            xs[static_cast<std::size_t>(r)] =
                static_cast<double>(walk::simulate_trap_exit(kind, k, l, beta, s));
        }
        return stats::mean_se(xs);
    };
    std::uint64_t salt = 0;
    for (int k = 1; k <= k_max; ++k) {
        const auto ms = run_mc(TrapKind::a, k, 0, ++salt);
        rows.push_back({'a', k, 0, cf::trap_mean_time(TrapKind::a, beta, k, 0),
                        oracle::trap_gadget_mean_time(TrapKind::a, k, 0, beta), ms.mean, ms.se});
    }
    for (int l = 1; l <= l_max; ++l) {
        const auto ms = run_mc(TrapKind::b, 0, l, ++salt);
        rows.push_back({'b', 0, l, cf::trap_mean_time(TrapKind::b, beta, 0, l),
                        oracle::trap_gadget_mean_time(TrapKind::b, 0, l, beta), ms.mean, ms.se});
    }
    for (int k = 0; k <= k_max; ++k) {
        for (int l = 0; l <= l_max; ++l) {
            const auto ms = run_mc(TrapKind::c, k, l, ++salt);
            rows.push_back({'c', k, l, cf::trap_mean_time(TrapKind::c, beta, k, l),
                            oracle::trap_gadget_mean_time(TrapKind::c, k, l, beta), ms.mean,
                            ms.se});
        }
    }
    if (common.format == "json") {
        json j;
        j["meta"] = meta_json("trap-times", kv);
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"kind", std::string(1, r.kind)},
                           {"k", r.k},
                           {"l", r.l},
                           {"beta", round12(beta)},
                           {"mean_formula", round12(r.formula)},
                           {"mean_oracle", round12(r.oracle)},
                           {"mean_mc", round12(r.mc)},
                           {"std_err", round12(r.se)}});
        }
        j["rows"] = arr;
        write_atomic(common.out, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << header_comment("trap-times", kv);
    os << "kind,k,l,beta,mean_formula,mean_oracle,mean_mc,std_err\n";
    for (const auto& r : rows) {
        os << r.kind << ',' << r.k << ',' << r.l << ',' << fmt12(beta) << ','
           << fmt12(r.formula) << ',' << fmt12(r.oracle) << ',' << fmt12(r.mc) << ','
           << fmt12(r.se) << '\n';
    }
    write_atomic(common.out, os.str());
    return 0;
}

int cmd_sample_tree(const CommonArgs& common, int blocks) {
    const double alpha = resolve_alpha(common);
    tree::TreeWindow win(rng::derive(common.seed, 0xA11CEull), alpha, blocks, blocks);
    std::ostringstream os;
    os << header_comment("sample-tree", {{"alpha", fmt12(alpha)},
                                         {"blocks", std::to_string(blocks)},
                                         {"seed", std::to_string(common.seed)}});
    win.dump(os);
    write_atomic(common.out, os.str());
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"biased random walk on random spanning trees of the ladder"};
    app.require_subcommand(1);

    CommonArgs common;
    common.seed = default_seed();

    auto add_common = [&](CLI::App* sub, bool with_model, bool with_format = true) {
        if (with_model) {
            auto* oc = sub->add_option("--c", common.c, "vertical edge weight (derives alpha)");
            auto* oa = sub->add_option("--alpha", common.alpha, "gap parameter in (0,1)");
            oc->excludes(oa);
            oa->excludes(oc);
        }
        sub->add_option("--seed", common.seed,
                        "master seed (default: LADDERWALK_SEED or 12345)");
        sub->add_option("--out", common.out, "output path (default: stdout)");
        if (with_format) {
            sub->add_option("--format", common.format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
        }
        sub->add_option("--jobs", common.jobs,
                        "parallel replica fan-out, 0 = all cores; results do not depend on it");
    };

    // speed-curve
    double beta_min = 1.01, beta_max = 3.0, beta = 1.5;
    int beta_count = 15;
    std::int64_t steps = 100'000;
    int replicas = 500;
    auto* sc = app.add_subcommand("speed-curve", "Monte Carlo speed across a beta grid");
    add_common(sc, true);
    sc->add_option("--beta-min", beta_min, "grid start (default 1.01)");
    sc->add_option("--beta-max", beta_max, "grid end (default 3.0)");
    sc->add_option("--beta-count", beta_count, "grid points (default 15)")
        ->check(CLI::Range(2, 100000));
    sc->add_option("--steps", steps, "steps per replica (default 1e5)");
    sc->add_option("--replicas", replicas, "replicas per grid point (default 500)");

    // speed-vs-alpha
    double alpha_min = 0.05, alpha_max = 0.95;
    int alpha_count = 50;
    auto* sva = app.add_subcommand("speed-vs-alpha", "closed-form speed as a function of alpha");
    add_common(sva, false);
    sva->add_option("--beta", beta, "bias (default 1.5)")->required();
    sva->add_option("--alpha-min", alpha_min, "grid start (default 0.05)");
    sva->add_option("--alpha-max", alpha_max, "grid end (default 0.95)");
    sva->add_option("--alpha-count", alpha_count, "grid points (default 50)")
        ->check(CLI::Range(2, 100000));

    // verify
    bool quick = false;
    auto* vf = app.add_subcommand("verify", "run the invariant suite, print PASS/FAIL");
    add_common(vf, true, false);
    vf->add_option("--beta", beta, "bias (default 1.5)");
    vf->add_flag("--quick", quick, "reduced replica counts");

    // clt-hist
    auto* ch = app.add_subcommand(
        "clt-hist", "endpoint law after n steps (quenched at beta 1, annealed otherwise)");
    add_common(ch, true);
    ch->add_option("--beta", beta, "bias (default 1.5)");
    ch->add_option("--steps", steps, "steps per replica");
    ch->add_option("--replicas", replicas, "number of replicas");

    // trap-times
    int k_max = 6, l_max = 4;
    auto* tt = app.add_subcommand("trap-times", "trap exit times: formula vs solve vs MC");
    add_common(tt, false);
    tt->add_option("--beta", beta, "bias (default 1.5)");
    tt->add_option("--k-max", k_max, "largest right arm (default 6)");
    tt->add_option("--l-max", l_max, "largest left arm (default 4)");
    tt->add_option("--replicas", replicas, "MC replicas per trap (default 500)");

    // sample-tree
    int blocks = 20;
    auto* st = app.add_subcommand("sample-tree", "dump a sampled window, one block per line");
    add_common(st, true, false);
    st->add_option("--blocks", blocks, "blocks per side (default 20)")
        ->check(CLI::Range(1, 10'000'000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (sc->parsed()) return cmd_speed_curve(common, beta_min, beta_max, beta_count, steps,
                                                 replicas);
        if (sva->parsed()) return cmd_speed_vs_alpha(common, beta, alpha_min, alpha_max,
                                                     alpha_count);
        if (vf->parsed()) return cmd_verify(common, beta, quick);
        if (ch->parsed()) return cmd_clt_hist(common, beta, steps, replicas);
        if (tt->parsed()) return cmd_trap_times(common, beta, k_max, l_max, replicas);
        if (st->parsed()) return cmd_sample_tree(common, blocks);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("ladderwalk");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace ladderwalk::cli
