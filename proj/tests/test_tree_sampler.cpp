#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "ladderwalk/closed_form.hpp"
#include "ladderwalk/rng.hpp"
#include "ladderwalk/stats.hpp"
#include "ladderwalk/tree.hpp"

using namespace ladderwalk;

namespace {

std::string dump_str(const tree::TreeWindow& w) {
    std::ostringstream os;
    w.dump(os);
    return os.str();
}

// chi-square p-value of observed counts against probabilities, tail bins
// merged until every expected count is at least five
double chi2_p(const std::vector<std::int64_t>& obs, const std::vector<double>& probs,
              std::int64_t n) {
    std::vector<double> o, e;
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        o_acc += static_cast<double>(obs[i]);
        e_acc += probs[i] * static_cast<double>(n);
        if (e_acc >= 5.0) {
            o.push_back(o_acc);
            e.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 && !e.empty()) {
        o.back() += o_acc;
        e.back() += e_acc;
    }
    if (e.size() < 2) return 1.0;
    const double x = stats::chi2_statistic(o, e);
    return stats::chi2_sf(x, static_cast<double>(e.size() - 1));
}

// structural audit of a block-aligned span: exactly one missing horizontal
// edge per boundary, one rung per block, and the span is a tree
void check_window_structure(const tree::TreeWindow& w) {
    const std::int64_t n_lo = -w.n_left();
    const std::int64_t n_hi = w.n_right();
    // boundary ordering and rung placement
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        CHECK(w.h(n) < w.h(n + 1));
        CHECK(w.h(n) <= w.v(n));
        CHECK(w.v(n) < w.h(n + 1));
    }
    CHECK(w.h(0) <= 0);
    CHECK(0 < w.h(1));

    const std::int64_t lo = w.h(n_lo);
    const std::int64_t hi = w.h(n_hi + 1) - 1;
    // per-column flags match the boundary/rung inventory
    std::map<std::int64_t, int> boundary_row;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) boundary_row[w.h(n)] = w.w(n);
    std::map<std::int64_t, bool> rung_col;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) rung_col[w.v(n)] = true;
    for (std::int64_t m = lo; m <= hi; ++m) {
        const bool is_boundary = boundary_row.count(m) > 0;
        const int missing0 = !w.h_edge_present(0, m);
        const int missing1 = !w.h_edge_present(1, m);
        CHECK(missing0 + missing1 == (is_boundary ? 1 : 0));
        if (is_boundary) CHECK(missing0 == (boundary_row[m] == 0 ? 1 : 0));
        CHECK(w.rung_at(m) == (rung_col.count(m) > 0));
    }

    // the span is connected and cycle-free
    const std::int64_t len = hi - lo + 1;
    const auto id = [&](int row, std::int64_t m) {
        return static_cast<std::size_t>(2 * (m - lo) + row);
    };
    std::vector<std::vector<std::size_t>> adj(static_cast<std::size_t>(2 * len));
    std::int64_t edges = 0;
    for (std::int64_t m = lo; m <= hi; ++m) {
        for (int r : {0, 1}) {
            if (m > lo && w.h_edge_present(r, m)) {
                adj[id(r, m)].push_back(id(r, m - 1));
                adj[id(r, m - 1)].push_back(id(r, m));
                ++edges;
            }
        }
        if (w.rung_at(m)) {
            adj[id(0, m)].push_back(id(1, m));
            adj[id(1, m)].push_back(id(0, m));
            ++edges;
        }
    }
    CHECK(edges == 2 * len - 1);
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t u : adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    CHECK(reached == adj.size());
}

}  // namespace

TEST_CASE("interior block law") {
    const double alpha = 0.5;
    const std::uint64_t key = rng::derive(1, 11);
    const int n = 1'000'000;
    std::int64_t zeros = 0;
    double f_sum = 0.0, g_sum = 0.0;
    std::vector<std::int64_t> g_counts(60, 0);
    for (int i = 1; i <= n; ++i) {
        const auto b = tree::sample_interior_block(key, i, alpha);
        zeros += (b.f == 0);
        f_sum += b.f;
        const int g = b.f + b.f_prime + 1;
        g_sum += g;
        if (g < 60) ++g_counts[static_cast<std::size_t>(g)];
    }
    CHECK(static_cast<double>(zeros) / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(f_sum / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(g_sum / n == doctest::Approx(3.0).epsilon(0.01));

    // renewal gaps follow the double-geometric law shifted by one:
    // P[G = g] = (1-a)^2 g a^(g-1)
    std::vector<double> probs(60, 0.0);
    for (int g = 1; g < 60; ++g) {
        probs[static_cast<std::size_t>(g)] = 0.25 * g * std::pow(alpha, g - 1);
    }
    CHECK(chi2_p(g_counts, probs, n) > 0.01);

    // mean gap at alpha = 2 - sqrt(3)
    const double a2 = closed_form::alpha_from_c(1.0);
    double g2 = 0.0;
    const std::uint64_t key2 = rng::derive(2, 11);
    for (int i = 1; i <= 200'000; ++i) {
        const auto b = tree::sample_interior_block(key2, i, a2);
        g2 += b.f + b.f_prime + 1;
    }
    CHECK(g2 / 200'000 == doctest::Approx((1.0 + a2) / (1.0 - a2)).epsilon(0.01));
}

TEST_CASE("origin block law") {
    const double alpha = 0.5;
    const int n = 400'000;
    std::vector<std::int64_t> g_counts(50, 0);
    double g_sum = 0.0;
    std::int64_t joint[3][3] = {};
    std::int64_t g3 = 0;
    for (int i = 0; i < n; ++i) {
        const auto o = tree::sample_origin_block(rng::derive(3, static_cast<std::uint64_t>(i)),
                                                 alpha);
        CHECK(-o.g0 < o.h0);
        CHECK(o.h0 <= 0);
        CHECK(o.f0_prime <= o.g0 - 1);
        if (o.g0 < 50) ++g_counts[static_cast<std::size_t>(o.g0)];
        g_sum += o.g0;
        if (o.g0 == 3) {
            ++g3;
            ++joint[-o.h0][o.f0_prime];
        }
    }
    // size-biased gap law
    std::vector<double> probs(50, 0.0);
    for (int g = 1; g < 50; ++g) {
        probs[static_cast<std::size_t>(g)] =
            (0.5 / 1.5) * 0.25 * std::pow(alpha, g - 1) * g * g;
    }
    CHECK(chi2_p(g_counts, probs, n) > 0.01);
    CHECK(g_sum / n == doctest::Approx(13.0 / 3.0).epsilon(0.01));

    // size bias pushes the origin gap above the interior gap
    CHECK(g_sum / n > 3.0);

    // given g0 = 3, (-h0, f0') is uniform on the 3x3 grid
    std::vector<std::int64_t> cells;
    std::vector<double> cell_probs(9, 1.0 / 9.0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) cells.push_back(joint[i][j]);
    }
    CHECK(chi2_p(cells, cell_probs, g3) > 0.01);
}

TEST_CASE("window construction and structure") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        tree::TreeWindow w(rng::derive(seed, 5), 0.5, 12, 30);
        check_window_structure(w);
    }
    // alpha -> 0: unit gaps and a rung at every column
    tree::TreeWindow tiny(rng::derive(9, 5), 1e-12, 4, 8);
    for (std::int64_t n = -4; n <= 8; ++n) {
        CHECK(tiny.h(n + 1) - tiny.h(n) == 1);
        CHECK(tiny.rung_at(tiny.v(n)));
    }

    // empirical rung density p = (1-a)/(1+a)
    tree::TreeWindow big(rng::derive(10, 5), 0.5, 1, 100'000);
    std::int64_t rungs = 0;
    const std::int64_t cols = big.h(100'000) - big.h(1);
    for (std::int64_t m = big.h(1); m < big.h(100'000); ++m) rungs += big.rung_at(m);
    CHECK(static_cast<double>(rungs) / static_cast<double>(cols) ==
          doctest::Approx(1.0 / 3.0).epsilon(0.03));

    // reconstruction identity per materialized block
    tree::TreeWindow w(rng::derive(11, 5), 0.4, 20, 20);
    for (std::int64_t n = -20; n <= 20; ++n) {
        if (n == 0) {
            CHECK(w.h(1) - w.h(0) == w.origin().g0);
            CHECK(w.v(0) == w.origin().h0 + w.origin().f0_prime);
        } else {
            const auto b = w.block(n);
            CHECK(w.h(n + 1) - w.h(n) == b.f + b.f_prime + 1);
            CHECK(w.v(n) == w.h(n) + b.f_prime);
        }
    }
}

TEST_CASE("window extension semantics") {
    const std::uint64_t key = rng::derive(21, 5);
    tree::TreeWindow a(key, 0.5, 2, 2);
    tree::TreeWindow b(key, 0.5, 2, 2);
    a.extend(tree::Side::right, 0);
    CHECK(dump_str(a) == dump_str(b));

    a.extend(tree::Side::right, 5);
    a.extend(tree::Side::right, 5);
    b.extend(tree::Side::right, 10);
    CHECK(dump_str(a) == dump_str(b));

    a.extend(tree::Side::left, 7);
    b.extend(tree::Side::left, 3);
    b.extend(tree::Side::left, 4);
    CHECK(dump_str(a) == dump_str(b));

    // same key twice gives a bit-identical window
    tree::TreeWindow c(key, 0.5, 9, 9);
    tree::TreeWindow d(key, 0.5, 9, 9);
    CHECK(dump_str(c) == dump_str(d));

    // left growth never moves the ray indices of existing right-side vertices
    tree::TreeWindow e(key, 0.5, 2, 40);
    const auto ray1 = tree::ray_of(e);
    std::vector<Vertex> before;
    for (std::int64_t i = 0; i <= 40; ++i) before.push_back(ray1.at(i));
    e.extend(tree::Side::left, 30);
    const auto ray2 = tree::ray_of(e);
    for (std::int64_t i = 0; i <= 40; ++i) {
        CHECK(ray2.at(i) == before[static_cast<std::size_t>(i)]);
    }

    // fixed windows refuse to grow
    auto fixed =
        tree::TreeWindow::from_blocks({}, {tree::Block{1, 0, 0}}, {tree::Block{0, 1, 1}});
    CHECK_THROWS_AS(fixed.extend(tree::Side::right, 1), std::logic_error);
}

TEST_CASE("dump format") {
    tree::OriginBlock o;
    o.g0 = 3;
    o.h0 = -1;
    o.f0_prime = 1;
    o.w0 = 1;
    auto w = tree::TreeWindow::from_blocks(o, {tree::Block{2, 0, 1}}, {tree::Block{0, 1, 0}});
    // lines are "n H V F F' W" with the origin as "O G0 H0 F0' W0"
    CHECK(dump_str(w) == "-1 -4 -4 2 0 1\nO 3 -1 1 1\n1 2 3 0 1 0\n");
}

TEST_CASE("ray enumeration") {
    SUBCASE("constant W never crosses a rung") {
        tree::WindowOptions opt;
        opt.force_w = 0;
        tree::TreeWindow w(rng::derive(31, 5), 0.5, 5, 60, opt);
        const auto ray = tree::ray_of(w);
        for (std::int64_t i = ray.i_lo(); i < ray.i_hi(); ++i) {
            CHECK(ray.col(i + 1) - ray.col(i) == 1);  // no 0-steps
            CHECK(ray.row(i) == 1);
        }
    }
    SUBCASE("columns are monotone with steps in {0, 1} and 0-steps are rungs") {
        tree::TreeWindow w(rng::derive(32, 5), 0.6, 20, 200);
        const auto ray = tree::ray_of(w);
        for (std::int64_t i = ray.i_lo(); i < ray.i_hi(); ++i) {
            const auto d = ray.col(i + 1) - ray.col(i);
            CHECK(d >= 0);
            CHECK(d <= 1);
            if (d == 0) {
                CHECK(ray.row(i + 1) == 1 - ray.row(i));
                CHECK(w.rung_at(ray.col(i)));
            } else {
                CHECK(ray.row(i + 1) == ray.row(i));
            }
        }
        CHECK(ray.col(0) == 0);
        // inverse lookup round-trips
        for (std::int64_t i = ray.i_lo(); i <= ray.i_hi(); i += 7) {
            CHECK(ray.index_of(ray.at(i)) == i);
        }
    }
    SUBCASE("rung-step fraction and column advance match the ergodic limits") {
        const double alpha = 0.5;
        tree::TreeWindow w(rng::derive(33, 5), alpha, 1, 100'000, {});
        const auto ray = tree::ray_of(w);
        const std::int64_t top = ray.i_hi() - 1;
        std::int64_t zero_steps = 0;
        for (std::int64_t i = 0; i < top; ++i) zero_steps += (ray.col(i + 1) == ray.col(i));
        // fraction of in-ray rungs per column is p/2 = 1/6 at alpha = 1/2
        const double per_col =
            static_cast<double>(zero_steps) / static_cast<double>(ray.col(top));
        CHECK(per_col == doctest::Approx(1.0 / 6.0).epsilon(0.03));
        const double ratio = static_cast<double>(ray.col(top)) / static_cast<double>(top);
        CHECK(ratio ==
              doctest::Approx(closed_form::ray_statistics(alpha).ray_ratio).epsilon(0.01));
    }
}

TEST_CASE("trap inventory") {
    SUBCASE("constant W gives only rung traps") {
        tree::WindowOptions opt;
        opt.force_w = 1;
        tree::TreeWindow w(rng::derive(41, 5), 0.5, 5, 40, opt);
        for (const auto& t : tree::traps_of(w)) CHECK(t.kind == TrapKind::c);
    }
    SUBCASE("edge conservation: ray plus traps covers the window") {
        tree::TreeWindow w(rng::derive(42, 5), 0.55, 10, 60);
        const auto ray = tree::ray_of(w);
        const auto traps = tree::traps_of(w);
        // count edges strictly inside the finalized block range
        const std::int64_t lo = w.h(-w.n_left());
        const std::int64_t hi = w.h(w.n_right()) - 1;
        std::int64_t edges = 0;
        for (std::int64_t m = lo + 1; m <= hi; ++m) {
            edges += w.h_edge_present(0, m);
            edges += w.h_edge_present(1, m);
        }
        for (std::int64_t m = lo; m <= hi; ++m) edges += w.rung_at(m);
        const std::int64_t ray_edges = ray.i_hi() - ray.i_lo();
        std::int64_t trap_edges = 0;
        for (const auto& t : traps) {
            trap_edges += t.k + t.l + (t.kind == TrapKind::c ? 1 : 0);
        }
        CHECK(edges == ray_edges + trap_edges);
    }
    SUBCASE("rung-trap arms are product geometric") {
        const double alpha = 0.5;
        std::vector<std::int64_t> counts(64, 0);  // index 8*k + l for k,l < 8
        std::int64_t total = 0;
        tree::TreeWindow w(rng::derive(43, 5), alpha, 1, 120'000);
        for (const auto& t : tree::traps_of(w)) {
            if (t.kind != TrapKind::c) continue;
            ++total;
            if (t.k < 8 && t.l < 8) ++counts[static_cast<std::size_t>(8 * t.k + t.l)];
        }
        std::vector<double> probs(64, 0.0);
        for (int k = 0; k < 8; ++k) {
            for (int l = 0; l < 8; ++l) {
                probs[static_cast<std::size_t>(8 * k + l)] = 0.25 * std::pow(alpha, k + l);
            }
        }
        CHECK(chi2_p(counts, probs, total) > 0.01);
        CHECK(total > 30'000);
    }
    SUBCASE("split traps carry the block arms") {
        // W changes across the origin block: its rung is in the ray, with a
        // right trap of F0 edges and a left trap of F0' edges
        tree::OriginBlock o;
        o.g0 = 4;
        o.h0 = 0;
        o.f0_prime = 2;
        o.w0 = 0;
        auto w = tree::TreeWindow::from_blocks(
            o, {tree::Block{3, 1, 1}}, {tree::Block{2, 3, 1}, tree::Block{1, 1, 0}});
        const auto traps = tree::traps_of(w);
        bool found_a = false, found_b = false;
        for (const auto& t : traps) {
            if (t.kind == TrapKind::a && t.anchor.col == w.v(0)) {
                found_a = true;
                CHECK(t.k == o.f0());
            }
            if (t.kind == TrapKind::b && t.anchor.col == w.v(0)) {
                found_b = true;
                CHECK(t.l == o.f0_prime);
            }
        }
        CHECK(found_a);
        CHECK(found_b);
    }
}
