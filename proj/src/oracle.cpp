#include "ladderwalk/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace ladderwalk::oracle {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

// Dense Gaussian elimination with partial pivoting plus one step of
// iterative refinement; a has n rows, b the right-hand side. Gadgets and
// truncated windows stay far below the ~1e3 unknowns this is meant for.
class DenseSolver {
  public:
    explicit DenseSolver(std::vector<std::vector<double>> a) : lu_(std::move(a)) {
        const std::size_t n = lu_.size();
        perm_.resize(n);
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            for (std::size_t r = col + 1; r < n; ++r) {
                if (std::abs(lu_[r][col]) > std::abs(lu_[pivot][col])) pivot = r;
            }
            if (std::abs(lu_[pivot][col]) < 1e-300) {
                throw std::domain_error("linear system is singular");
            }
            std::swap(lu_[col], lu_[pivot]);
            std::swap(perm_[col], perm_[pivot]);
            const double inv = 1.0 / lu_[col][col];
            for (std::size_t r = col + 1; r < n; ++r) {
                const double factor = lu_[r][col] * inv;
                lu_[r][col] = factor;  // keep the multiplier for refinement
                if (factor == 0.0) continue;
                for (std::size_t c = col + 1; c < n; ++c) lu_[r][c] -= factor * lu_[col][c];
            }
        }
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        const std::size_t n = lu_.size();
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < i; ++c) x[i] -= lu_[i][c] * x[c];
        }
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t c = i + 1; c < n; ++c) x[i] -= lu_[i][c] * x[c];
            x[i] /= lu_[i][i];
        }
        return x;
    }

  private:
    std::vector<std::vector<double>> lu_;
    std::vector<std::size_t> perm_;
};

std::vector<double> solve_refined(const std::vector<std::vector<double>>& a,
                                  const std::vector<double>& b) {
    const DenseSolver solver(a);
    std::vector<double> x = solver.solve(b);
    const std::size_t n = b.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double acc = b[i];
        for (std::size_t c = 0; c < n; ++c) {
            acc -= static_cast<long double>(a[i][c]) * static_cast<long double>(x[c]);
        }
        r[i] = static_cast<double>(acc);
    }
    const std::vector<double> dx = solver.solve(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

}  // namespace

int WeightedGraph::add_vertex() {
    adj_.emplace_back();
    weight_.push_back(0.0);
    return static_cast<int>(adj_.size()) - 1;
}

void WeightedGraph::add_edge(int u, int v, double w) {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count() || u == v) {
        throw std::invalid_argument("add_edge: bad endpoints");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("add_edge: weight must be positive and finite");
    }
    adj_[u].emplace_back(v, w);
    adj_[v].emplace_back(u, w);
    weight_[u] += w;
    weight_[v] += w;
    total_ += 2.0 * w;
}

bool WeightedGraph::connected() const {
    if (adj_.empty()) return false;
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [u, w] : adj_[v]) {
            (void)w;
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    return reached == adj_.size();
}

std::vector<double> stationary_distribution(const WeightedGraph& g) {
    require(g.connected(), "graph must be connected");
    std::vector<double> pi(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        pi[v] = g.vertex_weight(v) / g.total_vertex_weight();
    }
    return pi;
}

double expected_return_time(const WeightedGraph& g, int x) {
    require(g.connected(), "graph must be connected");
    if (x < 0 || x >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
    return g.total_vertex_weight() / g.vertex_weight(x);
}

std::vector<double> expected_exit_times(const WeightedGraph& g,
                                        const std::vector<int>& boundary) {
    require(!boundary.empty(), "boundary must be nonempty");
    std::vector<char> is_boundary(g.vertex_count(), 0);
    for (int b : boundary) {
        if (b < 0 || b >= g.vertex_count()) throw std::invalid_argument("bad boundary vertex");
        is_boundary[b] = 1;
    }
    std::vector<int> interior;
    std::vector<int> slot(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!is_boundary[v]) {
            slot[v] = static_cast<int>(interior.size());
            interior.push_back(v);
        }
    }
    const std::size_t n = interior.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = interior[i];
        a[i][i] = 1.0;
        const double cv = g.vertex_weight(v);
        for (const auto& [u, w] : g.neighbors(v)) {
            if (slot[u] >= 0) a[i][static_cast<std::size_t>(slot[u])] -= w / cv;
        }
    }
    const std::vector<double> h = solve_refined(a, b);
    std::vector<double> full(g.vertex_count(), 0.0);
    for (std::size_t i = 0; i < n; ++i) full[interior[i]] = h[i];
    return full;
}

double expected_exit_time(const WeightedGraph& g, int start, const std::vector<int>& boundary) {
    for (int b : boundary) {
        if (b == start) throw std::invalid_argument("start must not be on the boundary");
    }
    return expected_exit_times(g, boundary)[start];
}

TrapGadget make_trap_gadget(TrapKind kind, int k, int l, double beta) {
    require(std::isfinite(beta) && beta >= 1.0, "beta must be >= 1");
    require(k >= 0 && l >= 0, "arm lengths must be nonnegative");
    if (kind == TrapKind::a) require(k >= 1, "type-a gadget needs k >= 1");
    if (kind == TrapKind::b) require(l >= 1, "type-b gadget needs l >= 1");

    TrapGadget gg;
    gg.kind = kind;
    gg.k = k;
    gg.l = l;
    gg.beta = beta;
    WeightedGraph& g = gg.graph;
    const int anchor = g.add_vertex();
    const int x1 = g.add_vertex();
    const int x2 = g.add_vertex();
    gg.anchor = anchor;
    gg.boundary = {x1, x2};

    switch (kind) {
        case TrapKind::a: {
            // Ray enters horizontally (weight 1) and leaves down the rung
            // (weight 1); the arm continues right with weights beta..beta^k.
            g.add_edge(anchor, x1, 1.0);
            g.add_edge(anchor, x2, 1.0);
            int prev = anchor;
            for (int j = 1; j <= k; ++j) {
                const int nxt = g.add_vertex();
                g.add_edge(prev, nxt, std::pow(beta, j));
                prev = nxt;
            }
            break;
        }
        case TrapKind::b: {
            // Ray arrives down the rung (weight 1) and leaves right (beta);
            // the arm points left with weights 1, 1/beta, ..., beta^(1-l).
            g.add_edge(anchor, x1, 1.0);
            g.add_edge(anchor, x2, beta);
            int prev = anchor;
            for (int j = 1; j <= l; ++j) {
                const int nxt = g.add_vertex();
                g.add_edge(prev, nxt, std::pow(beta, 1 - j));
                prev = nxt;
            }
            break;
        }
        default: {
            // Straight ray through the anchor (weights 1 and beta); the rung
            // (weight 1) hangs below with arms on both sides.
            g.add_edge(anchor, x1, 1.0);
            g.add_edge(anchor, x2, beta);
            const int bottom = g.add_vertex();
            g.add_edge(anchor, bottom, 1.0);
            int prev = bottom;
            for (int j = 1; j <= k; ++j) {
                const int nxt = g.add_vertex();
                g.add_edge(prev, nxt, std::pow(beta, j));
                prev = nxt;
            }
            prev = bottom;
            for (int j = 1; j <= l; ++j) {
                const int nxt = g.add_vertex();
                g.add_edge(prev, nxt, std::pow(beta, 1 - j));
                prev = nxt;
            }
            break;
        }
    }
    return gg;
}

double trap_gadget_mean_time(TrapKind kind, int k, int l, double beta) {
    const TrapGadget g = make_trap_gadget(kind, k, l, beta);
    return expected_exit_time(g.graph, g.anchor, g.boundary) - 1.0;
}

double ray_resistance_scaled(const tree::RayEnumeration& ray, std::int64_t j, double beta,
                             std::int64_t ref_exponent, double rel_tol) {
    require(beta > 1.0, "resistance to infinity diverges for beta <= 1");
    require(rel_tol > 0.0, "rel_tol must be positive");
    // An edge's exponent equals its destination column, so after the edge at
    // exponent e the worst continuation is a rung at e followed by the
    // alternating-rung geometry: at most (beta+1)/(beta-1) * beta^(ref-e).
    const double tail_factor = (beta + 1.0) / (beta - 1.0);
    double sum = 0.0;
    for (std::int64_t m = j;; ++m) {
        if (m + 1 > ray.i_hi()) {
            throw std::runtime_error(
                "ray_resistance_scaled: enumeration too short for the requested tolerance");
        }
        const std::int64_t e = ray.edge_exponent(m);
        sum += std::pow(beta, static_cast<double>(ref_exponent - e));
        const double tail = tail_factor * std::pow(beta, static_cast<double>(ref_exponent - e));
        if (tail <= rel_tol * sum) return sum;
    }
}

double escape_probability(const tree::RayEnumeration& ray, std::int64_t n, double beta,
                          double rel_tol) {
    require(beta > 1.0, "escape probability needs beta > 1");
    const std::int64_t e_out = ray.edge_exponent(n);      // edge (phi(n), phi(n+1))
    const std::int64_t e_in = ray.edge_exponent(n - 1);   // edge (phi(n-1), phi(n))
    const double c_in = std::pow(beta, static_cast<double>(e_in - e_out));
    const double r = ray_resistance_scaled(ray, n, beta, e_out, rel_tol);
    return 1.0 / ((c_in + 1.0) * r);
}

double regeneration_escape_probability(const tree::RayEnumeration& ray,
                                       const Vertex& boundary_vertex, double beta,
                                       double rel_tol) {
    require(beta > 1.0, "escape probability needs beta > 1");
    const auto j = ray.index_of(boundary_vertex);
    if (!j.has_value()) throw std::invalid_argument("boundary vertex is not on the ray");
    // Never crossing back over the boundary edge, whose exponent is the
    // boundary column itself.
    const double r = ray_resistance_scaled(ray, *j, beta, boundary_vertex.col, rel_tol);
    return 1.0 / (1.0 + r);
}

}  // namespace ladderwalk::oracle
