#pragma once

// Exact (non-Monte-Carlo) answers on finite weighted graphs: stationary
// laws, expected return/exit times via dense linear solves, the trap gadgets
// of the three dead-end shapes, and ray escape probabilities from truncated
// effective resistances.

#include <cstdint>
#include <utility>
#include <vector>

#include "ladderwalk/common.hpp"
#include "ladderwalk/tree.hpp"

namespace ladderwalk::oracle {

class WeightedGraph {
  public:
    int add_vertex();
    void add_edge(int u, int v, double w);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    const std::vector<std::pair<int, double>>& neighbors(int v) const { return adj_.at(v); }
    double vertex_weight(int v) const { return weight_.at(v); }  // C(v)
    double total_vertex_weight() const { return total_; }        // C(V) = 2 * edge sum
    double edge_weight_sum() const { return 0.5 * total_; }
    bool connected() const;

  private:
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> weight_;
    double total_ = 0.0;
};

// pi(x) = C(x) / C(V).
std::vector<double> stationary_distribution(const WeightedGraph& g);

// E_x[first return to x] = C(V) / C(x).
double expected_return_time(const WeightedGraph& g, int x);

// Mean steps from `start` until the chain first hits `boundary`, by solving
// (I - Q) h = 1 on the interior with dense partial-pivot elimination.
double expected_exit_time(const WeightedGraph& g, int start,
                          const std::vector<int>& boundary);

// Same solve, full interior vector (indexed like the graph; boundary = 0).
std::vector<double> expected_exit_times(const WeightedGraph& g,
                                        const std::vector<int>& boundary);

// The finite graph a walker sees from inside a trap: the anchor, its two ray
// neighbors, and the dead-end arm(s). Edge weights are powers of beta
// relative to the anchor column (anchor's right-hand ray edge = beta).
struct TrapGadget {
    TrapKind kind = TrapKind::c;
    int k = 0;
    int l = 0;
    double beta = 1.0;
    WeightedGraph graph;
    int anchor = 0;
    std::vector<int> boundary;  // the two ray neighbors
};

TrapGadget make_trap_gadget(TrapKind kind, int k, int l, double beta);

// Mean time in the trap before the first step back on the ray (that step
// excluded): the gadget exit time minus one.
double trap_gadget_mean_time(TrapKind kind, int k, int l, double beta);

// Scaled effective resistance of the ray from phi(j) to +infinity:
//   sum over m >= j of beta^(ref_exponent - exponent(phi(m), phi(m+1)))
// truncated once the worst-case tail (alternating rung geometry) drops below
// rel_tol of the partial sum. Throws if the enumeration ends first.
double ray_resistance_scaled(const tree::RayEnumeration& ray, std::int64_t j, double beta,
                             std::int64_t ref_exponent, double rel_tol);

// Probability that the ray-restricted walk started at phi(n) never returns
// to it. beta > 1.
double escape_probability(const tree::RayEnumeration& ray, std::int64_t n, double beta,
                          double rel_tol);

// Probability that the walk, started just right of the missing edge at a
// block boundary, never steps back across it.
double regeneration_escape_probability(const tree::RayEnumeration& ray,
                                       const Vertex& boundary_vertex, double beta,
                                       double rel_tol);

}  // namespace ladderwalk::oracle
