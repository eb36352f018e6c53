#pragma once

// The conductance-weighted walk on a lazily extended tree window.
//
// At a vertex of column m the candidate edges are the left horizontal edge
// (exponent m), the rung (exponent m), and the right horizontal edge
// (exponent m+1). Relative to the smallest adjacent exponent the weights are
// always (1, 1, beta) whatever m is, so the kernel never evaluates a global
// power of beta and the transition law is shift-invariant by construction.

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ladderwalk/common.hpp"
#include "ladderwalk/rng.hpp"
#include "ladderwalk/tree.hpp"

namespace ladderwalk::walk {

inline constexpr int kGrowthQuantum = 64;
inline constexpr std::int64_t kDefaultStepCap = 100'000'000;

// Cumulative thresholds for the three possible neighbor sets, fixed per beta.
struct StepKernel {
    double beta;
    double one_over_1p;  // 1/(1+beta)
    double one_over_2p;  // 1/(2+beta)
    double two_over_2p;  // 2/(2+beta)

    explicit StepKernel(double b)
        : beta(b),
          one_over_1p(1.0 / (1.0 + b)),
          one_over_2p(1.0 / (2.0 + b)),
          two_over_2p(2.0 / (2.0 + b)) {
        if (!(b >= 1.0)) throw std::domain_error("beta must be >= 1");
    }
};

struct WalkerState {
    Vertex pos;
    std::int64_t step_count = 0;
    bool track_local_time = false;
    std::unordered_map<std::uint64_t, std::uint32_t> local_time;

    static WalkerState at(Vertex v, bool track = false) {
        WalkerState s;
        s.pos = v;
        s.track_local_time = track;
        if (track) s.local_time[pack_vertex(v)] = 1;
        return s;
    }
};

// Grow the window whenever the walker is within one block of an edge (one
// extra block on the right when finalized ray flags are needed there).
inline void ensure_margin(tree::TreeWindow& w, std::int64_t col,
                          std::int64_t right_margin = 0) {
    if (col < w.safe_lo()) w.extend(tree::Side::left, kGrowthQuantum);
    while (col >= w.safe_hi() - right_margin) w.extend(tree::Side::right, kGrowthQuantum);
}

inline unsigned neighbor_mask(const tree::TreeWindow& w, const Vertex& v) {
    const std::uint8_t b0 = w.col_bits(v.col);
    const std::uint8_t b1 = w.col_bits(v.col + 1);
    unsigned mask = 0;
    if (!((b0 & tree::colbit::kMissing) &&
          static_cast<int>((b0 >> 1) & 1) == v.row)) {
        mask |= 1u;  // left horizontal
    }
    if (!((b1 & tree::colbit::kMissing) &&
          static_cast<int>((b1 >> 1) & 1) == v.row)) {
        mask |= 2u;  // right horizontal
    }
    if (b0 & tree::colbit::kRung) mask |= 4u;  // rung
    return mask;
}

inline void step(WalkerState& s, tree::TreeWindow& w, const StepKernel& k,
                 rng::Stream& rng) {
    ensure_margin(w, s.pos.col);
    const unsigned mask = neighbor_mask(w, s.pos);
    const double u = rng.next_unit();
    Vertex nxt = s.pos;
    switch (mask) {
        case 3u:  // left, right: weights (1, beta)
            if (u < k.one_over_1p) --nxt.col; else ++nxt.col;
            break;
        case 7u:  // left, rung, right: weights (1, 1, beta)
            if (u < k.one_over_2p) --nxt.col;
            else if (u < k.two_over_2p) nxt.row ^= 1;
            else ++nxt.col;
            break;
        case 6u:  // rung, right: weights (1, beta)
            if (u < k.one_over_1p) nxt.row ^= 1; else ++nxt.col;
            break;
        case 5u:  // left, rung: weights (1, 1)
            if (u < 0.5) --nxt.col; else nxt.row ^= 1;
            break;
        case 1u: --nxt.col; break;
        case 2u: ++nxt.col; break;
        case 4u: nxt.row ^= 1; break;
        default:
            throw std::logic_error("walker at an isolated vertex");
    }
    s.pos = nxt;
    ++s.step_count;
    if (s.track_local_time) ++s.local_time[pack_vertex(nxt)];
}

// Neighbor list with transition probabilities, probabilities formed from
// exponent differences relative to the smallest adjacent exponent. Neighbor
// order is (left, rung, right); step() consumes its uniform against the same
// cumulative thresholds, so a reference stepper built on this distribution
// reproduces step() exactly.
std::vector<std::pair<Vertex, double>> transition_distribution(const tree::TreeWindow& w,
                                                               const Vertex& v, double beta);

// Plain cumulative-selection stepper over transition_distribution; one
// uniform per step, same stream consumption as step().
void step_reference(WalkerState& s, tree::TreeWindow& w, double beta, rng::Stream& rng);

struct TrapVisit {
    tree::TrapDescriptor trap;
    std::int64_t duration = 0;  // final step back on the ray excluded
};

struct PassageStats {
    std::int64_t tau = 0;
    bool capped = false;
    std::int64_t ray_steps = 0;  // steps from a ray vertex to a ray vertex
    std::vector<TrapVisit> trap_times;
};

// Run until the walker stands on a ray vertex at or beyond target_column, or
// the step cap is hit. Every arrival at a trap anchor opens a visit whose
// duration (possibly zero) is recorded when record_traps is set.
PassageStats run_passage(WalkerState& s, tree::TreeWindow& w, const StepKernel& k,
                         rng::Stream& rng, std::int64_t target_column,
                         std::int64_t step_cap = kDefaultStepCap,
                         bool record_traps = false);

// Walk on the isolated trap gadget, started at the anchor; returns the number
// of steps before the first step onto a ray neighbor (that step excluded).
std::int64_t simulate_trap_exit(TrapKind kind, int k, int l, double beta, rng::Stream& rng);

}  // namespace ladderwalk::walk
