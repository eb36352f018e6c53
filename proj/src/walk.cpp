#include "ladderwalk/walk.hpp"

#include <cmath>

namespace ladderwalk::walk {

namespace {

bool is_anchor(const tree::TreeWindow& w, const Vertex& v) {
    if (!w.on_ray(v.row, v.col)) return false;
    if (w.rung_at(v.col) && !w.on_ray(1 - v.row, v.col)) return true;
    if (w.h_edge_present(v.row, v.col + 1) && !w.on_ray(v.row, v.col + 1)) return true;
    if (w.h_edge_present(v.row, v.col) && !w.on_ray(v.row, v.col - 1)) return true;
    return false;
}

tree::TrapDescriptor describe_trap(const tree::TreeWindow& w, const Vertex& anchor) {
    tree::TrapDescriptor d;
    d.anchor = anchor;
    if (w.rung_at(anchor.col) && !w.on_ray(1 - anchor.row, anchor.col)) {
        d.kind = TrapKind::c;
        const int arm_row = 1 - anchor.row;
        std::int64_t j = anchor.col;
        while (w.h_edge_present(arm_row, j + 1)) ++j;
        d.k = static_cast<int>(j - anchor.col);
        j = anchor.col;
        while (w.h_edge_present(arm_row, j)) --j;
        d.l = static_cast<int>(anchor.col - j);
        return d;
    }
    if (w.h_edge_present(anchor.row, anchor.col + 1) && !w.on_ray(anchor.row, anchor.col + 1)) {
        d.kind = TrapKind::a;
        std::int64_t j = anchor.col;
        while (w.h_edge_present(anchor.row, j + 1)) ++j;
        d.k = static_cast<int>(j - anchor.col);
        return d;
    }
    d.kind = TrapKind::b;
    std::int64_t j = anchor.col;
    while (w.h_edge_present(anchor.row, j)) --j;
    d.l = static_cast<int>(anchor.col - j);
    return d;
}

}  // namespace

std::vector<std::pair<Vertex, double>> transition_distribution(const tree::TreeWindow& w,
                                                               const Vertex& v, double beta) {
    if (!(beta >= 1.0)) throw std::domain_error("beta must be >= 1");
    const unsigned mask = neighbor_mask(w, v);
    if (mask == 0) throw std::logic_error("isolated vertex");
    // candidate order (left, rung, right) with weights relative to the
    // smallest adjacent exponent: left and rung carry 1, right carries beta
    std::vector<std::pair<Vertex, double>> out;
    double total = 0.0;
    if (mask & 1u) total += 1.0;
    if (mask & 4u) total += 1.0;
    if (mask & 2u) total += beta;
    if (mask & 1u) out.push_back({{v.row, v.col - 1}, 1.0 / total});
    if (mask & 4u) out.push_back({{1 - v.row, v.col}, 1.0 / total});
    if (mask & 2u) out.push_back({{v.row, v.col + 1}, beta / total});
    return out;
}

void step_reference(WalkerState& s, tree::TreeWindow& w, double beta, rng::Stream& rng) {
    ensure_margin(w, s.pos.col);
    const auto dist = transition_distribution(w, s.pos, beta);
    const double u = rng.next_unit();
    double cum = 0.0;
    Vertex nxt = dist.back().first;
    for (const auto& [to, p] : dist) {
        cum += p;
        if (u < cum) {
            nxt = to;
            break;
        }
    }
    s.pos = nxt;
    ++s.step_count;
    if (s.track_local_time) ++s.local_time[pack_vertex(nxt)];
}

PassageStats run_passage(WalkerState& s, tree::TreeWindow& w, const StepKernel& k,
                         rng::Stream& rng, std::int64_t target_column,
                         std::int64_t step_cap, bool record_traps) {
    if (target_column <= s.pos.col) {
        throw std::domain_error("target column must lie right of the walker");
    }
    const std::int64_t margin = record_traps ? 1 : 0;
    ensure_margin(w, s.pos.col, margin);

    PassageStats ps;
    std::unordered_map<std::uint64_t, tree::TrapDescriptor> trap_cache;
    bool in_visit = false;
    Vertex visit_anchor;
    std::int64_t visit_start = 0;

    if (record_traps && is_anchor(w, s.pos)) {
        in_visit = true;
        visit_anchor = s.pos;
        visit_start = 0;
    }

    for (;;) {
        if (ps.tau >= step_cap) {
            ps.capped = true;
            break;
        }
        const Vertex prev = s.pos;
        const bool prev_on_ray = w.on_ray(prev.row, prev.col);
        step(s, w, k, rng);
        ++ps.tau;
        ensure_margin(w, s.pos.col, margin);
        const bool cur_on_ray = w.on_ray(s.pos.row, s.pos.col);
        if (prev_on_ray && cur_on_ray) ++ps.ray_steps;

        if (record_traps) {
            if (in_visit) {
                if (cur_on_ray && !(s.pos == visit_anchor)) {
                    const std::uint64_t key = pack_vertex(visit_anchor);
                    auto it = trap_cache.find(key);
                    if (it == trap_cache.end()) {
                        it = trap_cache.emplace(key, describe_trap(w, visit_anchor)).first;
                    }
                    ps.trap_times.push_back({it->second, ps.tau - visit_start - 1});
                    in_visit = false;
                }
            }
            if (!in_visit && cur_on_ray && is_anchor(w, s.pos)) {
                in_visit = true;
                visit_anchor = s.pos;
                visit_start = ps.tau;
            }
        }

        if (cur_on_ray && s.pos.col >= target_column) break;
    }
    return ps;
}

std::int64_t simulate_trap_exit(TrapKind kind, int k, int l, double beta, rng::Stream& rng) {
    if (!(beta >= 1.0)) throw std::domain_error("beta must be >= 1");
    if (k < 0 || l < 0) throw std::domain_error("arm lengths must be nonnegative");
    if (kind == TrapKind::a && k < 1) throw std::domain_error("type-a trap needs k >= 1");
    if (kind == TrapKind::b && l < 1) throw std::domain_error("type-b trap needs l >= 1");

    const double p_right = beta / (1.0 + beta);  // deeper into a right arm
    std::int64_t t = 0;

    if (kind == TrapKind::a) {
        // anchor edges: ray 1 + 1, arm beta; inside the arm the bias points
        // away from the exit
        const double p_exit = 2.0 / (2.0 + beta);
        int pos = 0;  // 0 = anchor, 1..k = arm
        for (;;) {
            if (pos == 0) {
                if (rng.next_unit() < p_exit) return t;
                pos = 1;
            } else if (pos == k) {
                --pos;
            } else {
                pos += (rng.next_unit() < p_right) ? 1 : -1;
            }
            ++t;
        }
    }
    if (kind == TrapKind::b) {
        // anchor edges: rung 1 + ray beta, arm 1
        const double p_exit = (1.0 + beta) / (2.0 + beta);
        int pos = 0;  // 0 = anchor, 1..l = arm (leftward)
        for (;;) {
            if (pos == 0) {
                if (rng.next_unit() < p_exit) return t;
                pos = 1;
            } else if (pos == l) {
                --pos;
            } else {
                pos += (rng.next_unit() < p_right) ? -1 : 1;
            }
            ++t;
        }
    }

    // kind c: anchor edges ray 1 + beta, rung 1; bottom vertex with arms
    const double p_exit = (1.0 + beta) / (2.0 + beta);
    bool at_anchor = true;
    int d = 0;  // bottom offset in [-l, k]
    for (;;) {
        if (at_anchor) {
            if (rng.next_unit() < p_exit) return t;
            at_anchor = false;
            d = 0;
        } else if (d == 0) {
            // edges: rung 1 up, left 1 (if l >= 1), right beta (if k >= 1)
            if (k >= 1 && l >= 1) {
                const double u = rng.next_unit();
                const double t1 = 1.0 / (2.0 + beta);
                const double t2 = 2.0 / (2.0 + beta);
                if (u < t1) at_anchor = true;
                else if (u < t2) d = -1;
                else d = 1;
            } else if (k >= 1) {
                if (rng.next_unit() < 1.0 / (1.0 + beta)) at_anchor = true;
                else d = 1;
            } else if (l >= 1) {
                if (rng.next_unit() < 0.5) at_anchor = true;
                else d = -1;
            } else {
                at_anchor = true;
            }
        } else if (d > 0) {
            if (d == k) --d;
            else d += (rng.next_unit() < p_right) ? 1 : -1;
        } else {
            if (d == -l) ++d;
            else d += (rng.next_unit() < p_right) ? 1 : -1;
        }
        ++t;
    }
}

}  // namespace ladderwalk::walk
