// Timing harness: the specialized step kernel against the generic
// distribution-based stepper, and the parallel replica fan-out against the
// serial one. The parallel and serial estimates must agree bit for bit.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>

#include "ladderwalk/closed_form.hpp"
#include "ladderwalk/mc.hpp"
#include "ladderwalk/parallel.hpp"
#include "ladderwalk/rng.hpp"
#include "ladderwalk/tree.hpp"
#include "ladderwalk/walk.hpp"

using namespace ladderwalk;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::int64_t steps = argc > 1 ? std::atoll(argv[1]) : 2'000'000;
    const int replicas = argc > 2 ? std::atoi(argv[2]) : 64;
    const double alpha = closed_form::alpha_from_c(1.0);
    const double beta = 2.0;
    const std::uint64_t seed = 99;

    // single-walker kernel timing, fast vs reference
    {
        tree::TreeWindow w1(rng::derive(seed, 1), alpha, 1, 1);
        walk::WalkerState s1 = walk::WalkerState::at(w1.ray_start());
        const walk::StepKernel kern(beta);
        rng::Stream r1(rng::derive(seed, 2));
        auto t0 = std::chrono::steady_clock::now();
        for (std::int64_t i = 0; i < steps; ++i) walk::step(s1, w1, kern, r1);
        const double fast = seconds_since(t0);

        tree::TreeWindow w2(rng::derive(seed, 1), alpha, 1, 1);
        walk::WalkerState s2 = walk::WalkerState::at(w2.ray_start());
        rng::Stream r2(rng::derive(seed, 2));
        t0 = std::chrono::steady_clock::now();
        for (std::int64_t i = 0; i < steps; ++i) walk::step_reference(s2, w2, beta, r2);
        const double ref = seconds_since(t0);

        if (!(s1.pos == s2.pos)) {
            std::fprintf(stderr, "kernel mismatch: fast and reference paths diverged\n");
            return 1;
        }
        std::printf("step kernel:   %.1f ns/step fast, %.1f ns/step reference (x%.2f)\n",
                    fast / static_cast<double>(steps) * 1e9,
                    ref / static_cast<double>(steps) * 1e9, ref / fast);
    }

    // replica fan-out timing, serial vs parallel
    {
        const auto p = closed_form::ModelParams::from_alpha(alpha, beta, seed);
        const std::int64_t per = steps / 16;
        auto t0 = std::chrono::steady_clock::now();
        const auto serial = mc::estimate_speed(p, per, replicas, {1});
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto parallel = mc::estimate_speed(p, per, replicas, {0});
        const double tp = seconds_since(t0);
        if (serial.point != parallel.point || serial.std_error != parallel.std_error) {
            std::fprintf(stderr, "replica mismatch: serial and parallel folds differ\n");
            return 1;
        }
        std::printf("replica sweep: %d x %" PRId64 " steps: serial %.3f s, parallel %.3f s (x%.2f)\n",
                    replicas, per, ts, tp, ts / tp);
        std::printf("               v_mc = %.6f +/- %.6f (identical across modes)\n",
                    serial.point, serial.std_error);
    }
    return 0;
}
