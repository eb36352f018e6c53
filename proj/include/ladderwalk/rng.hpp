#pragma once

// Counter-based random streams.
//
// Every variate in the project is addressed by (key, counter) rather than
// drawn from shared mutable state. Keys are derived from the master seed by
// domain/replica tags, so replicas can run in any order (or in parallel) and
// lazily extended structures see the same values no matter who asks first.

#include <cstdint>
#include <limits>

namespace ladderwalk::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer: bijective, strong avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Uniform 64-bit value at a given counter of a keyed stream.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
    return mix64(key + (counter + 1) * kGamma);
}

// Child key for a tagged sub-stream (domain, replica, window index, ...).
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t tag) {
    return mix64(key ^ mix64(tag + 0x632BE59BD9B4E019ull));
}

constexpr std::uint64_t zigzag(std::int64_t n) {
    return (static_cast<std::uint64_t>(n) << 1) ^ static_cast<std::uint64_t>(n >> 63);
}

// Uniform double in [0, 1), 53 random bits.
constexpr double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1]. Never zero, so logs and CDF inversions are safe.
constexpr double to_unit_open(std::uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

// Unbiased-enough integer in {0, ..., n-1} (fixed-point multiply).
constexpr std::uint64_t below(std::uint64_t x, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(n)) >> 64);
}

// Sequential view over a keyed stream.
class Stream {
  public:
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return at(key_, counter_++); }
    double next_unit() { return to_unit(next_u64()); }
    double next_unit_open() { return to_unit_open(next_u64()); }
    std::uint64_t next_below(std::uint64_t n) { return below(next_u64(), n); }
    bool next_bit() { return (next_u64() & 1ull) != 0; }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Geometric(1-alpha) on {0,1,2,...}: P[X = k] = (1-alpha) alpha^k.
// Inverse CDF via iterated multiplication: the count of j >= 1 with
// u <= alpha^j. IEEE multiply/compare only, so results are identical across
// platforms; u comes from to_unit_open so u > 0 and the loop terminates.
inline int sample_geometric(double u_open, double alpha) {
    if (alpha <= 0.0) return 0;
    int k = 0;
    double t = alpha;
    while (u_open <= t) {
        ++k;
        t *= alpha;
    }
    return k;
}

// Size-biased gap law: P[G = k] proportional to k^2 alpha^(k-1), k >= 1,
// normalized by (1-alpha)^3/(1+alpha). CDF inversion; tail terms decay
// geometrically so the loop is short for any alpha < 1.
inline int sample_size_biased_gap(double u_open, double alpha) {
    const double base = (1.0 - alpha) / (1.0 + alpha) * (1.0 - alpha) * (1.0 - alpha);
    double cum = 0.0;
    double apow = 1.0;  // alpha^(k-1)
    for (int k = 1;; ++k) {
        const double pk = base * apow * static_cast<double>(k) * static_cast<double>(k);
        cum += pk;
        if (u_open <= cum) return k;
        apow *= alpha;
        if (pk < 1e-300 && k > 1) return k;  // fp tail exhausted
    }
}

}  // namespace ladderwalk::rng
