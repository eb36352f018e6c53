#pragma once

// The random spanning tree of the ladder, materialized lazily as a window of
// i.i.d. renewal blocks around a size-biased origin block. A window knows,
// per column, which horizontal edge is missing, where the rungs are, and
// which vertices lie on the bi-infinite ray.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ladderwalk/common.hpp"
#include "ladderwalk/rng.hpp"

namespace ladderwalk::tree {

// One interior renewal cell: gap F to the right of the rung, F' to its left,
// and the row W of the missing horizontal edge at the cell's left boundary.
struct Block {
    int f = 0;
    int f_prime = 0;
    int w = 0;
};

// The cell containing column 0, size-biased and uniformly positioned.
struct OriginBlock {
    int g0 = 1;            // gap length, >= 1
    std::int64_t h0 = 0;   // left boundary, -g0 < h0 <= 0
    int f0_prime = 0;      // rung offset from the left boundary, in [0, g0-1]
    int w0 = 0;

    int f0() const { return g0 - 1 - f0_prime; }
    std::int64_t v0() const { return h0 + f0_prime; }
};

enum class Side { left, right };

struct TrapDescriptor {
    TrapKind kind = TrapKind::c;
    Vertex anchor;
    int k = 0;  // arm to the right
    int l = 0;  // arm to the left
};

// Per-column structure bits.
namespace colbit {
inline constexpr std::uint8_t kMissing = 1;      // the h-edge (m-1, m) is absent in one row
inline constexpr std::uint8_t kMissingRow = 2;   // which row (valid when kMissing)
inline constexpr std::uint8_t kRung = 4;
inline constexpr std::uint8_t kRay0 = 8;
inline constexpr std::uint8_t kRay1 = 16;
inline constexpr std::uint8_t kRayFinal = 32;
}  // namespace colbit

// Random-stream field ids of a block; exposed so callers can pre-read a field
// (e.g. to pin a conditioned origin consistently with the rest of the tree).
enum class BlockField : std::uint64_t { f = 0, f_prime = 1, w = 2, g0 = 3, h0 = 4, f0_prime = 5, w0 = 6 };

inline std::uint64_t block_field_u64(std::uint64_t tree_key, std::int64_t n, BlockField field) {
    return rng::at(tree_key, rng::zigzag(n) * 8 + static_cast<std::uint64_t>(field));
}

struct WindowOptions {
    std::optional<OriginBlock> pin_origin;  // force the origin cell
    std::optional<int> pin_w1;              // force W_1 (conditioned-origin runs)
    std::optional<int> force_w;             // force every W_n (straight-ray tree)
};

class TreeWindow {
  public:
    // Samples the origin block plus n_right blocks to the right and n_left to
    // the left (both >= 1). All sampling is addressed by (tree_key, block
    // index, field), so later extensions are independent of access order.
    TreeWindow(std::uint64_t tree_key, double alpha, int n_left, int n_right,
               WindowOptions opt = {});

    // A fixed window built from explicit blocks; not extendable.
    static TreeWindow from_blocks(const OriginBlock& origin, std::vector<Block> left,
                                  std::vector<Block> right);

    void extend(Side side, int n_blocks);
    bool extendable() const { return has_stream_; }

    double alpha() const { return alpha_; }
    std::int64_t n_left() const { return n_left_; }
    std::int64_t n_right() const { return n_right_; }

    const OriginBlock& origin() const { return origin_; }
    Block block(std::int64_t n) const;                 // n != 0
    std::int64_t h(std::int64_t n) const;              // n in [-n_left, n_right + 1]
    std::int64_t v(std::int64_t n) const;              // n in [-n_left, n_right]
    int w(std::int64_t n) const;

    std::int64_t col_lo() const { return h(-n_left_); }
    std::int64_t col_hi() const { return h(n_right_ + 1) - 1; }

    // Interval the walker may occupy without touching unmaterialized columns;
    // stepping outside it must first extend the window.
    std::int64_t safe_lo() const { return safe_lo_; }
    std::int64_t safe_hi() const { return safe_hi_; }

    std::uint8_t col_bits(std::int64_t m) const { return cols_at(m); }
    bool rung_at(std::int64_t m) const { return cols_at(m) & colbit::kRung; }
    bool h_edge_present(int row, std::int64_t m) const {
        const std::uint8_t b = cols_at(m);
        return !((b & colbit::kMissing) && ((b >> 1) & 1) == static_cast<unsigned>(row));
    }
    bool ray_finalized(std::int64_t m) const { return cols_at(m) & colbit::kRayFinal; }
    bool on_ray(int row, std::int64_t m) const {
        const std::uint8_t b = cols_at(m);
        return b & (row == 0 ? colbit::kRay0 : colbit::kRay1);
    }

    // First ray vertex at column 0 in ray order.
    Vertex ray_start() const;

    // Index of the block whose span contains column m.
    std::int64_t block_index_of_col(std::int64_t m) const;

    // One line per block: "n H V F F' W", origin prefixed "O G0 H0 F0' W0".
    void dump(std::ostream& os) const;

  private:
    TreeWindow() = default;

    template <class T>
    struct TwoSided {
        std::vector<T> pos;  // index i >= 0
        std::vector<T> neg;  // index i <= -1 stored at neg[-1 - i]

        const T& at(std::int64_t i) const {
            return i >= 0 ? pos[static_cast<std::size_t>(i)]
                          : neg[static_cast<std::size_t>(-1 - i)];
        }
        T& ref(std::int64_t i) {
            if (i >= 0) {
                if (static_cast<std::size_t>(i) >= pos.size()) pos.resize(i + 1);
                return pos[static_cast<std::size_t>(i)];
            }
            const std::size_t j = static_cast<std::size_t>(-1 - i);
            if (j >= neg.size()) neg.resize(j + 1);
            return neg[j];
        }
    };

    std::uint8_t cols_at(std::int64_t m) const {
#ifndef NDEBUG
        if (m < col_lo() || m > col_hi()) throw std::out_of_range("column not materialized");
#endif
        return cols_.at(m);
    }

    Block sample_block(std::int64_t n) const;
    void append_block(std::int64_t n, const Block& b);   // n = n_right_ + 1
    void prepend_block(std::int64_t n, const Block& b);  // n = -n_left_ - 1
    void fill_block_cols(std::int64_t n, int w_row);
    void finalize_ray_bits(std::int64_t n);
    void refresh_safe_range();

    double alpha_ = 0.5;
    bool has_stream_ = false;
    std::uint64_t tree_key_ = 0;
    WindowOptions opt_;

    OriginBlock origin_;
    std::int64_t n_left_ = 0;
    std::int64_t n_right_ = 0;

    TwoSided<std::int64_t> h_;  // boundaries, index n in [-n_left, n_right + 1]
    TwoSided<std::int64_t> v_;  // rung columns, index n in [-n_left, n_right]
    TwoSided<std::uint8_t> cols_;

    std::int64_t safe_lo_ = 0;
    std::int64_t safe_hi_ = 0;
};

// Sample one interior cell / the origin cell from a keyed stream position.
Block sample_interior_block(std::uint64_t tree_key, std::int64_t n, double alpha);
OriginBlock sample_origin_block(std::uint64_t tree_key, double alpha);

// Convenience wrappers matching the sampling contract of TreeWindow.
TreeWindow build_window(std::uint64_t tree_key, double alpha, int n_left, int n_right,
                        WindowOptions opt = {});

// The unique bi-infinite self-avoiding path, enumerated left to right over
// the finalized part of a window. Index 0 sits at the first ray vertex with
// column 0; columns are nondecreasing with steps in {0, +1}, and a 0-step is
// exactly a rung crossing.
class RayEnumeration {
  public:
    explicit RayEnumeration(const TreeWindow& w);

    std::int64_t i_lo() const { return i_lo_; }
    std::int64_t i_hi() const { return i_lo_ + static_cast<std::int64_t>(rows_.size()) - 1; }

    Vertex at(std::int64_t i) const {
        const std::size_t j = idx(i);
        return {static_cast<int>(rows_[j]), cols_[j]};
    }
    std::int64_t col(std::int64_t i) const { return cols_[idx(i)]; }
    int row(std::int64_t i) const { return rows_[idx(i)]; }

    std::optional<std::int64_t> index_of(const Vertex& v) const;

    // Conductance exponent of the ray edge (phi(i), phi(i+1)): the larger
    // column of its endpoints.
    std::int64_t edge_exponent(std::int64_t i) const {
        const std::size_t j = idx(i);
        if (j + 1 >= cols_.size()) throw std::out_of_range("ray edge out of range");
        return cols_[j] == cols_[j + 1] ? cols_[j] : cols_[j + 1];
    }

    std::int64_t size() const { return static_cast<std::int64_t>(rows_.size()); }

  private:
    std::size_t idx(std::int64_t i) const {
        const std::int64_t j = i - i_lo_;
        if (j < 0 || j >= static_cast<std::int64_t>(rows_.size())) {
            throw std::out_of_range("ray index out of range");
        }
        return static_cast<std::size_t>(j);
    }

    std::int64_t i_lo_ = 0;
    std::vector<std::uint8_t> rows_;
    std::vector<std::int64_t> cols_;
    std::int64_t col_lo_ = 0;
    std::vector<std::int64_t> col_base_;  // first ray index per column
};

RayEnumeration ray_of(const TreeWindow& w);

// Every non-ray edge of the finalized window, grouped into traps.
std::vector<TrapDescriptor> traps_of(const TreeWindow& w);

}  // namespace ladderwalk::tree
