#include "ladderwalk/tree.hpp"

#include <cmath>
#include <ostream>

namespace ladderwalk::tree {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

void validate_origin(const OriginBlock& o) {
    require(o.g0 >= 1, "origin gap must be >= 1");
    require(-o.g0 < o.h0 && o.h0 <= 0, "origin boundary out of range");
    require(0 <= o.f0_prime && o.f0_prime <= o.g0 - 1, "origin rung offset out of range");
    require(o.w0 == 0 || o.w0 == 1, "row flag must be 0 or 1");
}

}  // namespace

Block sample_interior_block(std::uint64_t tree_key, std::int64_t n, double alpha) {
    Block b;
    b.f = rng::sample_geometric(
        rng::to_unit_open(block_field_u64(tree_key, n, BlockField::f)), alpha);
    b.f_prime = rng::sample_geometric(
        rng::to_unit_open(block_field_u64(tree_key, n, BlockField::f_prime)), alpha);
    b.w = static_cast<int>(block_field_u64(tree_key, n, BlockField::w) & 1ull);
    return b;
}

OriginBlock sample_origin_block(std::uint64_t tree_key, double alpha) {
    OriginBlock o;
    o.g0 = rng::sample_size_biased_gap(
        rng::to_unit_open(block_field_u64(tree_key, 0, BlockField::g0)), alpha);
    o.h0 = -static_cast<std::int64_t>(
        rng::below(block_field_u64(tree_key, 0, BlockField::h0), o.g0));
    o.f0_prime = static_cast<int>(
        rng::below(block_field_u64(tree_key, 0, BlockField::f0_prime), o.g0));
    o.w0 = static_cast<int>(block_field_u64(tree_key, 0, BlockField::w0) & 1ull);
    return o;
}

TreeWindow::TreeWindow(std::uint64_t tree_key, double alpha, int n_left, int n_right,
                       WindowOptions opt) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "alpha must be in (0,1)");
    require(n_left >= 1 && n_right >= 1, "window needs at least one block per side");
    alpha_ = alpha;
    has_stream_ = true;
    tree_key_ = tree_key;
    opt_ = opt;

    origin_ = opt_.pin_origin ? *opt_.pin_origin : sample_origin_block(tree_key_, alpha_);
    if (opt_.force_w) origin_.w0 = *opt_.force_w;
    validate_origin(origin_);

    h_.ref(0) = origin_.h0;
    h_.ref(1) = origin_.h0 + origin_.g0;
    v_.ref(0) = origin_.v0();
    fill_block_cols(0, origin_.w0);
    extend(Side::right, n_right);
    extend(Side::left, n_left);
}

TreeWindow TreeWindow::from_blocks(const OriginBlock& origin, std::vector<Block> left,
                                   std::vector<Block> right) {
    require(!left.empty() && !right.empty(), "window needs at least one block per side");
    validate_origin(origin);
    TreeWindow w;
    w.origin_ = origin;
    w.h_.ref(0) = origin.h0;
    w.h_.ref(1) = origin.h0 + origin.g0;
    w.v_.ref(0) = origin.v0();
    w.fill_block_cols(0, origin.w0);
    for (std::size_t i = 0; i < right.size(); ++i) {
        w.append_block(static_cast<std::int64_t>(i) + 1, right[i]);
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
        w.prepend_block(-static_cast<std::int64_t>(i) - 1, left[i]);
    }
    w.refresh_safe_range();
    return w;
}

Block TreeWindow::sample_block(std::int64_t n) const {
    Block b = sample_interior_block(tree_key_, n, alpha_);
    if (opt_.force_w) {
        b.w = *opt_.force_w;
    } else if (n == 1 && opt_.pin_w1) {
        b.w = *opt_.pin_w1;
    }
    return b;
}

void TreeWindow::append_block(std::int64_t n, const Block& b) {
    require(b.f >= 0 && b.f_prime >= 0 && (b.w == 0 || b.w == 1), "malformed block");
    h_.ref(n + 1) = h_.at(n) + b.f + b.f_prime + 1;
    v_.ref(n) = h_.at(n) + b.f_prime;
    n_right_ = n;
    fill_block_cols(n, b.w);
    finalize_ray_bits(n - 1);
}

void TreeWindow::prepend_block(std::int64_t n, const Block& b) {
    require(b.f >= 0 && b.f_prime >= 0 && (b.w == 0 || b.w == 1), "malformed block");
    h_.ref(n) = h_.at(n + 1) - (b.f + b.f_prime + 1);
    v_.ref(n) = h_.at(n) + b.f_prime;
    n_left_ = -n;
    fill_block_cols(n, b.w);
    finalize_ray_bits(n);
}

void TreeWindow::extend(Side side, int n_blocks) {
    require(n_blocks >= 0, "cannot extend by a negative count");
    if (!has_stream_ && n_blocks > 0) {
        throw std::logic_error("fixed window cannot be extended");
    }
    for (int i = 0; i < n_blocks; ++i) {
        if (side == Side::right) {
            const std::int64_t n = n_right_ + 1;
            append_block(n, sample_block(n));
        } else {
            const std::int64_t n = -n_left_ - 1;
            prepend_block(n, sample_block(n));
        }
    }
    refresh_safe_range();
}

void TreeWindow::fill_block_cols(std::int64_t n, int w_row) {
    // Structure bits for the block's own span. The w of this block lives in
    // the missing-edge marker at its left boundary.
    const std::int64_t lo = h_.at(n);
    const std::int64_t hi = h_.at(n + 1) - 1;
    for (std::int64_t m = lo; m <= hi; ++m) cols_.ref(m) = 0;
    cols_.ref(lo) = static_cast<std::uint8_t>(
        colbit::kMissing | (w_row ? colbit::kMissingRow : 0));
    cols_.ref(v_.at(n)) |= colbit::kRung;
}

void TreeWindow::finalize_ray_bits(std::int64_t n) {
    const int r1 = 1 - w(n);
    const int r2 = 1 - w(n + 1);
    const std::uint8_t bit1 = r1 == 0 ? colbit::kRay0 : colbit::kRay1;
    const std::uint8_t bit2 = r2 == 0 ? colbit::kRay0 : colbit::kRay1;
    const std::int64_t vn = v_.at(n);
    for (std::int64_t m = h_.at(n); m <= vn; ++m) cols_.ref(m) |= bit1;
    for (std::int64_t m = vn; m < h_.at(n + 1); ++m) cols_.ref(m) |= bit2;
    for (std::int64_t m = h_.at(n); m < h_.at(n + 1); ++m) cols_.ref(m) |= colbit::kRayFinal;
}

void TreeWindow::refresh_safe_range() {
    safe_lo_ = h_.at(-n_left_ + 1);
    safe_hi_ = h_.at(n_right_);
}

Block TreeWindow::block(std::int64_t n) const {
    require(n != 0, "index 0 is the origin block");
    require(-n_left_ <= n && n <= n_right_, "block not materialized");
    Block b;
    b.f_prime = static_cast<int>(v_.at(n) - h_.at(n));
    b.f = static_cast<int>(h_.at(n + 1) - 1 - v_.at(n));
    b.w = w(n);
    return b;
}

std::int64_t TreeWindow::h(std::int64_t n) const {
    require(-n_left_ <= n && n <= n_right_ + 1, "boundary not materialized");
    return h_.at(n);
}

std::int64_t TreeWindow::v(std::int64_t n) const {
    require(-n_left_ <= n && n <= n_right_, "block not materialized");
    return v_.at(n);
}

int TreeWindow::w(std::int64_t n) const {
    require(-n_left_ <= n && n <= n_right_, "block not materialized");
    return (cols_.at(h_.at(n)) >> 1) & 1;
}

Vertex TreeWindow::ray_start() const {
    // Before the rung of the origin block the ray runs opposite the missing
    // edge at H0, after it opposite the one at H1.
    const int row = (0 <= v_.at(0)) ? 1 - origin_.w0 : 1 - w(1);
    return {row, 0};
}

std::int64_t TreeWindow::block_index_of_col(std::int64_t m) const {
    require(col_lo() <= m && m <= col_hi(), "column not materialized");
    std::int64_t lo = -n_left_;
    std::int64_t hi = n_right_;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (h_.at(mid) <= m) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

void TreeWindow::dump(std::ostream& os) const {
    for (std::int64_t n = -n_left_; n <= n_right_; ++n) {
        if (n == 0) {
            os << "O " << origin_.g0 << ' ' << origin_.h0 << ' ' << origin_.f0_prime << ' '
               << origin_.w0 << '\n';
        } else {
            const Block b = block(n);
            os << n << ' ' << h_.at(n) << ' ' << v_.at(n) << ' ' << b.f << ' ' << b.f_prime
               << ' ' << b.w << '\n';
        }
    }
}

TreeWindow build_window(std::uint64_t tree_key, double alpha, int n_left, int n_right,
                        WindowOptions opt) {
    return TreeWindow(tree_key, alpha, n_left, n_right, opt);
}

RayEnumeration::RayEnumeration(const TreeWindow& w) {
    const std::int64_t n_lo = -w.n_left();
    const std::int64_t n_hi = w.n_right() - 1;  // last block with final ray bits
    if (n_hi < 0) throw std::domain_error("window too short for a ray enumeration");
    col_lo_ = w.h(n_lo);
    const std::int64_t n_cols = w.h(n_hi + 1) - col_lo_;
    col_base_.assign(static_cast<std::size_t>(n_cols), -1);

    std::int64_t zero_pos = -1;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const int r1 = 1 - w.w(n);
        const int r2 = 1 - w.w(n + 1);
        const std::int64_t vn = w.v(n);
        for (std::int64_t m = w.h(n); m <= vn; ++m) {
            if (col_base_[static_cast<std::size_t>(m - col_lo_)] < 0) {
                col_base_[static_cast<std::size_t>(m - col_lo_)] =
                    static_cast<std::int64_t>(rows_.size());
            }
            if (m == 0 && zero_pos < 0) zero_pos = static_cast<std::int64_t>(rows_.size());
            rows_.push_back(static_cast<std::uint8_t>(r1));
            cols_.push_back(m);
        }
        if (r1 != r2) {
            if (vn == 0 && zero_pos < 0) zero_pos = static_cast<std::int64_t>(rows_.size()) - 1;
            rows_.push_back(static_cast<std::uint8_t>(r2));
            cols_.push_back(vn);
        }
        for (std::int64_t m = vn + 1; m < w.h(n + 1); ++m) {
            if (col_base_[static_cast<std::size_t>(m - col_lo_)] < 0) {
                col_base_[static_cast<std::size_t>(m - col_lo_)] =
                    static_cast<std::int64_t>(rows_.size());
            }
            if (m == 0 && zero_pos < 0) zero_pos = static_cast<std::int64_t>(rows_.size());
            rows_.push_back(static_cast<std::uint8_t>(r2));
            cols_.push_back(m);
        }
    }
    if (zero_pos < 0) throw std::logic_error("ray enumeration does not cover column 0");
    i_lo_ = -zero_pos;
}

std::optional<std::int64_t> RayEnumeration::index_of(const Vertex& v) const {
    if (v.col < col_lo_ ||
        v.col >= col_lo_ + static_cast<std::int64_t>(col_base_.size())) {
        return std::nullopt;
    }
    const std::int64_t base = col_base_[static_cast<std::size_t>(v.col - col_lo_)];
    if (base < 0) return std::nullopt;
    const std::size_t j = static_cast<std::size_t>(base);
    if (rows_[j] == static_cast<std::uint8_t>(v.row)) return i_lo_ + base;
    if (j + 1 < rows_.size() && cols_[j + 1] == v.col &&
        rows_[j + 1] == static_cast<std::uint8_t>(v.row)) {
        return i_lo_ + base + 1;
    }
    return std::nullopt;
}

RayEnumeration ray_of(const TreeWindow& w) { return RayEnumeration(w); }

std::vector<TrapDescriptor> traps_of(const TreeWindow& w) {
    std::vector<TrapDescriptor> out;
    for (std::int64_t n = -w.n_left(); n <= w.n_right() - 1; ++n) {
        const int wn = w.w(n);
        const int wn1 = w.w(n + 1);
        const std::int64_t vn = w.v(n);
        const int fp = static_cast<int>(vn - w.h(n));
        const int f = static_cast<int>(w.h(n + 1) - 1 - vn);
        if (wn == wn1) {
            out.push_back({TrapKind::c, {1 - wn, vn}, f, fp});
        } else {
            if (f >= 1) out.push_back({TrapKind::a, {1 - wn, vn}, f, 0});
            if (fp >= 1) out.push_back({TrapKind::b, {wn, vn}, 0, fp});
        }
    }
    return out;
}

}  // namespace ladderwalk::tree
