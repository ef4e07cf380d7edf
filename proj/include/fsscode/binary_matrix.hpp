#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fss {

/// Sparse (0,1)-matrix kept as sorted per-row and per-column index lists.
/// Both views are built together and are always consistent.
class BinaryMatrix {
public:
    using Index = std::uint32_t;
    using Position = std::pair<Index, Index>;

    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols);

    /// Throws std::invalid_argument on out-of-range or duplicate positions.
    static BinaryMatrix from_positions(std::size_t rows, std::size_t cols,
                                       std::vector<Position> positions);
    static BinaryMatrix identity(std::size_t n);
    static BinaryMatrix from_dense(const std::vector<std::vector<int>>& dense);

    std::size_t rows() const noexcept { return row_adj_.size(); }
    std::size_t cols() const noexcept { return col_adj_.size(); }
    std::size_t ones() const noexcept { return ones_; }

    const std::vector<Index>& row(std::size_t r) const { return row_adj_.at(r); }
    const std::vector<Index>& col(std::size_t c) const { return col_adj_.at(c); }

    bool get(std::size_t r, std::size_t c) const;
    std::size_t max_row_weight() const;
    std::size_t max_col_weight() const;

    BinaryMatrix transposed() const;
    /// Product over GF(2).
    BinaryMatrix multiply(const BinaryMatrix& rhs) const;
    /// H * x over GF(2); x has one entry per column.
    std::vector<std::uint8_t> syndrome(std::span<const std::uint8_t> x) const;

    std::size_t gf2_rank() const;

    std::vector<std::vector<int>> to_dense() const;

    friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
        return a.col_adj_.size() == b.col_adj_.size() && a.row_adj_ == b.row_adj_;
    }

private:
    std::vector<std::vector<Index>> row_adj_;
    std::vector<std::vector<Index>> col_adj_;
    std::size_t ones_ = 0;
};

/// Exact non-negative rational, always reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

/// Dense elimination is used up to this many columns; beyond it exact_rate gives up.
inline constexpr std::size_t kMaxRankColumns = 20000;

/// 1 - rank_GF2(H)/columns(H); nullopt when H is wider than kMaxRankColumns.
std::optional<Rational> exact_rate(const BinaryMatrix& h);

}  // namespace fss
