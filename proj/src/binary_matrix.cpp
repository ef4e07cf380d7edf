#include "fsscode/binary_matrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fss {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols) : row_adj_(rows), col_adj_(cols) {}

BinaryMatrix BinaryMatrix::from_positions(std::size_t rows, std::size_t cols,
                                          std::vector<Position> positions) {
    BinaryMatrix m(rows, cols);
    std::sort(positions.begin(), positions.end());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const auto [r, c] = positions[i];
        if (r >= rows || c >= cols) {
            throw std::invalid_argument("matrix position (" + std::to_string(r) + "," +
                                        std::to_string(c) + ") out of range");
        }
        if (i > 0 && positions[i - 1] == positions[i]) {
            throw std::invalid_argument("duplicate matrix position (" + std::to_string(r) + "," +
                                        std::to_string(c) + ")");
        }
        m.row_adj_[r].push_back(c);
        m.col_adj_[c].push_back(r);
    }
    m.ones_ = positions.size();
    return m;
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    std::vector<Position> pos;
    pos.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos.emplace_back(static_cast<Index>(i), static_cast<Index>(i));
    }
    return from_positions(n, n, std::move(pos));
}

BinaryMatrix BinaryMatrix::from_dense(const std::vector<std::vector<int>>& dense) {
    const std::size_t rows = dense.size();
    const std::size_t cols = rows == 0 ? 0 : dense.front().size();
    std::vector<Position> pos;
    for (std::size_t r = 0; r < rows; ++r) {
        if (dense[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
        for (std::size_t c = 0; c < cols; ++c) {
            if (dense[r][c] != 0) pos.emplace_back(static_cast<Index>(r), static_cast<Index>(c));
        }
    }
    return from_positions(rows, cols, std::move(pos));
}

bool BinaryMatrix::get(std::size_t r, std::size_t c) const {
    const auto& row = row_adj_.at(r);
    return std::binary_search(row.begin(), row.end(), static_cast<Index>(c));
}

std::size_t BinaryMatrix::max_row_weight() const {
    std::size_t w = 0;
    for (const auto& r : row_adj_) w = std::max(w, r.size());
    return w;
}

std::size_t BinaryMatrix::max_col_weight() const {
    std::size_t w = 0;
    for (const auto& c : col_adj_) w = std::max(w, c.size());
    return w;
}

BinaryMatrix BinaryMatrix::transposed() const {
    BinaryMatrix t;
    t.row_adj_ = col_adj_;
    t.col_adj_ = row_adj_;
    t.ones_ = ones_;
    return t;
}

BinaryMatrix BinaryMatrix::multiply(const BinaryMatrix& rhs) const {
    if (cols() != rhs.rows()) throw std::invalid_argument("matrix dimension mismatch in multiply");
    std::vector<Position> pos;
    std::vector<std::uint8_t> acc(rhs.cols(), 0);
    std::vector<Index> touched;
    for (std::size_t r = 0; r < rows(); ++r) {
        touched.clear();
        for (Index k : row_adj_[r]) {
            for (Index c : rhs.row_adj_[k]) {
                if (acc[c] == 0) touched.push_back(c);
                acc[c] ^= 1U;
            }
        }
        for (Index c : touched) {
            if (acc[c] != 0) pos.emplace_back(static_cast<Index>(r), c);
            acc[c] = 0;
        }
    }
    return from_positions(rows(), rhs.cols(), std::move(pos));
}

std::vector<std::uint8_t> BinaryMatrix::syndrome(std::span<const std::uint8_t> x) const {
    if (x.size() != cols()) throw std::invalid_argument("syndrome: vector length mismatch");
    std::vector<std::uint8_t> s(rows(), 0);
    for (std::size_t r = 0; r < rows(); ++r) {
        std::uint8_t acc = 0;
        for (Index c : row_adj_[r]) acc ^= static_cast<std::uint8_t>(x[c] & 1U);
        s[r] = acc;
    }
    return s;
}

std::size_t BinaryMatrix::gf2_rank() const {
    const std::size_t words = (cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> m(rows(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t r = 0; r < rows(); ++r) {
        for (Index c : row_adj_[r]) m[r][c / 64] |= std::uint64_t{1} << (c % 64);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols() && rank < rows(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t pivot = rank;
        while (pivot < rows() && (m[pivot][w] & bit) == 0) ++pivot;
        if (pivot == rows()) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < rows(); ++r) {
            if (r != rank && (m[r][w] & bit) != 0) {
                for (std::size_t k = w; k < words; ++k) m[r][k] ^= m[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> BinaryMatrix::to_dense() const {
    std::vector<std::vector<int>> d(rows(), std::vector<int>(cols(), 0));
    for (std::size_t r = 0; r < rows(); ++r) {
        for (Index c : row_adj_[r]) d[r][c] = 1;
    }
    return d;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return Rational{num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

std::optional<Rational> exact_rate(const BinaryMatrix& h) {
    if (h.cols() == 0) throw std::invalid_argument("exact_rate: matrix has no columns");
    if (h.cols() > kMaxRankColumns) return std::nullopt;
    const auto n = static_cast<std::int64_t>(h.cols());
    const auto rank = static_cast<std::int64_t>(h.gf2_rank());
    return Rational::make(n - rank, n);
}

}  // namespace fss
