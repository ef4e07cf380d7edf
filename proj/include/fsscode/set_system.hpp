#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "fsscode/binary_matrix.hpp"

namespace fss {

/// Point index, 0-based internally. Everything serialized is 1-based.
using Point = std::uint32_t;
using Block = std::vector<Point>;

/// A finite set system (V, B): points 0..v-1 and an ordered collection of
/// blocks. Blocks are stored sorted; repeated blocks are allowed and shift
/// sequences follow block order.
class SetSystem {
public:
    SetSystem() = default;

    /// Validates 0-based blocks. Throws std::invalid_argument on an empty
    /// block, an out-of-range or repeated point, or t above the largest block.
    static SetSystem make(std::size_t v, std::vector<Block> blocks, std::size_t t = 2);

    std::size_t v() const noexcept { return v_; }
    std::size_t b() const noexcept { return blocks_.size(); }
    std::size_t t() const noexcept { return t_; }

    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Block& block(std::size_t j) const { return blocks_.at(j); }

    std::size_t incidence_count() const;
    std::size_t max_block_size() const;

    friend bool operator==(const SetSystem&, const SetSystem&) = default;

private:
    SetSystem(std::size_t v, std::vector<Block> blocks, std::size_t t)
        : v_(v), t_(t), blocks_(std::move(blocks)) {}

    std::size_t v_ = 0;
    std::size_t t_ = 2;
    std::vector<Block> blocks_;
};

/// Validates raw 1-based input (points in 1..v).
SetSystem validate_fss(std::size_t v, const std::vector<std::vector<long long>>& blocks,
                       std::size_t t = 2);

struct SystemStats {
    std::vector<std::size_t> block_sizes;   // K, in block order
    std::vector<std::size_t> replication;   // R, r_x per point
    /// lambda_hist[i][c] = number of i-subsets of V contained in exactly c
    /// blocks, for 0 <= i <= t. Counts of zero are included when some
    /// i-subset is uncovered.
    std::vector<std::map<std::size_t, std::uint64_t>> lambda_hist;

    /// The distinct coverage counts for i-subsets.
    std::set<std::size_t> lambda(std::size_t i) const;
};

SystemStats block_stats(const SetSystem& fss);

/// True iff some block contains every given point. The empty set is co-block.
bool co_block(const SetSystem& fss, std::span<const Point> points);

/// Rows are blocks in order; columns are the (t-1)-subsets of V in
/// lexicographic order that lie in at least `min_replication` blocks.
BinaryMatrix incidence_matrix(const SetSystem& fss, std::size_t min_replication = 2);

/// Column labels of incidence_matrix, each a sorted (t-1)-subset.
std::vector<Block> incidence_columns(const SetSystem& fss, std::size_t min_replication = 2);

/// Block i is the support of row i; v is the column count; t = 2.
SetSystem from_incidence(const BinaryMatrix& h);

}  // namespace fss
