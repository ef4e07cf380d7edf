#include "fsscode/set_system.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fss {

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

// Calls f on every size-k subset of `items` (items sorted -> subsets sorted, lexicographic).
template <class F>
void for_each_subset(const Block& items, std::size_t k, F&& f) {
    if (k > items.size()) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    Block subset(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = items[idx[i]];
        f(subset);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::map<Block, std::size_t> subset_coverage(const SetSystem& fss, std::size_t k) {
    std::map<Block, std::size_t> cover;
    for (const auto& blk : fss.blocks()) {
        for_each_subset(blk, k, [&](const Block& s) { ++cover[s]; });
    }
    return cover;
}

}  // namespace

SetSystem SetSystem::make(std::size_t v, std::vector<Block> blocks, std::size_t t) {
    if (t == 0) throw std::invalid_argument("t must be positive");
    std::size_t kmax = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        auto& blk = blocks[j];
        if (blk.empty()) throw std::invalid_argument("block " + std::to_string(j + 1) + " is empty");
        std::sort(blk.begin(), blk.end());
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] >= v) {
                throw std::invalid_argument("point " + std::to_string(blk[i] + 1) +
                                            " out of range in block " + std::to_string(j + 1));
            }
            if (i > 0 && blk[i] == blk[i - 1]) {
                throw std::invalid_argument("point " + std::to_string(blk[i] + 1) +
                                            " repeated in block " + std::to_string(j + 1));
            }
        }
        kmax = std::max(kmax, blk.size());
    }
    if (!blocks.empty() && t > kmax) {
        throw std::invalid_argument("t = " + std::to_string(t) + " exceeds max block size " +
                                    std::to_string(kmax));
    }
    return SetSystem(v, std::move(blocks), t);
}

std::size_t SetSystem::incidence_count() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.size();
    return n;
}

std::size_t SetSystem::max_block_size() const {
    std::size_t k = 0;
    for (const auto& b : blocks_) k = std::max(k, b.size());
    return k;
}

SetSystem validate_fss(std::size_t v, const std::vector<std::vector<long long>>& blocks,
                       std::size_t t) {
    std::vector<Block> zero_based;
    zero_based.reserve(blocks.size());
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        Block blk;
        blk.reserve(blocks[j].size());
        for (long long p : blocks[j]) {
            if (p < 1 || static_cast<unsigned long long>(p) > v) {
                throw std::invalid_argument("point " + std::to_string(p) + " out of range in block " +
                                            std::to_string(j + 1));
            }
            blk.push_back(static_cast<Point>(p - 1));
        }
        zero_based.push_back(std::move(blk));
    }
    return SetSystem::make(v, std::move(zero_based), t);
}

std::set<std::size_t> SystemStats::lambda(std::size_t i) const {
    std::set<std::size_t> s;
    for (const auto& [count, _] : lambda_hist.at(i)) s.insert(count);
    return s;
}

SystemStats block_stats(const SetSystem& fss) {
    SystemStats st;
    st.replication.assign(fss.v(), 0);
    for (const auto& blk : fss.blocks()) {
        st.block_sizes.push_back(blk.size());
        for (Point p : blk) ++st.replication[p];
    }
    st.lambda_hist.resize(fss.t() + 1);
    for (std::size_t i = 0; i <= fss.t(); ++i) {
        auto& hist = st.lambda_hist[i];
        const auto cover = subset_coverage(fss, i);
        for (const auto& [_, count] : cover) ++hist[count];
        const std::uint64_t total = binomial(fss.v(), i);
        if (total > cover.size()) hist[0] += total - cover.size();
    }
    return st;
}

bool co_block(const SetSystem& fss, std::span<const Point> points) {
    for (const auto& blk : fss.blocks()) {
        const bool all = std::all_of(points.begin(), points.end(), [&](Point p) {
            return std::binary_search(blk.begin(), blk.end(), p);
        });
        if (all) return true;
    }
    return false;
}

std::vector<Block> incidence_columns(const SetSystem& fss, std::size_t min_replication) {
    if (min_replication == 0) throw std::invalid_argument("min_replication must be positive");
    std::vector<Block> cols;
    for (const auto& [subset, count] : subset_coverage(fss, fss.t() - 1)) {
        if (count >= min_replication) cols.push_back(subset);
    }
    return cols;
}

BinaryMatrix incidence_matrix(const SetSystem& fss, std::size_t min_replication) {
    const auto cols = incidence_columns(fss, min_replication);
    std::map<Block, BinaryMatrix::Index> col_of;
    for (std::size_t c = 0; c < cols.size(); ++c) col_of.emplace(cols[c], static_cast<BinaryMatrix::Index>(c));
    std::vector<BinaryMatrix::Position> pos;
    for (std::size_t r = 0; r < fss.b(); ++r) {
        for_each_subset(fss.block(r), fss.t() - 1, [&](const Block& s) {
            if (auto it = col_of.find(s); it != col_of.end()) {
                pos.emplace_back(static_cast<BinaryMatrix::Index>(r), it->second);
            }
        });
    }
    return BinaryMatrix::from_positions(fss.b(), cols.size(), std::move(pos));
}

SetSystem from_incidence(const BinaryMatrix& h) {
    std::vector<Block> blocks;
    blocks.reserve(h.rows());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        if (h.row(r).empty()) {
            throw std::invalid_argument("row " + std::to_string(r + 1) + " is empty; block would be empty");
        }
        blocks.emplace_back(h.row(r).begin(), h.row(r).end());
    }
    std::size_t kmax = 0;
    for (const auto& blk : blocks) kmax = std::max(kmax, blk.size());
    return SetSystem::make(h.cols(), std::move(blocks), std::min<std::size_t>(2, kmax));
}

}  // namespace fss
