#pragma once

// Naive reference implementations used to cross-check the
// library. They share no code with src/ beyond the value types.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <vector>

#include "fsscode/binary_matrix.hpp"
#include "fsscode/qc_lift.hpp"
#include "fsscode/set_system.hpp"

namespace oracle {

using Dense = std::vector<std::vector<int>>;

inline constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

/// Girth of the bipartite graph of `h`: for every edge, the shortest path
/// between its endpoints once the edge is removed, plus one. kInf for a forest.
inline std::size_t girth(const Dense& h) {
    const std::size_t rows = h.size();
    const std::size_t cols = rows ? h[0].size() : 0;
    const std::size_t n = rows + cols;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (h[r][c]) {
                adj[r].push_back(rows + c);
                adj[rows + c].push_back(r);
            }
        }
    }
    std::size_t best = kInf;
    std::vector<std::size_t> dist(n);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (!h[r][c]) continue;
            const std::size_t a = r, b = rows + c;
            std::fill(dist.begin(), dist.end(), kInf);
            std::deque<std::size_t> q{a};
            dist[a] = 0;
            while (!q.empty()) {
                const std::size_t u = q.front();
                q.pop_front();
                for (std::size_t w : adj[u]) {
                    if ((u == a && w == b) || (u == b && w == a)) continue;
                    if (dist[w] == kInf) {
                        dist[w] = dist[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            if (dist[b] != kInf && dist[b] + 1 < best) best = dist[b] + 1;
        }
    }
    return best;
}

/// Points-by-blocks lift written out cell by cell: block-row i, block-column
/// j holds the m x m circulant with ones at (x, (x + s) mod m).
inline Dense lift(const fss::SetSystem& sys, std::size_t m, const std::vector<std::vector<std::size_t>>& shifts) {
    Dense h(sys.v() * m, std::vector<int>(sys.b() * m, 0));
    for (std::size_t j = 0; j < sys.b(); ++j) {
        const auto& blk = sys.block(j);
        for (std::size_t a = 0; a < blk.size(); ++a) {
            for (std::size_t x = 0; x < m; ++x) h[blk[a] * m + x][j * m + (x + shifts[j][a]) % m] = 1;
        }
    }
    return h;
}

inline Dense transpose(const Dense& h) {
    if (h.empty()) return {};
    Dense t(h[0].size(), std::vector<int>(h.size(), 0));
    for (std::size_t r = 0; r < h.size(); ++r) {
        for (std::size_t c = 0; c < h[r].size(); ++c) t[c][r] = h[r][c];
    }
    return t;
}

/// Calls f(shifts) for every assignment with the first shift of each block 0.
/// Stops early when f returns true; returns whether it did.
template <class F>
bool for_each_normalized(const fss::SetSystem& sys, std::size_t m, F&& f) {
    std::vector<std::vector<std::size_t>> s;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t j = 0; j < sys.b(); ++j) {
        s.emplace_back(sys.block(j).size(), 0);
        for (std::size_t a = 1; a < sys.block(j).size(); ++a) free.emplace_back(j, a);
    }
    for (;;) {
        if (f(s)) return true;
        std::size_t i = 0;
        for (; i < free.size(); ++i) {
            auto& x = s[free[i].first][free[i].second];
            if (++x < m) break;
            x = 0;
        }
        if (i == free.size()) return false;
    }
}

inline fss::SetSystem random_system(std::mt19937_64& rng, std::size_t max_v, std::size_t max_b,
                                    std::size_t min_block = 1) {
    std::uniform_int_distribution<std::size_t> vd(std::max<std::size_t>(2, min_block), max_v);
    const std::size_t v = vd(rng);
    std::uniform_int_distribution<std::size_t> bd(1, max_b);
    const std::size_t b = bd(rng);
    std::vector<fss::Block> blocks;
    for (std::size_t j = 0; j < b; ++j) {
        std::uniform_int_distribution<std::size_t> kd(min_block, v);
        const std::size_t k = kd(rng);
        std::vector<fss::Point> pts(v);
        for (std::size_t i = 0; i < v; ++i) pts[i] = static_cast<fss::Point>(i);
        std::shuffle(pts.begin(), pts.end(), rng);
        pts.resize(k);
        blocks.push_back(pts);
    }
    std::size_t kmax = 0;
    for (const auto& blk : blocks) kmax = std::max(kmax, blk.size());
    return fss::SetSystem::make(v, blocks, std::min<std::size_t>(2, kmax));
}

inline std::vector<std::vector<std::size_t>> random_shifts(std::mt19937_64& rng, const fss::SetSystem& sys,
                                                           std::size_t m) {
    std::uniform_int_distribution<std::size_t> sd(0, m - 1);
    std::vector<std::vector<std::size_t>> s;
    for (const auto& blk : sys.blocks()) {
        s.emplace_back();
        for (std::size_t a = 0; a < blk.size(); ++a) s.back().push_back(sd(rng));
    }
    return s;
}

inline fss::ShiftSequence to_sequence(const fss::SetSystem& sys, std::size_t m,
                                      const std::vector<std::vector<std::size_t>>& s) {
    std::vector<long long> flat;
    for (const auto& col : s) flat.insert(flat.end(), col.begin(), col.end());
    return fss::ShiftSequence::from_flat(sys, m, flat);
}

}  // namespace oracle
