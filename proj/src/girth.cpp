#include "fsscode/girth.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace fss {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool in_block(const Block& blk, Point p) { return std::binary_search(blk.begin(), blk.end(), p); }

// Depth-first search for balanced closed walks of one exact length.
class BalancedWalkSearch {
public:
    BalancedWalkSearch(std::size_t v, const std::vector<Block>& blocks, WalkRule rule)
        : v_(v), blocks_(blocks), rule_(rule), point_blocks_(v), offset_(blocks.size() + 1, 0) {
        for (std::size_t k = 0; k < blocks_.size(); ++k) {
            offset_[k + 1] = offset_[k] + blocks_[k].size();
            for (Point p : blocks_[k]) point_blocks_.at(p).push_back(k);
        }
        net_.assign(offset_.back(), 0);
    }

    // Any balanced walk of length len whose minimum point is its first point.
    std::optional<WalkWitness> find_any(std::size_t len) {
        for (Point s = 0; s < v_; ++s) {
            if (point_blocks_[s].empty()) continue;
            begin(len, s, true);
            if (dfs(0)) return witness();
        }
        return std::nullopt;
    }

    // Balanced walk of length len whose first step is x -> y inside block k.
    std::optional<WalkWitness> find_through(std::size_t len, Point x, Point y, std::size_t k) {
        if (len < 2) return std::nullopt;
        begin(len, x, false);
        blks_[0] = k;
        pts_[1] = y;
        apply(k, x, y, +1);
        const bool ok = admissible(1, y) && dfs(1);
        apply(k, x, y, -1);
        if (ok) return witness();
        return std::nullopt;
    }

private:
    void begin(std::size_t len, Point start, bool canonical) {
        len_ = len;
        start_ = start;
        floor_ = canonical ? start : 0;
        pts_.assign(len, 0);
        blks_.assign(len, 0);
        pts_[0] = start;
        std::fill(net_.begin(), net_.end(), 0);
        abs_sum_ = 0;
        distances_to_start();
    }

    void distances_to_start() {
        dist_.assign(v_, kNone);
        std::deque<Point> queue{start_};
        dist_[start_] = 0;
        while (!queue.empty()) {
            const Point u = queue.front();
            queue.pop_front();
            for (std::size_t k : point_blocks_[u]) {
                for (Point w : blocks_[k]) {
                    if (w < floor_ || dist_[w] != kNone) continue;
                    dist_[w] = dist_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    std::size_t incidence(std::size_t k, Point p) const {
        const auto& blk = blocks_[k];
        return offset_[k] + static_cast<std::size_t>(std::lower_bound(blk.begin(), blk.end(), p) - blk.begin());
    }

    void bump(std::size_t inc, int delta) {
        const int before = net_[inc];
        net_[inc] = before + delta;
        abs_sum_ += static_cast<std::size_t>(std::abs(net_[inc])) - static_cast<std::size_t>(std::abs(before));
    }

    // One step from `from` to `to` inside block k; sign -1 undoes it.
    void apply(std::size_t k, Point from, Point to, int sign) {
        bump(incidence(k, from), -sign);
        bump(incidence(k, to), sign);
    }

    // After `taken` steps the walk sits at `cur`; can it still close?
    bool admissible(std::size_t taken, Point cur) const {
        const std::size_t remaining = len_ - taken;
        if (abs_sum_ > 2 * remaining) return false;
        if (dist_[cur] == kNone || dist_[cur] > remaining) return false;
        return true;
    }

    bool block_allowed(std::size_t j, std::size_t k, Point y) const {
        const bool closing = j + 1 == len_;
        if (rule_ == WalkRule::Strict) {
            if (j > 0 && k == blks_[j - 1]) return false;
            if (closing && k == blks_[0]) return false;
            return true;
        }
        if (j > 0 && k == blks_[j - 1] && y == pts_[j - 1]) return false;
        if (closing && k == blks_[0] && pts_[j] == pts_[1]) return false;
        return true;
    }

    bool dfs(std::size_t j) {
        const Point cur = pts_[j];
        const bool closing = j + 1 == len_;
        for (std::size_t k : point_blocks_[cur]) {
            for (Point y : blocks_[k]) {
                if (y == cur || y < floor_) continue;
                if (closing && y != start_) continue;
                if (!block_allowed(j, k, y)) continue;
                apply(k, cur, y, +1);
                bool ok;
                if (closing) {
                    ok = abs_sum_ == 0;
                } else {
                    ok = admissible(j + 1, y);
                    if (ok) {
                        blks_[j] = k;
                        pts_[j + 1] = y;
                        ok = dfs(j + 1);
                    }
                }
                apply(k, cur, y, -1);
                if (ok) {
                    blks_[j] = k;
                    return true;
                }
            }
        }
        return false;
    }

    WalkWitness witness() const { return WalkWitness{pts_, blks_}; }

    std::size_t v_;
    const std::vector<Block>& blocks_;
    WalkRule rule_;
    std::vector<std::vector<std::size_t>> point_blocks_;
    std::vector<std::size_t> offset_;
    std::vector<int> net_;
    std::size_t abs_sum_ = 0;
    std::vector<std::size_t> dist_;
    std::vector<Point> pts_;
    std::vector<std::size_t> blks_;
    std::size_t len_ = 0;
    Point start_ = 0;
    Point floor_ = 0;
};

class TannerBfs {
public:
    explicit TannerBfs(const BinaryMatrix& h) : h_(h), rows_(h.rows()) {
        const std::size_t n = h.rows() + h.cols();
        depth_.assign(n, kNone);
        parent_.assign(n, kNone);
    }

    // Minimum cycle length <= cap (stops at the first cycle when first_only).
    GirthReport run(std::size_t cap, bool first_only) {
        GirthReport rep;
        rep.cap = cap;
        std::size_t best = cap + 1;
        const bool from_rows = h_.rows() <= h_.cols();
        const std::size_t count = from_rows ? h_.rows() : h_.cols();
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t src = from_rows ? i : rows_ + i;
            if (search(src, best, rep) && first_only) break;
        }
        if (best <= cap) rep.girth = best;
        return rep;
    }

private:
    template <class F>
    void for_neighbors(std::size_t node, F&& f) const {
        if (node < rows_) {
            for (auto c : h_.row(node)) f(rows_ + c);
        } else {
            for (auto r : h_.col(node - rows_)) f(static_cast<std::size_t>(r));
        }
    }

    bool search(std::size_t src, std::size_t& best, GirthReport& rep) {
        bool improved = false;
        touched_.clear();
        queue_.clear();
        depth_[src] = 0;
        touched_.push_back(src);
        queue_.push_back(src);
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const std::size_t u = queue_[head];
            const std::size_t d = depth_[u];
            if (2 * d + 2 >= best) break;
            bool stop = false;
            for_neighbors(u, [&](std::size_t w) {
                if (stop || w == parent_[u]) return;
                if (depth_[w] == kNone) {
                    depth_[w] = d + 1;
                    parent_[w] = u;
                    touched_.push_back(w);
                    queue_.push_back(w);
                    return;
                }
                const std::size_t len = d + depth_[w] + 1;
                if (len < best) {
                    best = len;
                    rep.cycle = close_cycle(u, w);
                    improved = true;
                    stop = true;
                }
            });
            if (stop) break;
        }
        for (std::size_t n : touched_) {
            depth_[n] = kNone;
            parent_[n] = kNone;
        }
        return improved;
    }

    std::vector<std::size_t> close_cycle(std::size_t u, std::size_t w) const {
        std::vector<std::size_t> left;
        for (std::size_t n = u; n != kNone; n = parent_[n]) left.push_back(n);
        std::reverse(left.begin(), left.end());
        for (std::size_t n = w; parent_[n] != kNone; n = parent_[n]) left.push_back(n);
        return left;
    }

    const BinaryMatrix& h_;
    std::size_t rows_;
    std::vector<std::size_t> depth_, parent_, touched_, queue_;
};

GirthReport inevitable_search(std::size_t v, const std::vector<Block>& blocks, std::size_t lo, std::size_t cap,
                              WalkRule rule) {
    GirthReport rep;
    rep.cap = cap;
    BalancedWalkSearch search(v, blocks, rule);
    for (std::size_t len = std::max<std::size_t>(lo, 3); len <= cap; ++len) {
        if (auto w = search.find_any(len)) {
            rep.girth = 2 * len;
            rep.walk = std::move(w);
            return rep;
        }
    }
    return rep;
}

}  // namespace

BlockStructureGraph BlockStructureGraph::build(const QCProtoMatrix& q) {
    BlockStructureGraph g;
    g.m_ = q.m();
    g.out_.resize(q.v());
    const auto m = static_cast<std::int64_t>(q.m());
    for (std::size_t k = 0; k < q.b(); ++k) {
        std::vector<Point> rows;
        for (std::size_t i = 0; i < q.v(); ++i) {
            if (!q.empty(i, k)) rows.push_back(static_cast<Point>(i));
        }
        for (std::size_t a = 0; a < rows.size(); ++a) {
            for (std::size_t c = a + 1; c < rows.size(); ++c) {
                const Point u = rows[a];
                const Point w = rows[c];
                const std::int64_t d = q.cell(w, k) - q.cell(u, k);
                const std::size_t fwd = g.edges_.size();
                g.edges_.push_back({u, w, k, static_cast<Shift>(((d % m) + m) % m)});
                g.edges_.push_back({w, u, k, static_cast<Shift>(((-d % m) + m) % m)});
                g.out_[u].push_back(fwd);
                g.out_[w].push_back(fwd + 1);
                g.reverse_.push_back(fwd + 1);
                g.reverse_.push_back(fwd);
            }
        }
    }
    return g;
}

WalkWitness witness_from_interleaved(const std::vector<long long>& interleaved) {
    if (interleaved.size() % 2 != 0) throw std::invalid_argument("walk must alternate point and block indices");
    WalkWitness w;
    for (std::size_t i = 0; i < interleaved.size(); i += 2) {
        if (interleaved[i] < 1 || interleaved[i + 1] < 1) throw std::invalid_argument("walk indices are 1-based");
        w.points.push_back(static_cast<Point>(interleaved[i] - 1));
        w.blocks.push_back(static_cast<std::size_t>(interleaved[i + 1] - 1));
    }
    return w;
}

WalkReport bsg_shortest_closed_walk(const BlockStructureGraph& g, std::size_t cap) {
    WalkReport rep;
    rep.cap = cap;
    const auto& edges = g.edges();
    std::size_t cols = 0;
    for (const auto& e : edges) cols = std::max(cols, e.k + 1);
    if (edges.empty()) return rep;
    const std::size_t m = g.m();
    const std::size_t n_states = g.vertex_count() * cols * m;
    std::vector<std::size_t> dist(n_states, kNone);
    std::vector<std::size_t> via(n_states, kNone);  // edge that entered the state
    std::vector<std::size_t> from(n_states, kNone);
    std::vector<std::size_t> queue;
    auto state = [&](Point x, std::size_t col, std::size_t sum) { return (x * cols + col) * m + sum; };

    std::size_t best = cap + 1;
    for (Point u0 = 0; u0 < g.vertex_count(); ++u0) {
        for (std::size_t e0 : g.out_edges(u0)) {
            const BsgEdge& first = edges[e0];
            if (first.to < u0) continue;
            queue.clear();
            const std::size_t s0 = state(first.to, first.k, first.s % m);
            dist[s0] = 1;
            via[s0] = e0;
            queue.push_back(s0);
            bool found = false;
            for (std::size_t head = 0; head < queue.size() && !found; ++head) {
                const std::size_t st = queue[head];
                const std::size_t d = dist[st];
                if (d + 1 >= best) break;
                const Point x = static_cast<Point>(st / m / cols);
                const std::size_t col = (st / m) % cols;
                const std::size_t sum = st % m;
                for (std::size_t e : g.out_edges(x)) {
                    const BsgEdge& E = edges[e];
                    if (E.k == col) continue;
                    const std::size_t ns = (sum + E.s) % m;
                    if (E.to == u0 && ns == 0 && E.k != first.k) {
                        best = d + 1;
                        WalkWitness w;
                        std::vector<std::size_t> path{e};
                        for (std::size_t t = st; t != kNone; t = from[t]) path.push_back(via[t]);
                        std::reverse(path.begin(), path.end());
                        for (std::size_t pe : path) {
                            w.points.push_back(edges[pe].from);
                            w.blocks.push_back(edges[pe].k);
                        }
                        rep.witness = std::move(w);
                        found = true;
                        break;
                    }
                    if (E.to < u0) continue;
                    const std::size_t nst = state(E.to, E.k, ns);
                    if (dist[nst] != kNone) continue;
                    dist[nst] = d + 1;
                    via[nst] = e;
                    from[nst] = st;
                    queue.push_back(nst);
                }
            }
            for (std::size_t st : queue) {
                dist[st] = kNone;
                via[st] = kNone;
                from[st] = kNone;
            }
        }
    }
    if (best <= cap) rep.length = best;
    return rep;
}

std::string verify_bsg_walk(const QCProtoMatrix& q, const WalkWitness& w) {
    const std::size_t len = w.length();
    if (len < 2 || w.blocks.size() != len) return "walk too short or malformed";
    const auto m = static_cast<std::int64_t>(q.m());
    std::int64_t sum = 0;
    std::map<std::tuple<Point, Point, std::size_t>, std::size_t> uses;
    for (std::size_t j = 0; j < len; ++j) {
        const Point a = w.points[j];
        const Point b = w.points[(j + 1) % len];
        const std::size_t k = w.blocks[j];
        if (a >= q.v() || b >= q.v() || k >= q.b()) return "index out of range at step " + std::to_string(j + 1);
        if (a == b) return "repeated point at step " + std::to_string(j + 1);
        if (q.empty(a, k) || q.empty(b, k)) return "no edge at step " + std::to_string(j + 1);
        if (k == w.blocks[(j + 1) % len]) return "successive column indices equal at step " + std::to_string(j + 1);
        sum += q.cell(b, k) - q.cell(a, k);
        if (++uses[{a, b, k}] > q.m()) return "edge used more than m times";
    }
    if (((sum % m) + m) % m != 0) return "shift sum is not 0 mod m";
    return {};
}

GirthReport tanner_girth(const BinaryMatrix& h, std::size_t cap) {
    TannerBfs bfs(h);
    return bfs.run(cap, false);
}

bool has_cycle_within(const BinaryMatrix& h, std::size_t cap) {
    TannerBfs bfs(h);
    return !bfs.run(cap, true).unbounded();
}

std::string verify_tanner_cycle(const BinaryMatrix& h, const std::vector<std::size_t>& cycle) {
    const std::size_t len = cycle.size();
    if (len < 4 || len % 2 != 0) return "cycle length must be even and at least 4";
    std::vector<std::size_t> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "cycle repeats a node";
    const std::size_t rows = h.rows();
    for (std::size_t i = 0; i < len; ++i) {
        std::size_t a = cycle[i];
        std::size_t b = cycle[(i + 1) % len];
        if ((a < rows) == (b < rows)) return "cycle does not alternate checks and bits";
        if (a >= rows) std::swap(a, b);
        if (b - rows >= h.cols() || !h.get(a, b - rows)) return "missing Tanner edge";
    }
    return {};
}

GirthReport inevitable_girth(const SetSystem& fss, std::size_t cap, WalkRule rule) {
    return inevitable_search(fss.v(), fss.blocks(), 3, cap, rule);
}

GirthReport inevitable_girth_from(const SetSystem& fss, std::size_t lo, std::size_t cap, WalkRule rule) {
    return inevitable_search(fss.v(), fss.blocks(), lo, cap, rule);
}

GirthReport edge_girth(std::size_t v, const std::vector<Block>& blocks, Point x, Point y, std::size_t cap,
                       WalkRule rule) {
    GirthReport rep;
    rep.cap = cap;
    rep.girth = 2 * cap;
    if (blocks.empty() || blocks.back().empty()) return rep;
    const Block& last = blocks.back();
    if (!in_block(last, x)) throw std::invalid_argument("edge_girth: x is not in the last block");
    if (y >= v) throw std::invalid_argument("edge_girth: y out of range");
    if (in_block(last, y)) throw std::invalid_argument("edge_girth: y already in the last block");
    std::vector<Block> augmented = blocks;
    Block& blk = augmented.back();
    blk.insert(std::upper_bound(blk.begin(), blk.end(), y), y);
    const std::size_t k = augmented.size() - 1;
    BalancedWalkSearch search(v, augmented, rule);
    for (std::size_t len = 3; len <= cap; ++len) {
        if (auto w = search.find_through(len, x, y, k)) {
            rep.girth = 2 * len;
            rep.walk = std::move(w);
            return rep;
        }
    }
    return rep;
}

GirthReport edge_girth(const SetSystem& partial, Point x, Point y, std::size_t cap, WalkRule rule) {
    return edge_girth(partial.v(), partial.blocks(), x, y, cap, rule);
}

std::string verify_inevitable_walk(const SetSystem& fss, const WalkWitness& w, WalkRule rule) {
    const std::size_t len = w.length();
    if (len < 2 || w.blocks.size() != len) return "walk too short or malformed";
    // Directed steps grouped by block, for the cycle peeling.
    std::map<std::size_t, std::multimap<Point, Point>> steps;
    std::map<std::pair<std::size_t, Point>, long long> coeff;
    for (std::size_t j = 0; j < len; ++j) {
        const Point a = w.points[j];
        const Point b = w.points[(j + 1) % len];
        const std::size_t k = w.blocks[j];
        if (k >= fss.b()) return "block index out of range at step " + std::to_string(j + 1);
        if (a == b) return "i_j equals i_{j+1} at step " + std::to_string(j + 1);
        if (!in_block(fss.block(k), a) || !in_block(fss.block(k), b)) {
            return "points not co-block at step " + std::to_string(j + 1);
        }
        const std::size_t kn = w.blocks[(j + 1) % len];
        if (k == kn) {
            if (rule == WalkRule::Strict) return "successive block indices equal at step " + std::to_string(j + 1);
            if (a == w.points[(j + 2) % len]) return "walk reverses inside one block at step " + std::to_string(j + 1);
        }
        steps[k].emplace(a, b);
        coeff[{k, b}] += 1;
        coeff[{k, a}] -= 1;
    }
    for (auto& [k, edges] : steps) {
        while (!edges.empty()) {
            const Point origin = edges.begin()->first;
            Point cur = origin;
            do {
                auto it = edges.find(cur);
                if (it == edges.end()) return "block " + std::to_string(k + 1) + " steps do not split into cycles";
                cur = it->second;
                edges.erase(it);
            } while (cur != origin);
        }
    }
    for (const auto& [key, c] : coeff) {
        if (c != 0) return "symbolic shift sum does not vanish";
    }
    return {};
}

}  // namespace fss
