#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsscode/binary_matrix.hpp"
#include "fsscode/qc_lift.hpp"
#include "fsscode/set_system.hpp"

namespace fss {

struct BsgEdge {
    Point from;
    Point to;
    std::size_t k;  // block-column
    Shift s;        // shift(to, k) - shift(from, k) mod m
};

class BlockStructureGraph {
public:
    static BlockStructureGraph build(const QCProtoMatrix& q);

    std::size_t vertex_count() const noexcept { return out_.size(); }
    std::size_t m() const noexcept { return m_; }
    const std::vector<BsgEdge>& edges() const noexcept { return edges_; }
    /// Edge ids leaving u.
    const std::vector<std::size_t>& out_edges(Point u) const { return out_.at(u); }
    /// Id of the reverse of edge e.
    std::size_t reverse(std::size_t e) const { return reverse_.at(e); }

private:
    std::size_t m_ = 1;
    std::vector<BsgEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> reverse_;
};

inline BlockStructureGraph build_bsg(const QCProtoMatrix& q) { return BlockStructureGraph::build(q); }

/// Closed walk [i_1, k_1, ..., i_l, k_l]: step j goes from points[j] to
/// points[(j+1) % l] inside block blocks[j]. All indices 0-based.
struct WalkWitness {
    std::vector<Point> points;
    std::vector<std::size_t> blocks;

    std::size_t length() const noexcept { return points.size(); }
    friend bool operator==(const WalkWitness&, const WalkWitness&) = default;
};

/// Builds a witness from the interleaved 1-based form [i1,k1,i2,k2,...].
WalkWitness witness_from_interleaved(const std::vector<long long>& interleaved);

struct WalkReport {
    std::optional<std::size_t> length;  // nullopt: no closed walk of length <= cap
    std::size_t cap = 0;
    std::optional<WalkWitness> witness;
};

/// Shortest closed walk with distinct successive column indices (cyclically)
/// and shift sum 0 mod m, up to `cap` steps.
WalkReport bsg_shortest_closed_walk(const BlockStructureGraph& g, std::size_t cap);

/// Empty string when the walk is a valid zero-sum BSG closed walk (every
/// labeled edge used at most m times); otherwise the reason it is not.
std::string verify_bsg_walk(const QCProtoMatrix& q, const WalkWitness& w);

struct GirthReport {
    /// Even girth, or nullopt for "unbounded": nothing found within cap.
    std::optional<std::size_t> girth;
    /// Search bound: cycle length for Tanner graphs, walk length l for
    /// inevitable-walk searches.
    std::size_t cap = 0;
    std::optional<WalkWitness> walk;
    /// Tanner cycle as alternating nodes; node < rows is a check, otherwise
    /// a bit with column node - rows.
    std::vector<std::size_t> cycle;

    bool unbounded() const noexcept { return !girth.has_value(); }
};

/// Exact girth of the Tanner graph of h when it is at most cap.
GirthReport tanner_girth(const BinaryMatrix& h, std::size_t cap);

/// True when the Tanner graph of h has a cycle of length <= cap. Stops at
/// the first cycle found.
bool has_cycle_within(const BinaryMatrix& h, std::size_t cap);

/// Empty string when `cycle` is a simple cycle of the Tanner graph of h.
std::string verify_tanner_cycle(const BinaryMatrix& h, const std::vector<std::size_t>& cycle);

enum class WalkRule {
    /// Successive block indices differ, cyclically.
    Strict,
    /// Successive block indices may repeat when i_j != i_{j+2}.
    Relaxed,
};

inline constexpr std::size_t kDefaultWalkCap = 12;
inline constexpr std::size_t kExtendedWalkCap = 24;

/// g(B) = 2l for the least l <= cap admitting an inevitable (balanced)
/// walk; unbounded when none exists up to cap.
GirthReport inevitable_girth(const SetSystem& fss, std::size_t cap = kDefaultWalkCap,
                             WalkRule rule = WalkRule::Strict);

/// As inevitable_girth, but only lengths in [lo, cap] are tried.
GirthReport inevitable_girth_from(const SetSystem& fss, std::size_t lo, std::size_t cap,
                                  WalkRule rule = WalkRule::Strict);

/// Girth contribution of appending y to the last block, which must contain
/// x: the least 2l, l <= cap, such that an inevitable walk of the augmented
/// system starts with the step x -> y inside the last block. Returns 2*cap
/// when there is none, and also when the last block is empty.
GirthReport edge_girth(std::size_t v, const std::vector<Block>& blocks, Point x, Point y, std::size_t cap,
                       WalkRule rule = WalkRule::Strict);
GirthReport edge_girth(const SetSystem& partial, Point x, Point y, std::size_t cap,
                       WalkRule rule = WalkRule::Strict);

/// Empty string when w is an inevitable walk of fss under `rule`: valid
/// steps, the block-index rule, every block's steps peel into directed
/// cycles, and the symbolic shift sum vanishes identically.
std::string verify_inevitable_walk(const SetSystem& fss, const WalkWitness& w, WalkRule rule = WalkRule::Strict);

}  // namespace fss
