#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fsscode/binary_matrix.hpp"
#include "fsscode/set_system.hpp"

namespace fss {

using Shift = std::uint32_t;

/// m x m permutation matrix with a one at (i, (i + s) mod m).
BinaryMatrix circulant(std::size_t m, std::size_t s);

/// One shift per incidence (point in block), stored aligned with the blocks
/// of the system it was built for: shifts()[j][a] belongs to point
/// fss.block(j)[a].
class ShiftSequence {
public:
    struct Entry {
        std::size_t block;  // 0-based
        Point point;        // 0-based
        Shift s;
    };

    /// Throws std::invalid_argument on missing, repeated or extraneous
    /// entries and on shifts outside [0, m).
    static ShiftSequence from_entries(const SetSystem& fss, std::size_t m, const std::vector<Entry>& entries);

    /// Explicit list: one value per incidence, block-major, ascending point.
    static ShiftSequence from_flat(const SetSystem& fss, std::size_t m, const std::vector<long long>& values);

    /// Compressed list: the first (lowest) point of every block carries an
    /// implicit zero and the values fill the remaining incidences block-major.
    static ShiftSequence from_compressed(const SetSystem& fss, std::size_t m,
                                         const std::vector<long long>& values);

    /// Chooses from_flat or from_compressed by the value count; any other
    /// count is rejected.
    static ShiftSequence import(const SetSystem& fss, std::size_t m, const std::vector<long long>& values);

    std::size_t m() const noexcept { return m_; }
    const std::vector<std::vector<Shift>>& shifts() const noexcept { return shifts_; }
    Shift at(std::size_t block, std::size_t index) const { return shifts_.at(block).at(index); }

    /// Block-major flat view, matching from_flat.
    std::vector<Shift> flat() const;
    std::vector<Entry> entries(const SetSystem& fss) const;

    friend bool operator==(const ShiftSequence&, const ShiftSequence&) = default;

private:
    std::size_t m_ = 1;
    std::vector<std::vector<Shift>> shifts_;
};

/// v x b array of shifts; kEmpty marks a point that is not in the block.
class QCProtoMatrix {
public:
    static constexpr std::int64_t kEmpty = -1;

    QCProtoMatrix(std::size_t v, std::size_t b, std::size_t m);

    std::size_t v() const noexcept { return v_; }
    std::size_t b() const noexcept { return b_; }
    std::size_t m() const noexcept { return m_; }

    std::int64_t cell(std::size_t i, std::size_t j) const { return cells_.at(i * b_ + j); }
    bool empty(std::size_t i, std::size_t j) const { return cell(i, j) == kEmpty; }
    /// Throws when value is not kEmpty and not in [0, m).
    void set(std::size_t i, std::size_t j, std::int64_t value);

    friend bool operator==(const QCProtoMatrix&, const QCProtoMatrix&) = default;

private:
    std::size_t v_, b_, m_;
    std::vector<std::int64_t> cells_;
};

QCProtoMatrix assemble(const SetSystem& fss, const ShiftSequence& shifts);

/// Subtracts from each block-column the shift of its lowest nonempty cell.
QCProtoMatrix normalize_shifts(const QCProtoMatrix& q);

/// Lifted matrix with point copies as rows and block copies as columns,
/// (v*m) x (b*m), never transposed.
BinaryMatrix expand_points_by_blocks(const QCProtoMatrix& q);

/// Parity-check matrix: as expand_points_by_blocks, transposed when v > b so
/// that there are never more rows than columns. A tie is not transposed.
BinaryMatrix expand(const QCProtoMatrix& q);

/// 1 - min(b, v) / max(b, v).
Rational rate_bound(const SetSystem& fss);

}  // namespace fss
