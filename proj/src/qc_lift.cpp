#include "fsscode/qc_lift.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fss {

namespace {

Shift checked_shift(long long s, std::size_t m) {
    if (s < 0 || static_cast<unsigned long long>(s) >= m) {
        throw std::invalid_argument("shift " + std::to_string(s) + " outside [0," + std::to_string(m) + ")");
    }
    return static_cast<Shift>(s);
}

std::size_t compressed_count(const SetSystem& fss) {
    return fss.incidence_count() - fss.b();
}

}  // namespace

BinaryMatrix circulant(std::size_t m, std::size_t s) {
    if (m == 0) throw std::invalid_argument("circulant: m must be positive");
    if (s >= m) throw std::invalid_argument("circulant: shift " + std::to_string(s) + " out of range");
    std::vector<BinaryMatrix::Position> pos;
    pos.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        pos.emplace_back(static_cast<BinaryMatrix::Index>(i), static_cast<BinaryMatrix::Index>((i + s) % m));
    }
    return BinaryMatrix::from_positions(m, m, std::move(pos));
}

ShiftSequence ShiftSequence::from_entries(const SetSystem& fss, std::size_t m,
                                          const std::vector<Entry>& entries) {
    if (m == 0) throw std::invalid_argument("shift sequence: m must be positive");
    ShiftSequence seq;
    seq.m_ = m;
    std::vector<std::vector<bool>> seen(fss.b());
    seq.shifts_.resize(fss.b());
    for (std::size_t j = 0; j < fss.b(); ++j) {
        seq.shifts_[j].assign(fss.block(j).size(), 0);
        seen[j].assign(fss.block(j).size(), false);
    }
    for (const auto& e : entries) {
        if (e.block >= fss.b()) {
            throw std::invalid_argument("shift entry for nonexistent block " + std::to_string(e.block + 1));
        }
        const auto& blk = fss.block(e.block);
        const auto it = std::lower_bound(blk.begin(), blk.end(), e.point);
        if (it == blk.end() || *it != e.point) {
            throw std::invalid_argument("extraneous shift entry: point " + std::to_string(e.point + 1) +
                                        " is not in block " + std::to_string(e.block + 1));
        }
        const auto a = static_cast<std::size_t>(it - blk.begin());
        if (seen[e.block][a]) {
            throw std::invalid_argument("repeated shift entry for point " + std::to_string(e.point + 1) +
                                        " in block " + std::to_string(e.block + 1));
        }
        seen[e.block][a] = true;
        seq.shifts_[e.block][a] = checked_shift(e.s, m);
    }
    for (std::size_t j = 0; j < fss.b(); ++j) {
        for (std::size_t a = 0; a < seen[j].size(); ++a) {
            if (!seen[j][a]) {
                throw std::invalid_argument("missing shift for point " + std::to_string(fss.block(j)[a] + 1) +
                                            " in block " + std::to_string(j + 1));
            }
        }
    }
    return seq;
}

ShiftSequence ShiftSequence::from_flat(const SetSystem& fss, std::size_t m, const std::vector<long long>& values) {
    if (m == 0) throw std::invalid_argument("shift sequence: m must be positive");
    if (values.size() != fss.incidence_count()) {
        throw std::invalid_argument("expected " + std::to_string(fss.incidence_count()) + " shifts, got " +
                                    std::to_string(values.size()));
    }
    ShiftSequence seq;
    seq.m_ = m;
    std::size_t e = 0;
    for (const auto& blk : fss.blocks()) {
        auto& row = seq.shifts_.emplace_back();
        for (std::size_t a = 0; a < blk.size(); ++a) row.push_back(checked_shift(values[e++], m));
    }
    return seq;
}

ShiftSequence ShiftSequence::from_compressed(const SetSystem& fss, std::size_t m,
                                             const std::vector<long long>& values) {
    if (m == 0) throw std::invalid_argument("shift sequence: m must be positive");
    if (values.size() != compressed_count(fss)) {
        throw std::invalid_argument("expected " + std::to_string(compressed_count(fss)) +
                                    " compressed shifts, got " + std::to_string(values.size()));
    }
    ShiftSequence seq;
    seq.m_ = m;
    std::size_t e = 0;
    for (const auto& blk : fss.blocks()) {
        auto& row = seq.shifts_.emplace_back();
        row.push_back(0);
        for (std::size_t a = 1; a < blk.size(); ++a) row.push_back(checked_shift(values[e++], m));
    }
    return seq;
}

ShiftSequence ShiftSequence::import(const SetSystem& fss, std::size_t m, const std::vector<long long>& values) {
    const std::size_t full = fss.incidence_count();
    const std::size_t compressed = compressed_count(fss);
    if (values.size() == full) return from_flat(fss, m, values);
    if (values.size() == compressed) return from_compressed(fss, m, values);
    throw std::invalid_argument("shift count " + std::to_string(values.size()) + " matches neither " +
                                std::to_string(full) + " (explicit) nor " + std::to_string(compressed) +
                                " (first shift of each block implicit)");
}

std::vector<Shift> ShiftSequence::flat() const {
    std::vector<Shift> out;
    for (const auto& row : shifts_) out.insert(out.end(), row.begin(), row.end());
    return out;
}

std::vector<ShiftSequence::Entry> ShiftSequence::entries(const SetSystem& fss) const {
    std::vector<Entry> out;
    for (std::size_t j = 0; j < shifts_.size(); ++j) {
        for (std::size_t a = 0; a < shifts_[j].size(); ++a) out.push_back({j, fss.block(j).at(a), shifts_[j][a]});
    }
    return out;
}

QCProtoMatrix::QCProtoMatrix(std::size_t v, std::size_t b, std::size_t m)
    : v_(v), b_(b), m_(m), cells_(v * b, kEmpty) {
    if (m == 0) throw std::invalid_argument("proto matrix: m must be positive");
}

void QCProtoMatrix::set(std::size_t i, std::size_t j, std::int64_t value) {
    if (i >= v_ || j >= b_) throw std::out_of_range("proto matrix cell out of range");
    if (value != kEmpty && (value < 0 || static_cast<std::uint64_t>(value) >= m_)) {
        throw std::invalid_argument("proto matrix shift " + std::to_string(value) + " out of range");
    }
    cells_[i * b_ + j] = value;
}

QCProtoMatrix assemble(const SetSystem& fss, const ShiftSequence& shifts) {
    if (shifts.shifts().size() != fss.b()) {
        throw std::invalid_argument("shift sequence has " + std::to_string(shifts.shifts().size()) +
                                    " blocks, system has " + std::to_string(fss.b()));
    }
    QCProtoMatrix q(fss.v(), fss.b(), shifts.m());
    for (std::size_t j = 0; j < fss.b(); ++j) {
        const auto& blk = fss.block(j);
        if (shifts.shifts()[j].size() != blk.size()) {
            throw std::invalid_argument("shift count mismatch in block " + std::to_string(j + 1));
        }
        for (std::size_t a = 0; a < blk.size(); ++a) q.set(blk[a], j, shifts.shifts()[j][a]);
    }
    return q;
}

QCProtoMatrix normalize_shifts(const QCProtoMatrix& q) {
    QCProtoMatrix out = q;
    const auto m = static_cast<std::int64_t>(q.m());
    for (std::size_t j = 0; j < q.b(); ++j) {
        std::int64_t base = QCProtoMatrix::kEmpty;
        for (std::size_t i = 0; i < q.v(); ++i) {
            if (q.empty(i, j)) continue;
            if (base == QCProtoMatrix::kEmpty) base = q.cell(i, j);
            out.set(i, j, ((q.cell(i, j) - base) % m + m) % m);
        }
    }
    return out;
}

BinaryMatrix expand_points_by_blocks(const QCProtoMatrix& q) {
    const std::size_t m = q.m();
    std::vector<BinaryMatrix::Position> pos;
    for (std::size_t i = 0; i < q.v(); ++i) {
        for (std::size_t j = 0; j < q.b(); ++j) {
            if (q.empty(i, j)) continue;
            const auto s = static_cast<std::size_t>(q.cell(i, j));
            for (std::size_t r = 0; r < m; ++r) {
                pos.emplace_back(static_cast<BinaryMatrix::Index>(i * m + r),
                                 static_cast<BinaryMatrix::Index>(j * m + (r + s) % m));
            }
        }
    }
    return BinaryMatrix::from_positions(q.v() * m, q.b() * m, std::move(pos));
}

BinaryMatrix expand(const QCProtoMatrix& q) {
    BinaryMatrix h = expand_points_by_blocks(q);
    return q.v() > q.b() ? h.transposed() : h;
}

Rational rate_bound(const SetSystem& fss) {
    const auto lo = static_cast<std::int64_t>(std::min(fss.b(), fss.v()));
    const auto hi = static_cast<std::int64_t>(std::max(fss.b(), fss.v()));
    if (hi == 0) throw std::invalid_argument("rate_bound: empty system");
    return Rational::make(hi - lo, hi);
}

}  // namespace fss
