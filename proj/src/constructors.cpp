#include "fsscode/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fss {

namespace {

bool reaches(const GirthReport& rep, std::size_t target) {
    return rep.unbounded() || *rep.girth >= target;
}

void check_even_target(std::size_t target, std::size_t min) {
    if (target % 2 != 0 || target < min) {
        throw std::invalid_argument("target girth must be even and at least " + std::to_string(min));
    }
}

}  // namespace

WeightProfile::WeightProfile(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw std::invalid_argument("weight profile is empty");
    for (std::size_t k : sizes_) {
        if (k < 2) throw std::invalid_argument("block sizes in a weight profile must be at least 2");
    }
}

std::size_t WeightProfile::max() const noexcept { return *std::max_element(sizes_.begin(), sizes_.end()); }

std::size_t WeightProfile::total() const noexcept { return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0}); }

SetSystem method1_lift(const SetSystem& primitive, const ShiftSequence& shifts) {
    const BinaryMatrix h = expand_points_by_blocks(assemble(primitive, shifts));
    return from_incidence(h.transposed());
}

std::size_t method1_lifted_girth(std::size_t target_girth) {
    const std::size_t third = (target_girth + 2) / 3;
    return std::max<std::size_t>(4, third + third % 2);
}

Method1Result method1(const SetSystem& primitive, std::size_t target_girth, const std::vector<std::size_t>& m_schedule,
                      const SearchPolicy& policy) {
    check_even_target(target_girth, 4);
    const std::size_t cap = target_girth / 2;
    Method1Result res;
    res.system = primitive;
    res.girth = inevitable_girth(primitive, cap);
    if (reaches(res.girth, target_girth)) {
        res.status = SearchStatus::Found;
        return res;
    }
    const std::size_t lifted = method1_lifted_girth(target_girth);
    if (!reaches(inevitable_girth(primitive, lifted / 2 - 1), lifted)) {
        throw std::invalid_argument("primitive system has inevitable girth below " + std::to_string(lifted) +
                                    ", the lifted girth needed for target " + std::to_string(target_girth));
    }
    bool unknown = false;
    for (std::size_t m : m_schedule) {
        ShiftSearchResult sr = search_shifts(res.system, m, lifted, policy);
        if (sr.status != SearchStatus::Found) {
            unknown = unknown || sr.status == SearchStatus::Unknown;
            continue;
        }
        SetSystem next = method1_lift(res.system, *sr.shifts);
        GirthReport g = inevitable_girth(next, cap);
        res.stages.push_back({m, *sr.shifts, lifted, g});
        res.system = std::move(next);
        res.girth = std::move(g);
        if (reaches(res.girth, target_girth)) {
            res.status = SearchStatus::Found;
            return res;
        }
    }
    res.status = unknown ? SearchStatus::Unknown : SearchStatus::Infeasible;
    return res;
}

Method2Result method2(std::size_t v, const WeightProfile& profile, std::size_t target_girth,
                      const SearchPolicy& policy, WalkRule rule) {
    check_even_target(target_girth, 6);
    if (v < profile.max()) {
        throw std::invalid_argument("v = " + std::to_string(v) + " is smaller than the largest block size " +
                                    std::to_string(profile.max()));
    }
    const auto& sizes = profile.sizes();
    const std::size_t total = profile.total();
    const std::size_t walk_cap = target_girth / 2 - 1;

    // Position e -> (block, index inside block).
    std::vector<std::pair<std::size_t, std::size_t>> slot;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        for (std::size_t p = 0; p < sizes[j]; ++p) slot.emplace_back(j, p);
    }

    Method2Result res;
    CandidateSource source(policy);
    std::vector<Block> blocks;
    std::vector<std::vector<std::uint32_t>> cands(total);
    std::vector<std::size_t> next(total, 0);
    std::size_t placed = 0;

    auto generate = [&](std::size_t e) {
        const auto [j, p] = slot[e];
        const auto hi = static_cast<std::uint32_t>(v - sizes[j] + p);
        const std::uint32_t lo = p == 0 ? 0 : blocks.back().back() + 1;
        cands[e] = source.range(lo, hi);
        next[e] = 0;
    };
    auto acceptable = [&](Point beta) {
        for (Point x : blocks.back()) {
            if (edge_girth(v, blocks, x, beta, walk_cap, rule).walk) return false;
        }
        return true;
    };

    generate(0);
    while (placed < total) {
        const std::size_t e = placed;
        const std::size_t p = slot[e].second;
        bool accepted = false;
        while (next[e] < cands[e].size()) {
            if (res.stats.expansions >= policy.budget) {
                res.status = SearchStatus::Unknown;
                return res;
            }
            ++res.stats.expansions;
            const Point beta = cands[e][next[e]++];
            if (p == 0) {
                blocks.push_back({beta});
                accepted = true;
                break;
            }
            if (acceptable(beta)) {
                blocks.back().push_back(beta);
                accepted = true;
                break;
            }
        }
        if (accepted) {
            ++placed;
            if (placed < total) generate(placed);
            continue;
        }
        if (e == 0) {
            res.status = SearchStatus::Infeasible;
            return res;
        }
        --placed;
        ++res.stats.backtracks;
        if (slot[placed].second == 0) {
            blocks.pop_back();
        } else {
            blocks.back().pop_back();
        }
    }

    SetSystem system = SetSystem::make(v, blocks, 2);
    res.verification = inevitable_girth(system, target_girth / 2, rule);
    if (!reaches(res.verification, target_girth)) {
        throw std::logic_error("method2 result failed inevitable-girth verification");
    }
    res.status = SearchStatus::Found;
    res.system = std::move(system);
    return res;
}

}  // namespace fss
