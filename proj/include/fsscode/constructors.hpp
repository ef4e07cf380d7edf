#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fsscode/girth.hpp"
#include "fsscode/qc_lift.hpp"
#include "fsscode/search_policy.hpp"
#include "fsscode/set_system.hpp"
#include "fsscode/shift_search.hpp"

namespace fss {

/// Target block sizes k_1..k_b, each at least 2.
class WeightProfile {
public:
    explicit WeightProfile(std::vector<std::size_t> sizes);

    const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
    std::size_t b() const noexcept { return sizes_.size(); }
    std::size_t max() const noexcept;
    std::size_t total() const noexcept;

private:
    std::vector<std::size_t> sizes_;
};

/// The set system whose incidence matrix is the lifted code: block (j, c)
/// holds point copy i*m + ((c - s_ij) mod m) of every point i of block j.
SetSystem method1_lift(const SetSystem& primitive, const ShiftSequence& shifts);

/// Smallest even lifted girth L with 3L >= target.
std::size_t method1_lifted_girth(std::size_t target_girth);

struct Method1Stage {
    std::size_t m = 0;
    ShiftSequence shifts;
    std::size_t lifted_girth = 0;
    GirthReport girth;  // of the lifted set system
};

struct Method1Result {
    SearchStatus status = SearchStatus::Unknown;
    SetSystem system;
    GirthReport girth;
    std::vector<Method1Stage> stages;
};

/// Lifts repeatedly, trying each m of the schedule in turn, until the
/// inevitable girth reaches the target. Throws std::invalid_argument when
/// the primitive's own girth is below method1_lifted_girth(target).
Method1Result method1(const SetSystem& primitive, std::size_t target_girth, const std::vector<std::size_t>& m_schedule,
                      const SearchPolicy& policy);

struct Method2Stats {
    std::uint64_t expansions = 0;
    std::uint64_t backtracks = 0;
};

struct Method2Result {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<SetSystem> system;
    /// Inevitable girth of the result, searched up to target/2.
    GirthReport verification;
    Method2Stats stats;
};

/// Point-by-point backtracking construction of a system with the given
/// block sizes and inevitable girth at least target_girth.
Method2Result method2(std::size_t v, const WeightProfile& profile, std::size_t target_girth,
                      const SearchPolicy& policy, WalkRule rule = WalkRule::Strict);

}  // namespace fss
