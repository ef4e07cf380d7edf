#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fsscode/qc_lift.hpp"
#include "fsscode/search_policy.hpp"
#include "fsscode/set_system.hpp"

namespace fss {

/// Shift-free closed walk of the mother matrix: the walk's shift sum is
/// sum(coeff * s[incidence]) over `terms`. Incidences are numbered
/// block-major, ascending point within a block.
struct WalkTemplate {
    std::vector<std::pair<std::uint32_t, std::int32_t>> terms;
    std::uint32_t length = 0;
};

/// Every closed walk with distinct successive blocks of length below
/// target/2, deduplicated by coefficient vector (up to sign). Each template
/// is filed under the largest incidence its walks need: once that incidence
/// is assigned, the template's sum is fixed.
class TemplateSet {
public:
    static TemplateSet build(const SetSystem& fss, std::size_t target_girth);

    std::size_t target_girth() const noexcept { return target_; }
    std::size_t incidence_count() const noexcept { return by_incidence_.size(); }
    const std::vector<WalkTemplate>& at(std::size_t incidence) const { return by_incidence_.at(incidence); }
    /// A walk whose shift sum vanishes identically: no modulus can reach the target.
    bool has_inevitable() const noexcept { return inevitable_; }
    std::size_t total() const noexcept;
    std::size_t max_per_incidence() const noexcept;

    /// Text form used by the on-disk cache.
    std::string serialize() const;
    static TemplateSet deserialize(const std::string& text);

private:
    std::size_t target_ = 0;
    bool inevitable_ = false;
    std::vector<std::vector<WalkTemplate>> by_incidence_;
};

/// Walks through a fixed incidence with lengths 2..max_len, counted without
/// deduplication, with r the largest replication and k the largest block.
std::uint64_t template_bound(std::size_t r, std::size_t k, std::size_t max_len);

/// Cache directory from FSSCODE_TEMPLATE_CACHE, or empty when unset.
std::string template_cache_dir();

/// Loads templates from `cache_dir` when present, otherwise builds and
/// stores them there. An empty directory disables caching.
TemplateSet load_or_build_templates(const SetSystem& fss, std::size_t target_girth, const std::string& cache_dir);

struct ShiftSearchStats {
    std::uint64_t expansions = 0;
    std::uint64_t backtracks = 0;
    /// Candidates rejected because they emptied a later incidence's domain.
    std::uint64_t wipeouts = 0;
    std::uint64_t restarts = 0;
    std::size_t templates = 0;
    std::size_t max_templates_per_incidence = 0;
};

/// Assigned prefix of the block-major shift vector.
class ShiftSearchState {
public:
    ShiftSearchState(const SetSystem& fss, std::size_t m, std::shared_ptr<const TemplateSet> templates);

    std::size_t size() const noexcept { return assigned_.size(); }
    std::size_t incidence_count() const noexcept { return templates_->incidence_count(); }
    bool complete() const noexcept { return size() == incidence_count(); }
    const std::vector<Shift>& assigned() const noexcept { return assigned_; }

    /// True iff giving the next incidence shift s closes no walk shorter
    /// than the target among walks whose incidences are all assigned.
    bool check_extension(Shift s) const;
    void push(Shift s);
    void pop();

    /// True when the next incidence is the first of its block.
    bool next_is_block_start() const;

private:
    std::size_t m_;
    std::shared_ptr<const TemplateSet> templates_;
    std::vector<bool> block_start_;
    std::vector<Shift> assigned_;
};

struct ShiftSearchResult {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<ShiftSequence> shifts;
    ShiftSearchStats stats;
    /// Target above 20, beyond the range the method is known to handle well.
    bool target_flagged = false;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kFlaggedTargetAbove = 20;

/// Backtracking over Z_m per incidence, first shift of each block pinned to
/// 0, with forward checking on the walk templates. Seeded-random order
/// restarts the search with a fresh order whenever a run uses its cutoff of
/// 1000 expansions times the Luby sequence; INFEASIBLE is only reported by
/// a run that finishes below its cutoff. A found sequence
/// is re-checked with the Tanner-graph oracle.
ShiftSearchResult search_shifts(const SetSystem& fss, std::size_t m, std::size_t target_girth,
                                const SearchPolicy& policy, const std::string& cache_dir = template_cache_dir());

/// Runs searches with seeds policy.seed, policy.seed + 1, ... on `workers`
/// threads and returns the first verified success to finish, so the winner
/// can vary between runs unless seeds == 1.
ShiftSearchResult search_shifts_portfolio(const SetSystem& fss, std::size_t m, std::size_t target_girth,
                                          const SearchPolicy& policy, std::size_t seeds, std::size_t workers);

}  // namespace fss
