#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace fss {

enum class CandidateOrder { Ascending, SeededRandom };

struct SearchPolicy {
    CandidateOrder order = CandidateOrder::Ascending;
    /// Maximum number of candidate evaluations before giving up.
    std::uint64_t budget = 10'000'000;
    std::uint64_t seed = 0;
};

enum class SearchStatus { Found, Infeasible, Unknown };

std::string_view to_string(CandidateOrder order);
std::string_view to_string(SearchStatus status);
CandidateOrder parse_candidate_order(std::string_view text);

std::uint64_t splitmix64(std::uint64_t x);

/// Emits candidate lists in the order a policy asks for. Shuffling draws
/// from one generator seeded once, so a search is reproducible from its seed.
class CandidateSource {
public:
    explicit CandidateSource(const SearchPolicy& policy);

    /// Values lo..hi inclusive (empty when lo > hi).
    std::vector<std::uint32_t> range(std::uint32_t lo, std::uint32_t hi);

private:
    CandidateOrder order_;
    std::mt19937_64 rng_;
};

}  // namespace fss
