#include "fsscode/search_policy.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fss {

std::string_view to_string(CandidateOrder order) {
    return order == CandidateOrder::Ascending ? "ascending" : "seeded-random";
}

std::string_view to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Found: return "FOUND";
        case SearchStatus::Infeasible: return "INFEASIBLE";
        case SearchStatus::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

CandidateOrder parse_candidate_order(std::string_view text) {
    if (text == "ascending") return CandidateOrder::Ascending;
    if (text == "seeded-random" || text == "random") return CandidateOrder::SeededRandom;
    throw std::invalid_argument("unknown candidate order '" + std::string(text) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CandidateSource::CandidateSource(const SearchPolicy& policy)
    : order_(policy.order), rng_(splitmix64(policy.seed)) {
    if (policy.budget == 0) throw std::invalid_argument("search budget must be positive");
}

std::vector<std::uint32_t> CandidateSource::range(std::uint32_t lo, std::uint32_t hi) {
    std::vector<std::uint32_t> out;
    if (lo > hi) return out;
    out.resize(hi - lo + 1);
    std::iota(out.begin(), out.end(), lo);
    if (order_ == CandidateOrder::SeededRandom) {
        for (std::size_t i = out.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng_() % i);
            std::swap(out[i - 1], out[j]);
        }
    }
    return out;
}

}  // namespace fss
