#pragma once

#include <string>
#include <vector>

#include "fsscode/serialize.hpp"
#include "fsscode/set_system.hpp"

#ifndef FSSCODE_DATA_DIR
#define FSSCODE_DATA_DIR "data"
#endif

namespace fixtures {

inline const fss::json& reference() {
    static const fss::json data = fss::json::parse(fss::read_file(std::string(FSSCODE_DATA_DIR) + "/reference_vectors.json"));
    return data;
}

inline fss::SetSystem sys(std::size_t v, const std::vector<std::vector<long long>>& blocks, std::size_t t = 2) {
    return fss::validate_fss(v, blocks, t);
}

inline fss::SetSystem repeated(std::size_t k, std::size_t b) {
    std::vector<std::vector<long long>> blocks;
    for (std::size_t j = 0; j < b; ++j) {
        blocks.emplace_back();
        for (std::size_t p = 1; p <= k; ++p) blocks.back().push_back(static_cast<long long>(p));
    }
    return fss::validate_fss(k, blocks);
}

inline fss::SetSystem bibd632() {
    return sys(6, {{1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 5}, {1, 4, 6},
                   {2, 3, 4}, {2, 3, 6}, {2, 4, 5}, {3, 5, 6}, {4, 5, 6}});
}

inline fss::SetSystem incidence_example() { return fss::set_system_from_json(reference().at("incidence_example").at("fss")); }

inline const fss::json& code_row(const std::string& id) {
    for (const auto& r : reference().at("qc_codes")) {
        if (r.at("id") == id) return r;
    }
    throw std::runtime_error("no table row " + id);
}

}  // namespace fixtures
