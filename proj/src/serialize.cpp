#include "fsscode/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fss {

namespace {

std::vector<std::size_t> read_counts(std::istringstream& line, std::size_t count, const char* what) {
    std::vector<std::size_t> out(count);
    for (auto& x : out) {
        long long v = 0;
        if (!(line >> v) || v < 0) throw std::runtime_error(std::string("alist: bad ") + what);
        x = static_cast<std::size_t>(v);
    }
    return out;
}

std::istringstream next_line(std::istringstream& in, const char* what) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
    }
    throw std::runtime_error(std::string("alist: missing ") + what);
}

}  // namespace

json to_json(const SetSystem& fss) {
    json blocks = json::array();
    for (const auto& blk : fss.blocks()) {
        json b = json::array();
        for (Point p : blk) b.push_back(p + 1);
        blocks.push_back(std::move(b));
    }
    return json{{"v", fss.v()}, {"t", fss.t()}, {"blocks", std::move(blocks)}};
}

SetSystem set_system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("v") || !j.contains("blocks")) {
        throw std::invalid_argument("set system JSON needs \"v\" and \"blocks\"");
    }
    const auto v = j.at("v").get<long long>();
    if (v <= 0) throw std::invalid_argument("\"v\" must be positive");
    const auto t = j.value("t", 2LL);
    if (t <= 0) throw std::invalid_argument("\"t\" must be positive");
    auto blocks = j.at("blocks").get<std::vector<std::vector<long long>>>();
    return validate_fss(static_cast<std::size_t>(v), blocks, static_cast<std::size_t>(t));
}

json to_json(const SetSystem& fss, const ShiftSequence& shifts) {
    json list = json::array();
    for (const auto& e : shifts.entries(fss)) {
        list.push_back(json{{"block", e.block + 1}, {"point", e.point + 1}, {"s", e.s}});
    }
    return json{{"m", shifts.m()}, {"shifts", std::move(list)}};
}

ShiftSequence shifts_from_json(const SetSystem& fss, const json& j) {
    if (!j.is_object() || !j.contains("m")) throw std::invalid_argument("shift JSON needs \"m\"");
    const auto m = j.at("m").get<long long>();
    if (m <= 0) throw std::invalid_argument("\"m\" must be positive");
    if (j.contains("list")) {
        return ShiftSequence::import(fss, static_cast<std::size_t>(m), j.at("list").get<std::vector<long long>>());
    }
    std::vector<ShiftSequence::Entry> entries;
    for (const auto& e : j.at("shifts")) {
        const auto block = e.at("block").get<long long>();
        const auto point = e.at("point").get<long long>();
        const auto s = e.at("s").get<long long>();
        if (block < 1 || point < 1) throw std::invalid_argument("shift entries are 1-based");
        if (s < 0 || s >= m) throw std::invalid_argument("shift " + std::to_string(s) + " outside [0,m)");
        entries.push_back({static_cast<std::size_t>(block - 1), static_cast<Point>(point - 1), static_cast<Shift>(s)});
    }
    return ShiftSequence::from_entries(fss, static_cast<std::size_t>(m), entries);
}

json to_json(const SystemStats& stats) {
    json lambda = json::array();
    for (std::size_t i = 0; i < stats.lambda_hist.size(); ++i) {
        json hist = json::array();
        for (const auto& [count, n] : stats.lambda_hist[i]) hist.push_back(json{{"lambda", count}, {"subsets", n}});
        lambda.push_back(json{{"i", i}, {"values", stats.lambda(i)}, {"histogram", std::move(hist)}});
    }
    return json{{"K", stats.block_sizes}, {"R", stats.replication}, {"lambda", std::move(lambda)}};
}

json to_json(const WalkWitness& w) {
    json points = json::array(), blocks = json::array();
    for (Point p : w.points) points.push_back(p + 1);
    for (std::size_t k : w.blocks) blocks.push_back(k + 1);
    return json{{"points", std::move(points)}, {"blocks", std::move(blocks)}};
}

json to_json(const GirthReport& rep, std::size_t rows) {
    json j;
    if (rep.girth) {
        j["girth"] = *rep.girth;
    } else {
        j["girth"] = "unbounded";
    }
    j["cap"] = rep.cap;
    if (rep.walk) {
        j["witness"] = to_json(*rep.walk);
    } else if (!rep.cycle.empty()) {
        json cycle = json::array();
        for (std::size_t node : rep.cycle) {
            cycle.push_back(node < rows ? json{{"row", node + 1}} : json{{"col", node - rows + 1}});
        }
        j["witness"] = json{{"cycle", std::move(cycle)}};
    }
    return j;
}

std::string to_alist(const BinaryMatrix& h) {
    std::ostringstream os;
    const std::size_t n = h.cols(), m = h.rows();
    const std::size_t max_col = h.max_col_weight(), max_row = h.max_row_weight();
    os << n << ' ' << m << '\n' << max_col << ' ' << max_row << '\n';
    auto weights = [&](std::size_t count, auto get) {
        for (std::size_t i = 0; i < count; ++i) os << (i ? " " : "") << get(i).size();
        os << '\n';
    };
    weights(n, [&](std::size_t c) -> const auto& { return h.col(c); });
    weights(m, [&](std::size_t r) -> const auto& { return h.row(r); });
    auto lists = [&](std::size_t count, std::size_t width, auto get) {
        for (std::size_t i = 0; i < count; ++i) {
            const auto& adj = get(i);
            for (std::size_t a = 0; a < width; ++a) {
                os << (a ? " " : "") << (a < adj.size() ? adj[a] + 1 : 0);
            }
            os << '\n';
        }
    };
    lists(n, max_col, [&](std::size_t c) -> const auto& { return h.col(c); });
    lists(m, max_row, [&](std::size_t r) -> const auto& { return h.row(r); });
    return os.str();
}

BinaryMatrix from_alist(const std::string& text) {
    std::istringstream in(text);
    auto header = next_line(in, "dimensions");
    const auto dims = read_counts(header, 2, "dimensions");
    const std::size_t n = dims[0], m = dims[1];
    auto maxima = next_line(in, "maximum weights");
    read_counts(maxima, 2, "maximum weights");
    auto col_line = next_line(in, "column weights");
    const auto col_w = read_counts(col_line, n, "column weights");
    auto row_line = next_line(in, "row weights");
    const auto row_w = read_counts(row_line, m, "row weights");
    std::vector<BinaryMatrix::Position> pos;
    for (std::size_t c = 0; c < n; ++c) {
        auto line = next_line(in, "column list");
        std::size_t seen = 0;
        long long r = 0;
        while (line >> r) {
            if (r == 0) continue;
            if (r < 0 || static_cast<std::size_t>(r) > m) throw std::runtime_error("alist: row index out of range");
            pos.emplace_back(static_cast<BinaryMatrix::Index>(r - 1), static_cast<BinaryMatrix::Index>(c));
            ++seen;
        }
        if (seen != col_w[c]) throw std::runtime_error("alist: column " + std::to_string(c + 1) + " weight mismatch");
    }
    BinaryMatrix h = BinaryMatrix::from_positions(m, n, std::move(pos));
    for (std::size_t r = 0; r < m; ++r) {
        auto line = next_line(in, "row list");
        std::vector<BinaryMatrix::Index> cols;
        long long c = 0;
        while (line >> c) {
            if (c == 0) continue;
            if (c < 0 || static_cast<std::size_t>(c) > n) throw std::runtime_error("alist: column index out of range");
            cols.push_back(static_cast<BinaryMatrix::Index>(c - 1));
        }
        std::sort(cols.begin(), cols.end());
        if (cols.size() != row_w[r] || cols != h.row(r)) {
            throw std::runtime_error("alist: row " + std::to_string(r + 1) + " disagrees with the column lists");
        }
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace fss
