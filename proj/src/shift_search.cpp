#include "fsscode/shift_search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "fsscode/girth.hpp"

namespace fss {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::uint64_t kRestartUnit = 1000;

/// i-th term (1-based) of the Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
std::uint64_t luby(std::uint64_t i) {
    for (;;) {
        std::uint64_t k = 1;
        while ((std::uint64_t{1} << k) - 1 < i) ++k;
        if ((std::uint64_t{1} << k) - 1 == i) return std::uint64_t{1} << (k - 1);
        i -= (std::uint64_t{1} << (k - 1)) - 1;
    }
}

class TemplateEnumerator {
public:
    TemplateEnumerator(const SetSystem& fss, std::size_t max_len)
        : fss_(fss), max_len_(max_len), point_blocks_(fss.v()), offset_(fss.b() + 1, 0) {
        for (std::size_t k = 0; k < fss.b(); ++k) {
            offset_[k + 1] = offset_[k] + fss.block(k).size();
            for (Point p : fss.block(k)) point_blocks_[p].push_back(k);
        }
        net_.assign(offset_.back(), 0);
        by_incidence_.resize(offset_.back());
    }

    void run() {
        if (max_len_ < 2) return;
        pts_.assign(max_len_ + 1, 0);
        blks_.assign(max_len_, 0);
        for (Point s = 0; s < fss_.v(); ++s) {
            start_ = s;
            distances();
            pts_[0] = s;
            dfs(0, 0);
        }
    }

    bool inevitable() const { return inevitable_; }

    std::vector<std::vector<WalkTemplate>> take() {
        std::vector<std::vector<WalkTemplate>> out(by_incidence_.size());
        for (std::size_t t = 0; t < templates_.size(); ++t) out[filed_under_[t]].push_back(std::move(templates_[t]));
        return out;
    }

private:
    std::size_t incidence(std::size_t k, Point p) const {
        const auto& blk = fss_.block(k);
        return offset_[k] + static_cast<std::size_t>(std::lower_bound(blk.begin(), blk.end(), p) - blk.begin());
    }

    void distances() {
        dist_.assign(fss_.v(), kNone);
        std::deque<Point> queue{start_};
        dist_[start_] = 0;
        while (!queue.empty()) {
            const Point u = queue.front();
            queue.pop_front();
            for (std::size_t k : point_blocks_[u]) {
                for (Point w : fss_.block(k)) {
                    if (w < start_ || dist_[w] != kNone) continue;
                    dist_[w] = dist_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    void dfs(std::size_t j, std::size_t max_inc) {
        const Point cur = pts_[j];
        for (std::size_t k : point_blocks_[cur]) {
            if (j > 0 && k == blks_[j - 1]) continue;
            for (Point y : fss_.block(k)) {
                if (y == cur || y < start_) continue;
                const std::size_t taken = j + 1;
                if (dist_[y] > max_len_ - taken) continue;
                const std::size_t a = incidence(k, cur);
                const std::size_t b = incidence(k, y);
                const std::size_t reach = std::max({max_inc, a, b});
                --net_[a];
                ++net_[b];
                blks_[j] = k;
                pts_[taken] = y;
                if (y == start_ && taken >= 2 && k != blks_[0]) record(taken, reach);
                if (taken < max_len_) dfs(taken, reach);
                ++net_[a];
                --net_[b];
            }
        }
    }

    void record(std::size_t len, std::size_t reach) {
        std::vector<std::pair<std::uint32_t, std::int32_t>> terms;
        for (std::size_t j = 0; j < len; ++j) {
            for (Point p : {pts_[j], pts_[j + 1]}) {
                const std::size_t inc = incidence(blks_[j], p);
                if (net_[inc] != 0) terms.emplace_back(static_cast<std::uint32_t>(inc), net_[inc]);
            }
        }
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        if (terms.empty()) {
            inevitable_ = true;
            return;
        }
        if (terms.front().second < 0) {
            for (auto& t : terms) t.second = -t.second;
        }
        std::string key(reinterpret_cast<const char*>(terms.data()), terms.size() * sizeof(terms[0]));
        auto [it, fresh] = seen_.try_emplace(std::move(key), templates_.size());
        if (fresh) {
            templates_.push_back({std::move(terms), static_cast<std::uint32_t>(len)});
            filed_under_.push_back(reach);
            return;
        }
        auto& tpl = templates_[it->second];
        tpl.length = std::min(tpl.length, static_cast<std::uint32_t>(len));
        filed_under_[it->second] = std::min(filed_under_[it->second], reach);
    }

    const SetSystem& fss_;
    std::size_t max_len_;
    std::vector<std::vector<std::size_t>> point_blocks_;
    std::vector<std::size_t> offset_;
    std::vector<int> net_;
    std::vector<std::size_t> dist_;
    std::vector<Point> pts_;
    std::vector<std::size_t> blks_;
    Point start_ = 0;
    bool inevitable_ = false;
    std::unordered_map<std::string, std::size_t> seen_;
    std::vector<WalkTemplate> templates_;
    std::vector<std::size_t> filed_under_;
    std::vector<std::vector<WalkTemplate>> by_incidence_;
};

std::string cache_key(const SetSystem& fss, std::size_t target) {
    std::ostringstream os;
    os << "v=" << fss.v() << ";target=" << target << ";blocks=";
    for (const auto& blk : fss.blocks()) {
        os << '[';
        for (std::size_t a = 0; a < blk.size(); ++a) os << (a ? "," : "") << blk[a];
        os << ']';
    }
    return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Values y in [0, m) with c*y + rest = 0 (mod m).
void zero_solutions(std::int64_t c, std::int64_t rest, std::int64_t m, std::vector<Shift>& out) {
    out.clear();
    c = mod(c, m);
    const std::int64_t target = mod(-rest, m);
    const std::int64_t g = std::gcd(c, m);
    if (target % g != 0) return;
    const std::int64_t mg = m / g;
    std::int64_t inv = 0;
    {
        std::int64_t r0 = c / g % mg, r1 = mg, s0 = 1, s1 = 0;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
            std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        }
        inv = mod(s0, mg);
    }
    const std::int64_t y0 = mg == 1 ? 0 : (target / g % mg) * inv % mg;
    for (std::int64_t t = 0; t < g; ++t) out.push_back(static_cast<Shift>(y0 + t * mg));
}

/// Forward checking over the templates: once a template has a single
/// unassigned incidence left, the values that would close it are removed
/// from that incidence's domain. First shifts of blocks are known zeros.
class DomainFilter {
public:
    DomainFilter(const TemplateSet& templates, const std::vector<bool>& pinned, std::size_t m)
        : m_(m), pinned_(pinned), known_(pinned), value_(pinned.size(), 0), occurs_(pinned.size()),
          forbid_(pinned.size() * m, 0), allowed_(pinned.size(), m) {
        for (std::size_t e = 0; e < templates.incidence_count(); ++e) {
            for (const auto& t : templates.at(e)) {
                const std::size_t id = terms_.size();
                terms_.push_back(&t.terms);
                std::uint32_t open = 0;
                for (const auto& [inc, c] : t.terms) {
                    if (!pinned_[inc]) {
                        ++open;
                        occurs_[inc].push_back(id);
                    }
                }
                open_.push_back(open);
                if (open == 0) {
                    closed_ = true;
                } else if (open == 1) {
                    restrict(id);
                }
            }
        }
        initial_wipeout_ = std::any_of(allowed_.begin(), allowed_.end(), [](std::size_t a) { return a == 0; });
    }

    /// Some template consists of pinned incidences only, or a domain is
    /// empty before anything is assigned: no sequence exists.
    bool dead() const noexcept { return closed_ || initial_wipeout_; }

    bool allowed(std::size_t inc, Shift s) const { return forbid_[inc * m_ + s] == 0; }

    /// Returns false when some domain becomes empty; undo() must follow
    /// either way.
    bool assign(std::size_t inc, Shift s) {
        frames_.push_back(log_.size());
        if (pinned_[inc]) return true;
        known_[inc] = true;
        value_[inc] = s;
        wiped_ = false;
        for (std::size_t id : occurs_[inc]) {
            if (--open_[id] == 1) restrict(id);
        }
        return !wiped_;
    }

    void undo(std::size_t inc) {
        const std::size_t mark = frames_.back();
        frames_.pop_back();
        if (pinned_[inc]) return;
        while (log_.size() > mark) {
            const std::size_t slot = log_.back();
            log_.pop_back();
            if (--forbid_[slot] == 0) ++allowed_[slot / m_];
        }
        for (std::size_t id : occurs_[inc]) ++open_[id];
        known_[inc] = false;
    }

private:
    void restrict(std::size_t id) {
        std::int64_t rest = 0, coeff = 0;
        std::size_t free = 0;
        for (const auto& [inc, c] : *terms_[id]) {
            if (known_[inc]) {
                rest += static_cast<std::int64_t>(c) * value_[inc];
            } else {
                free = inc;
                coeff = c;
            }
        }
        zero_solutions(coeff, rest, static_cast<std::int64_t>(m_), scratch_);
        for (Shift y : scratch_) {
            const std::size_t slot = free * m_ + y;
            if (forbid_[slot]++ == 0 && --allowed_[free] == 0) wiped_ = true;
            log_.push_back(slot);
        }
    }

    std::size_t m_;
    std::vector<bool> pinned_;
    std::vector<bool> known_;
    std::vector<Shift> value_;
    std::vector<const std::vector<std::pair<std::uint32_t, std::int32_t>>*> terms_;
    std::vector<std::uint32_t> open_;
    std::vector<std::vector<std::size_t>> occurs_;
    std::vector<std::uint32_t> forbid_;
    std::vector<std::size_t> allowed_;
    std::vector<std::size_t> log_;
    std::vector<std::size_t> frames_;
    std::vector<Shift> scratch_;
    bool closed_ = false;
    bool initial_wipeout_ = false;
    bool wiped_ = false;
};

ShiftSearchResult run_search(const SetSystem& fss, std::size_t m, std::size_t target,
                             const std::shared_ptr<const TemplateSet>& templates, const SearchPolicy& policy,
                             const std::atomic<bool>* cancel) {
    ShiftSearchResult res;
    res.seed = policy.seed;
    res.target_flagged = target > kFlaggedTargetAbove;
    res.stats.templates = templates->total();
    res.stats.max_templates_per_incidence = templates->max_per_incidence();
    if (templates->has_inevitable()) {
        res.status = SearchStatus::Infeasible;
        return res;
    }
    CandidateSource source(policy);
    ShiftSearchState state(fss, m, templates);
    const std::size_t n = state.incidence_count();
    std::vector<bool> pinned;
    for (const auto& blk : fss.blocks()) {
        for (std::size_t a = 0; a < blk.size(); ++a) pinned.push_back(a == 0);
    }
    DomainFilter domains(*templates, pinned, m);
    if (domains.dead()) {
        res.status = SearchStatus::Infeasible;
        return res;
    }
    std::vector<std::vector<std::uint32_t>> cands(n + 1);
    std::vector<std::size_t> pos(n + 1, 0);
    auto generate = [&](std::size_t e) {
        cands[e] = pinned[e] ? std::vector<std::uint32_t>{0} : source.range(0, static_cast<std::uint32_t>(m - 1));
        pos[e] = 0;
    };
    const bool restarts = policy.order == CandidateOrder::SeededRandom;
    std::uint64_t cutoff = restarts ? kRestartUnit : std::numeric_limits<std::uint64_t>::max();
    std::uint64_t run_expansions = 0;
    if (n > 0) generate(0);
    while (!state.complete()) {
        const std::size_t e = state.size();
        bool advanced = false;
        bool restart = false;
        while (pos[e] < cands[e].size()) {
            const Shift s = cands[e][pos[e]++];
            if (!domains.allowed(e, s)) continue;
            if (res.stats.expansions >= policy.budget || (cancel != nullptr && cancel->load())) {
                res.status = SearchStatus::Unknown;
                return res;
            }
            if (run_expansions >= cutoff) {
                restart = true;
                break;
            }
            ++res.stats.expansions;
            ++run_expansions;
            if (!state.check_extension(s)) continue;
            if (domains.assign(e, s)) {
                state.push(s);
                advanced = true;
                break;
            }
            domains.undo(e);
            ++res.stats.wipeouts;
        }
        if (restart) {
            while (state.size() > 0) {
                domains.undo(state.size() - 1);
                state.pop();
            }
            ++res.stats.restarts;
            run_expansions = 0;
            cutoff = kRestartUnit * luby(res.stats.restarts + 1);
            generate(0);
            continue;
        }
        if (advanced) {
            if (!state.complete()) generate(e + 1);
            continue;
        }
        if (e == 0) {
            res.status = SearchStatus::Infeasible;
            return res;
        }
        state.pop();
        domains.undo(e - 1);
        ++res.stats.backtracks;
    }
    std::vector<long long> flat(state.assigned().begin(), state.assigned().end());
    ShiftSequence seq = ShiftSequence::from_flat(fss, m, flat);
    const BinaryMatrix h = expand(assemble(fss, seq));
    if (target >= 4 && has_cycle_within(h, target - 2)) {
        throw std::logic_error("shift search produced a sequence that fails the Tanner-graph check");
    }
    res.status = SearchStatus::Found;
    res.shifts = std::move(seq);
    return res;
}

void check_target(std::size_t target, std::size_t m) {
    if (target % 2 != 0) throw std::invalid_argument("target girth must be even");
    if (m == 0) throw std::invalid_argument("modulus m must be positive");
}

}  // namespace

TemplateSet TemplateSet::build(const SetSystem& fss, std::size_t target_girth) {
    TemplateSet set;
    set.target_ = target_girth;
    const std::size_t max_len = target_girth / 2 == 0 ? 0 : target_girth / 2 - 1;
    TemplateEnumerator en(fss, max_len);
    en.run();
    set.inevitable_ = en.inevitable();
    set.by_incidence_ = en.take();
    return set;
}

std::size_t TemplateSet::total() const noexcept {
    std::size_t n = 0;
    for (const auto& v : by_incidence_) n += v.size();
    return n;
}

std::size_t TemplateSet::max_per_incidence() const noexcept {
    std::size_t n = 0;
    for (const auto& v : by_incidence_) n = std::max(n, v.size());
    return n;
}

std::string TemplateSet::serialize() const {
    std::ostringstream os;
    os << "fsscode-templates 1\n";
    os << target_ << ' ' << (inevitable_ ? 1 : 0) << ' ' << by_incidence_.size() << '\n';
    for (std::size_t e = 0; e < by_incidence_.size(); ++e) {
        for (const auto& t : by_incidence_[e]) {
            os << e << ' ' << t.length << ' ' << t.terms.size();
            for (const auto& [inc, c] : t.terms) os << ' ' << inc << ' ' << c;
            os << '\n';
        }
    }
    return os.str();
}

TemplateSet TemplateSet::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "fsscode-templates" || version != 1) throw std::runtime_error("not a template cache file");
    TemplateSet set;
    int inevitable = 0;
    std::size_t n = 0;
    if (!(is >> set.target_ >> inevitable >> n)) throw std::runtime_error("truncated template cache header");
    set.inevitable_ = inevitable != 0;
    set.by_incidence_.resize(n);
    std::size_t e = 0, terms = 0;
    WalkTemplate t;
    while (is >> e >> t.length >> terms) {
        if (e >= n) throw std::runtime_error("template cache incidence out of range");
        t.terms.resize(terms);
        for (auto& [inc, c] : t.terms) {
            if (!(is >> inc >> c)) throw std::runtime_error("truncated template cache entry");
        }
        set.by_incidence_[e].push_back(t);
    }
    return set;
}

std::uint64_t template_bound(std::size_t r, std::size_t k, std::size_t max_len) {
    if (k < 2 || max_len < 2) return 0;
    const std::uint64_t branch = static_cast<std::uint64_t>(r > 0 ? r - 1 : 0) * (k - 1);
    std::uint64_t total = 0;
    std::uint64_t power = branch;  // branch^(len-1) for len = 2
    for (std::size_t len = 2; len <= max_len; ++len) {
        total += power;
        power *= branch;
    }
    return 2 * (k - 1) * total;
}

std::string template_cache_dir() {
    const char* dir = std::getenv("FSSCODE_TEMPLATE_CACHE");
    return dir == nullptr ? std::string{} : std::string{dir};
}

TemplateSet load_or_build_templates(const SetSystem& fss, std::size_t target_girth, const std::string& cache_dir) {
    if (cache_dir.empty()) return TemplateSet::build(fss, target_girth);
    namespace fs = std::filesystem;
    const std::string key = cache_key(fss, target_girth);
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.tpl", static_cast<unsigned long long>(fnv1a(key)));
    const fs::path path = fs::path(cache_dir) / name;
    if (std::ifstream in{path}) {
        std::string stored_key;
        std::getline(in, stored_key);
        if (stored_key == key) {
            std::stringstream body;
            body << in.rdbuf();
            return TemplateSet::deserialize(body.str());
        }
    }
    TemplateSet set = TemplateSet::build(fss, target_girth);
    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out{tmp};
        out << key << '\n' << set.serialize();
    }
    fs::rename(tmp, path, ec);
    return set;
}

ShiftSearchState::ShiftSearchState(const SetSystem& fss, std::size_t m, std::shared_ptr<const TemplateSet> templates)
    : m_(m), templates_(std::move(templates)) {
    if (templates_->incidence_count() != fss.incidence_count()) {
        throw std::invalid_argument("templates were built for a different system");
    }
    for (const auto& blk : fss.blocks()) {
        for (std::size_t a = 0; a < blk.size(); ++a) block_start_.push_back(a == 0);
    }
    assigned_.reserve(fss.incidence_count());
}

bool ShiftSearchState::check_extension(Shift s) const {
    const std::size_t e = assigned_.size();
    if (e >= incidence_count()) return false;
    const auto m = static_cast<std::int64_t>(m_);
    for (const auto& t : templates_->at(e)) {
        std::int64_t sum = 0;
        for (const auto& [inc, c] : t.terms) sum += static_cast<std::int64_t>(c) * (inc == e ? s : assigned_[inc]);
        if (sum % m == 0) return false;
    }
    return true;
}

void ShiftSearchState::push(Shift s) {
    if (complete()) throw std::logic_error("shift search state is already complete");
    assigned_.push_back(s);
}

void ShiftSearchState::pop() {
    if (assigned_.empty()) throw std::logic_error("shift search state is empty");
    assigned_.pop_back();
}

bool ShiftSearchState::next_is_block_start() const {
    return !complete() && block_start_[assigned_.size()];
}

ShiftSearchResult search_shifts(const SetSystem& fss, std::size_t m, std::size_t target_girth,
                                const SearchPolicy& policy, const std::string& cache_dir) {
    check_target(target_girth, m);
    auto templates = std::make_shared<const TemplateSet>(load_or_build_templates(fss, target_girth, cache_dir));
    return run_search(fss, m, target_girth, templates, policy, nullptr);
}

ShiftSearchResult search_shifts_portfolio(const SetSystem& fss, std::size_t m, std::size_t target_girth,
                                          const SearchPolicy& policy, std::size_t seeds, std::size_t workers) {
    check_target(target_girth, m);
    if (seeds == 0) throw std::invalid_argument("portfolio needs at least one seed");
    workers = std::clamp<std::size_t>(workers, 1, seeds);
    auto templates =
        std::make_shared<const TemplateSet>(load_or_build_templates(fss, target_girth, template_cache_dir()));
    std::atomic<bool> done{false};
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::optional<ShiftSearchResult> winner;
    bool any_unknown = false;
    ShiftSearchResult last;
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds && !done.load(); i = next++) {
            SearchPolicy p = policy;
            p.seed = policy.seed + i;
            ShiftSearchResult r = run_search(fss, m, target_girth, templates, p, &done);
            std::lock_guard lock(mu);
            if (r.status == SearchStatus::Found && !winner) {
                winner = std::move(r);
                done = true;
            } else {
                any_unknown = any_unknown || r.status == SearchStatus::Unknown;
                last = std::move(r);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (winner) return *winner;
    last.status = any_unknown ? SearchStatus::Unknown : SearchStatus::Infeasible;
    return last;
}

}  // namespace fss
