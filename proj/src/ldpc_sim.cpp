#include "fsscode/ldpc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fsscode/search_policy.hpp"

namespace fss {

namespace {

constexpr double kMaxLlr = 40.0;
constexpr double kMaxTanh = 1.0 - 1e-15;

double clamp_llr(double x) { return std::clamp(x, -kMaxLlr, kMaxLlr); }

struct FrameOutcome {
    std::uint64_t bit_errors = 0;
    bool frame_error = false;
    bool converged = false;
};

FrameOutcome simulate_frame(SpaDecoder& dec, const ChannelConfig& cfg, std::size_t max_iter) {
    const auto llr = transmit(dec.code_length(), cfg);
    const DecodeResult r = dec.decode(llr, max_iter);
    FrameOutcome out;
    out.converged = r.converged;
    for (auto b : r.bits) out.bit_errors += b;
    out.frame_error = out.bit_errors > 0;
    return out;
}

}  // namespace

double noise_variance(double ebn0_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("rate must be in (0, 1]");
    return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

std::vector<double> transmit(std::size_t n, const ChannelConfig& cfg) {
    const double var = noise_variance(cfg.ebn0_db, cfg.rate);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(var));
    std::vector<double> llr(n);
    for (auto& l : llr) l = 2.0 * (1.0 + noise(rng)) / var;
    return llr;
}

SpaDecoder::SpaDecoder(const BinaryMatrix& h) {
    auto g = std::make_shared<Graph>();
    g->n = h.cols();
    g->max_row_weight = h.max_row_weight();
    g->var_edges.resize(h.cols());
    g->row_start.push_back(0);
    for (std::size_t r = 0; r < h.rows(); ++r) {
        for (auto c : h.row(r)) {
            g->var_edges[c].push_back(static_cast<std::uint32_t>(g->edge_var.size()));
            g->edge_var.push_back(c);
        }
        g->row_start.push_back(g->edge_var.size());
    }
    *this = SpaDecoder(std::shared_ptr<const Graph>(std::move(g)));
}

SpaDecoder::SpaDecoder(std::shared_ptr<const Graph> graph) : graph_(std::move(graph)) {
    v2c_.resize(graph_->edge_var.size());
    c2v_.resize(graph_->edge_var.size());
    fwd_.resize(graph_->max_row_weight + 1);
    posterior_.resize(graph_->n);
}

SpaDecoder SpaDecoder::sibling() const { return SpaDecoder(graph_); }

bool SpaDecoder::syndrome_zero(const std::vector<std::uint8_t>& bits) const {
    const auto& g = *graph_;
    for (std::size_t r = 0; r + 1 < g.row_start.size(); ++r) {
        std::uint8_t acc = 0;
        for (std::size_t e = g.row_start[r]; e < g.row_start[r + 1]; ++e) acc ^= bits[g.edge_var[e]];
        if (acc != 0) return false;
    }
    return true;
}

DecodeResult SpaDecoder::decode(std::span<const double> llr, std::size_t max_iter) {
    const auto& g = *graph_;
    const std::size_t n = g.n;
    if (llr.size() != n) throw std::invalid_argument("LLR length does not match the code length");
    DecodeResult out;
    out.bits.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        posterior_[j] = llr[j];
        out.bits[j] = llr[j] < 0 ? 1 : 0;
    }
    if (syndrome_zero(out.bits)) {
        out.converged = true;
        return out;
    }
    std::fill(c2v_.begin(), c2v_.end(), 0.0);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        for (std::size_t e = 0; e < g.edge_var.size(); ++e) {
            v2c_[e] = std::tanh(0.5 * clamp_llr(posterior_[g.edge_var[e]] - c2v_[e]));
        }
        for (std::size_t r = 0; r + 1 < g.row_start.size(); ++r) {
            const std::size_t b = g.row_start[r];
            const std::size_t d = g.row_start[r + 1] - b;
            fwd_[0] = 1.0;
            for (std::size_t i = 0; i < d; ++i) fwd_[i + 1] = fwd_[i] * v2c_[b + i];
            double back = 1.0;
            for (std::size_t i = d; i-- > 0;) {
                const double prod = std::clamp(fwd_[i] * back, -kMaxTanh, kMaxTanh);
                c2v_[b + i] = clamp_llr(2.0 * std::atanh(prod));
                back *= v2c_[b + i];
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            double sum = llr[j];
            for (auto e : g.var_edges[j]) sum += c2v_[e];
            posterior_[j] = sum;
            out.bits[j] = sum < 0 ? 1 : 0;
        }
        out.iterations = it;
        if (syndrome_zero(out.bits)) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

DecodeResult spa_decode(const BinaryMatrix& h, std::span<const double> llr, std::size_t max_iter) {
    SpaDecoder dec(h);
    return dec.decode(llr, max_iter);
}

std::uint64_t frame_seed(std::uint64_t seed, std::size_t snr_index, std::uint64_t frame_index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ snr_index) ^ frame_index);
}

std::vector<BerRecord> ber_sweep(const BinaryMatrix& h, const std::vector<double>& ebn0_db, const SweepConfig& cfg) {
    if (!std::is_sorted(ebn0_db.begin(), ebn0_db.end())) throw std::invalid_argument("SNR list must be ascending");
    if (cfg.stop.max_frames == 0) throw std::invalid_argument("max_frames must be positive");
    const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
    std::vector<SpaDecoder> decoders;
    decoders.emplace_back(h);
    while (decoders.size() < workers) decoders.push_back(decoders.front().sibling());
    std::vector<BerRecord> records;
    const std::uint64_t batch = 64 * workers;
    std::vector<FrameOutcome> outcomes;
    for (std::size_t si = 0; si < ebn0_db.size(); ++si) {
        BerRecord rec;
        rec.ebn0_db = ebn0_db[si];
        bool stop = false;
        for (std::uint64_t first = 0; !stop && first < cfg.stop.max_frames; first += batch) {
            const std::uint64_t count = std::min(batch, cfg.stop.max_frames - first);
            outcomes.assign(count, {});
            auto work = [&](std::size_t w) {
                for (std::uint64_t f = w; f < count; f += workers) {
                    ChannelConfig cc{ebn0_db[si], cfg.rate, frame_seed(cfg.seed, si, first + f)};
                    outcomes[f] = simulate_frame(decoders[w], cc, cfg.max_iter);
                }
            };
            if (workers == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
                for (auto& t : pool) t.join();
            }
            for (const auto& o : outcomes) {
                ++rec.frames;
                rec.bits += h.cols();
                rec.bit_errors += o.bit_errors;
                rec.frame_errors += o.frame_error ? 1 : 0;
                rec.converged += o.converged ? 1 : 0;
                rec.undetected += (o.converged && o.frame_error) ? 1 : 0;
                if (rec.frame_errors >= cfg.stop.min_frame_errors) {
                    stop = true;
                    break;
                }
            }
        }
        rec.ber = rec.bits ? static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits) : 0.0;
        rec.fer = rec.frames ? static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames) : 0.0;
        records.push_back(rec);
    }
    return records;
}

std::string ber_csv(const std::vector<BerRecord>& records) {
    std::ostringstream os;
    os << "ebn0_db,bits,bit_errors,frames,frame_errors,ber,fer\n";
    char line[256];
    for (const auto& r : records) {
        std::snprintf(line, sizeof line, "%.4g,%llu,%llu,%llu,%llu,%.6e,%.6e\n", r.ebn0_db,
                      static_cast<unsigned long long>(r.bits), static_cast<unsigned long long>(r.bit_errors),
                      static_cast<unsigned long long>(r.frames), static_cast<unsigned long long>(r.frame_errors),
                      r.ber, r.fer);
        os << line;
    }
    return os.str();
}

}  // namespace fss
