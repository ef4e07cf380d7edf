#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fsscode/binary_matrix.hpp"

namespace fss {

struct ChannelConfig {
    double ebn0_db = 0.0;
    /// Rate used for the Eb/N0 to noise-variance conversion.
    double rate = 0.5;
    std::uint64_t seed = 0;
};

/// sigma^2 = 1 / (2 * rate * 10^(ebn0_db / 10)).
double noise_variance(double ebn0_db, double rate);

/// BPSK of the all-zero codeword (+1 per bit) over AWGN; returns the channel
/// LLRs 2y/sigma^2.
std::vector<double> transmit(std::size_t n, const ChannelConfig& cfg);

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    bool converged = false;
    std::size_t iterations = 0;
};

inline constexpr std::size_t kDefaultMaxIterations = 50;

/// Flooding sum-product decoder in the LLR domain (tanh rule). The
/// syndrome is checked before the first iteration, so an error-free input
/// finishes after 0 iterations.
class SpaDecoder {
public:
    explicit SpaDecoder(const BinaryMatrix& h);

    /// Another decoder over the same graph with its own message buffers.
    SpaDecoder sibling() const;

    DecodeResult decode(std::span<const double> llr, std::size_t max_iter = kDefaultMaxIterations);

    std::size_t code_length() const noexcept { return graph_->n; }

private:
    // Edges are numbered row by row; var_edges lists each column's edges.
    struct Graph {
        std::size_t n = 0;
        std::size_t max_row_weight = 0;
        std::vector<std::uint32_t> edge_var;
        std::vector<std::size_t> row_start;
        std::vector<std::vector<std::uint32_t>> var_edges;
    };

    explicit SpaDecoder(std::shared_ptr<const Graph> graph);
    bool syndrome_zero(const std::vector<std::uint8_t>& bits) const;

    std::shared_ptr<const Graph> graph_;
    std::vector<double> v2c_, c2v_, fwd_, posterior_;
};

DecodeResult spa_decode(const BinaryMatrix& h, std::span<const double> llr,
                        std::size_t max_iter = kDefaultMaxIterations);

struct BerRecord {
    double ebn0_db = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    /// Decodes that converged, and those among them that hit a nonzero
    /// codeword; kept for diagnostics, not written to CSV.
    std::uint64_t converged = 0;
    std::uint64_t undetected = 0;
};

struct StopRule {
    std::uint64_t min_frame_errors = 100;
    std::uint64_t max_frames = 100000;
};

struct SweepConfig {
    double rate = 0.5;
    std::uint64_t seed = 0;
    std::size_t max_iter = kDefaultMaxIterations;
    std::size_t workers = 1;
    StopRule stop;
};

/// Seed of frame f at SNR index i; shared by serial and parallel runs.
std::uint64_t frame_seed(std::uint64_t seed, std::size_t snr_index, std::uint64_t frame_index);

/// Per SNR point, frames are simulated until min_frame_errors frame errors
/// or max_frames frames; the stopping frame does not depend on `workers`.
std::vector<BerRecord> ber_sweep(const BinaryMatrix& h, const std::vector<double>& ebn0_db, const SweepConfig& cfg);

std::string ber_csv(const std::vector<BerRecord>& records);

}  // namespace fss
