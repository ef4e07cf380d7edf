#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "fsscode/ldpc_sim.hpp"
#include "fsscode/qc_lift.hpp"

using namespace fss;

namespace {

BinaryMatrix reference_code(const std::string& id) {
    const auto& row = fixtures::code_row(id);
    const SetSystem s = set_system_from_json(row.at("fss"));
    return expand(assemble(s, ShiftSequence::import(s, row.at("m").get<std::size_t>(),
                                                    row.at("shifts").get<std::vector<long long>>())));
}

bool syndrome_zero(const BinaryMatrix& h, const std::vector<std::uint8_t>& bits) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
        int parity = 0;
        for (auto c : h.row(r)) parity ^= bits[c];
        if (parity) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("noise_variance") {
    CHECK(noise_variance(0.0, 0.5) == doctest::Approx(1.0));
    CHECK(noise_variance(10.0, 0.5) == doctest::Approx(0.1));
    CHECK(noise_variance(3.0, 0.7) == doctest::Approx(1.0 / (1.4 * std::pow(10.0, 0.3))));
    CHECK_THROWS_AS(noise_variance(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("transmit is deterministic and has the expected LLR statistics") {
    const ChannelConfig cfg{2.0, 0.5, 99};
    CHECK(transmit(100, cfg) == transmit(100, cfg));
    CHECK(transmit(100, cfg) != transmit(100, ChannelConfig{2.0, 0.5, 100}));

    const std::size_t n = 100000;
    const auto llr = transmit(n, cfg);
    const double var = noise_variance(cfg.ebn0_db, cfg.rate);
    const double mean = 2.0 / var;
    const double sd = 2.0 / std::sqrt(var);
    double sum = 0.0, sq = 0.0;
    for (double x : llr) {
        sum += x;
        sq += (x - mean) * (x - mean);
    }
    const double m = sum / static_cast<double>(n);
    CHECK(std::abs(m - mean) <= 3.0 * sd / std::sqrt(static_cast<double>(n)));
    CHECK(std::sqrt(sq / static_cast<double>(n)) == doctest::Approx(sd).epsilon(0.02));
}

TEST_CASE("noiseless input decodes in zero iterations") {
    const BinaryMatrix h = reference_code("fss-3-12-m13");
    const std::vector<double> llr(h.cols(), 5.0);
    const DecodeResult r = spa_decode(h, llr);
    CHECK(r.converged);
    CHECK(r.iterations == 0);
    CHECK(r.bits == std::vector<std::uint8_t>(h.cols(), 0));
}

TEST_CASE("a single flipped bit is corrected") {
    const BinaryMatrix h = reference_code("fss-3-12-m13");
    SpaDecoder dec(h);
    for (std::size_t pos : {0, 17, 155}) {
        std::vector<double> llr(h.cols(), 4.0);
        llr[pos] = -4.0;
        const DecodeResult r = dec.decode(llr);
        CHECK(r.converged);
        CHECK(r.iterations >= 1);
        CHECK(r.bits == std::vector<std::uint8_t>(h.cols(), 0));
    }
}

TEST_CASE("a converged decode has a zero syndrome") {
    const BinaryMatrix h = reference_code("fss-3-10-m36");
    SpaDecoder dec(h);
    SpaDecoder other = dec.sibling();
    CHECK(other.code_length() == 360);
    int converged = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto llr = transmit(h.cols(), ChannelConfig{3.0, 0.7, seed});
        const DecodeResult r = dec.decode(llr, 30);
        CHECK(r.iterations <= 30);
        if (r.converged) {
            ++converged;
            CHECK(syndrome_zero(h, r.bits));
        }
        const DecodeResult s = other.decode(llr, 30);
        CHECK(s.bits == r.bits);
        CHECK(s.iterations == r.iterations);
    }
    CHECK(converged > 0);
}

TEST_CASE("decode checks the LLR length") {
    SpaDecoder dec(BinaryMatrix::identity(3));
    const std::vector<double> llr(2, 1.0);
    CHECK_THROWS_AS(dec.decode(llr), std::invalid_argument);
}

TEST_CASE("ber_sweep") {
    const BinaryMatrix h = reference_code("fss-3-10-m36");
    SweepConfig cfg;
    cfg.rate = 0.7;
    cfg.seed = 5;
    cfg.stop = StopRule{20, 400};
    CHECK(ber_sweep(h, {}, cfg).empty());

    const auto serial = ber_sweep(h, {1.0, 2.5, 4.0}, cfg);
    REQUIRE(serial.size() == 3);
    for (const auto& rec : serial) {
        CHECK(rec.bits == rec.frames * h.cols());
        CHECK(rec.frames <= 400);
        CHECK((rec.frame_errors >= 20 || rec.frames == 400));
        CHECK(rec.ber == doctest::Approx(static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits)));
        CHECK(rec.fer == doctest::Approx(static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames)));
    }
    CHECK(serial[0].ber >= serial[1].ber);
    CHECK(serial[1].ber >= serial[2].ber);

    cfg.workers = 3;
    const auto parallel = ber_sweep(h, {1.0, 2.5, 4.0}, cfg);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(parallel[i].frames == serial[i].frames);
        CHECK(parallel[i].bit_errors == serial[i].bit_errors);
        CHECK(parallel[i].frame_errors == serial[i].frame_errors);
    }
    CHECK(ber_csv(parallel) == ber_csv(serial));
}

TEST_CASE("ber_csv layout") {
    BerRecord r;
    r.ebn0_db = 1.5;
    r.bits = 100;
    r.bit_errors = 3;
    r.frames = 10;
    r.frame_errors = 2;
    r.ber = 0.03;
    r.fer = 0.2;
    const std::string csv = ber_csv({r});
    CHECK(csv.rfind("ebn0_db,bits,bit_errors,frames,frame_errors,ber,fer\n", 0) == 0);
    CHECK(csv.find("\n1.5,100,3,10,2,") != std::string::npos);
}

TEST_CASE("frame_seed separates SNR points and frames") {
    CHECK(frame_seed(1, 0, 0) != frame_seed(1, 0, 1));
    CHECK(frame_seed(1, 0, 0) != frame_seed(1, 1, 0));
    CHECK(frame_seed(1, 2, 3) == frame_seed(1, 2, 3));
}
