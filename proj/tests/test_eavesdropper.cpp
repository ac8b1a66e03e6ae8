#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "wavesec/eavesdropper.hpp"
#include "wavesec/qpsk.hpp"
#include "wavesec/robustness.hpp"
#include "wavesec/rng.hpp"

using namespace wavesec;

namespace {

double noiseless_afdm_ber(double c1_true, double c1_probe, std::size_t n, std::size_t trials,
                          std::uint64_t seed) {
    const double c2 = 1e-3;
    const Precoder tx = afdm_precoder({n, c1_true, c2});
    Rng rng(seed);
    std::size_t errors = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto bits = rng.bits(2 * n);
        const auto x = modulate(qpsk_map(bits), tx);
        const auto d_hat = afdm_fast_demod(x, c1_probe, c2);
        errors += count_bit_errors(bits, qpsk_demap(d_hat));
    }
    return static_cast<double>(errors) / static_cast<double>(trials * 2 * n);
}

} // namespace

TEST_CASE("otfs candidate enumeration") {
    const auto set128 = otfs_candidates(128);
    REQUIRE(set128.candidates.size() == 8);
    const std::size_t expected[] = {1, 2, 4, 8, 16, 32, 64, 128};
    for (std::size_t i = 0; i < 8; ++i) {
        const auto& c = std::get<OtfsCandidate>(set128.candidates[i]);
        CHECK(c.doppler_bins == expected[i]);
        CHECK(c.doppler_bins * c.delay_bins == 128);
    }

    CHECK(otfs_candidates(64).candidates.size() == 7);

    const auto prime = otfs_candidates(7);
    REQUIRE(prime.candidates.size() == 2);
    CHECK(std::get<OtfsCandidate>(prime.candidates[0]).doppler_bins == 1);
    CHECK(std::get<OtfsCandidate>(prime.candidates[1]).doppler_bins == 7);
}

TEST_CASE("otfs candidate count equals sigma(n) up to 1e4") {
    for (std::size_t n = 2; n <= 10000; ++n) {
        CHECK(otfs_candidates(n).candidates.size() == divisors(n).size());
    }
}

TEST_CASE("afdm candidate grid") {
    const auto set = afdm_candidates(0.3, 0.3, 128, 1.0, 1e-3);
    // count tracks Eq.-(8) within the floor slack
    CHECK(std::abs(afdm_ma(128, 0.3, 0.3, 1.0) - static_cast<double>(set.candidates.size())) <= 1.0);
    CHECK(set.candidates.size() > 10000);
    CHECK(set.candidates.size() < 16000);

    // step = 2*Delta1 = 1/(pi*127^2)
    const double expect_step = 1.0 / (std::numbers::pi * 127.0 * 127.0);
    CHECK(std::abs(set.step - expect_step) / expect_step < 1e-12);
    CHECK(std::abs(set.step - 1.9737e-5) / 1.9737e-5 < 1e-4);
    CHECK(set.step == 2.0 * delta1_bound(128, 1.0));

    // consecutive candidates are spaced by the step, first sits at theta_max/N
    const auto& first = std::get<AfdmCandidate>(set.candidates.front());
    CHECK(std::abs(first.c1 - 0.3 / 128.0) < 1e-15);
    CHECK(first.c2 == 1e-3);
    for (std::size_t i = 1; i < 50; ++i) {
        const double gap = std::get<AfdmCandidate>(set.candidates[i]).c1 -
                           std::get<AfdmCandidate>(set.candidates[i - 1]).c1;
        CHECK(std::abs(gap - set.step) / set.step < 1e-9);
    }
    const auto& last = std::get<AfdmCandidate>(set.candidates.back());
    CHECK(last.c1 <= 0.3 + 1e-12);

    // degenerate range
    CHECK_THROWS_AS(afdm_candidates(0.3, 0.3 / 128.0, 128, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(afdm_candidates(0.3, 0.3, 128, 0.0), std::invalid_argument);
}

TEST_CASE("attempt_demod on matched candidates") {
    Rng rng(5);
    const std::size_t n = 64;

    const Precoder tx_otfs = otfs_precoder({n, 16, 4});
    auto bits = rng.bits(2 * n);
    auto d = qpsk_map(bits);
    auto x = modulate(d, tx_otfs);
    const auto d_otfs = attempt_demod(x, OtfsCandidate{16, 4}, Waveform::kOtfs);
    CHECK(max_abs_diff(d_otfs, d) < 1e-9);

    const Precoder tx_afdm = afdm_precoder({n, 0.2, 1e-3});
    bits = rng.bits(2 * n);
    d = qpsk_map(bits);
    x = modulate(d, tx_afdm);
    const auto d_afdm = attempt_demod(x, AfdmCandidate{0.2, 1e-3}, Waveform::kAfdm);
    CHECK(max_abs_diff(d_afdm, d) < 1e-9);
}

TEST_CASE("wrong otfs grids land on the error floor") {
    Rng rng(6);
    const std::size_t n = 128;
    const Precoder tx = otfs_precoder({n, 16, 8});
    PrecoderCache cache;
    for (std::size_t k_bad : {1u, 2u, 8u, 32u, 128u}) {
        std::size_t errors = 0;
        const std::size_t trials = 200;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto bits = rng.bits(2 * n);
            const auto x = modulate(qpsk_map(bits), tx);
            const auto d_hat = attempt_demod(x, OtfsCandidate{k_bad, n / k_bad}, Waveform::kOtfs, &cache);
            errors += count_bit_errors(bits, qpsk_demap(d_hat));
        }
        const double ber = static_cast<double>(errors) / static_cast<double>(trials * 2 * n);
        CHECK(ber > 0.4);
        CHECK(ber < 0.6);
    }
}

TEST_CASE("afdm candidates far off the grid scramble the data") {
    const double step = 2.0 * delta1_bound(128, 1.0);
    const double ber = noiseless_afdm_ber(0.2, 0.2 + 10.0 * step, 128, 200, 77);
    CHECK(ber > 0.4);
    CHECK(ber < 0.6);
}

TEST_CASE("grid-distance error floor") {
    // BER > 0.4 at grid distances of >= 2 steps from the true c1; the
    // 4-step distance sits in a Fresnel lobe and only clears 1/3.
    const double step = 2.0 * delta1_bound(128, 1.0);
    for (double k : {2.0, 3.0, 5.0, 8.0, 1000.0}) {
        const double ber = noiseless_afdm_ber(0.2, 0.2 + k * step, 128, 300, 900 + static_cast<int>(k));
        CHECK(ber > 0.4);
        CHECK(ber < 0.6);
    }
    const double pocket = noiseless_afdm_ber(0.2, 0.2 + 4.0 * step, 128, 300, 904);
    CHECK(pocket > 1.0 / 3.0);
    CHECK(pocket < 0.6);
}

TEST_CASE("score_candidate modes") {
    Rng rng(9);
    const auto bits = rng.bits(256);
    const auto d = qpsk_map(bits);

    CHECK(score_candidate(d, GroundTruthBer{d}) == 0.0);
    CHECK(score_candidate(d, BlindFourthPower{}) < 0.01);

    // uniform-phase unit-modulus cloud
    ComplexVector cloud(128);
    for (auto& z : cloud) z = unit_phase(rng.uniform());
    CHECK(score_candidate(cloud, BlindFourthPower{}) > 0.7);

    // flipping one symbol's quadrant costs 1-2 of the 256 bits
    ComplexVector flipped = d;
    flipped[0] = -flipped[0];
    const double s = score_candidate(flipped, GroundTruthBer{d});
    CHECK(s == doctest::Approx(2.0 / 256.0));
}

TEST_CASE("bruteforce over otfs candidates") {
    Rng rng(10);
    const std::size_t n = 128;
    const Precoder tx = otfs_precoder({n, 16, 8});
    const auto bits = rng.bits(2 * n);
    const auto d = qpsk_map(bits);
    const auto x = modulate(d, tx);
    PrecoderCache cache;

    const auto res = bruteforce(x, otfs_candidates(n), GroundTruthBer{d}, 0.1, &cache);
    CHECK(res.succeeded);
    CHECK(res.attempts_used <= 8);
    const auto& win = std::get<OtfsCandidate>(res.winner_candidate());
    CHECK(win.doppler_bins == 16);
    CHECK(win.delay_bins == 8);
    CHECK(res.winner_score() == 0.0);
    CHECK(res.attempts[res.winner].ber_vs_truth.has_value());
}

TEST_CASE("bruteforce with a budget of wrong afdm candidates fails") {
    Rng rng(11);
    const std::size_t n = 128;
    const double c2 = 1e-3;
    const Precoder tx = afdm_precoder({n, 0.2, c2});
    const auto bits = rng.bits(2 * n);
    const auto d = qpsk_map(bits);
    const auto x = modulate(d, tx);

    // 8 grid candidates spaced >= 2*Delta1, none near the true c1
    CandidateSet set;
    set.waveform = Waveform::kAfdm;
    set.n = n;
    const double step = 2.0 * delta1_bound(n, 1.0);
    set.step = step;
    for (int i = 0; i < 8; ++i) {
        set.candidates.push_back(AfdmCandidate{0.01 + (20.0 * i) * step, c2});
    }
    const auto res = bruteforce(x, set, GroundTruthBer{d}, 0.1, nullptr);
    CHECK(!res.succeeded);
    CHECK(res.attempts_used == 8);
    CHECK(res.winner_score() > 0.35);
    CHECK(res.winner_score() < 0.6);
}

TEST_CASE("bruteforce on a singleton true candidate") {
    Rng rng(12);
    const std::size_t n = 32;
    const Precoder tx = otfs_precoder({n, 4, 8});
    const auto bits = rng.bits(2 * n);
    const auto d = qpsk_map(bits);
    const auto x = modulate(d, tx);
    CandidateSet set;
    set.waveform = Waveform::kOtfs;
    set.n = n;
    set.candidates.push_back(OtfsCandidate{4, 8});
    const auto res = bruteforce(x, set, GroundTruthBer{d});
    CHECK(res.winner == 0);
    CHECK(res.attempts_used == 1);
    CHECK(res.winner_score() == 0.0);
    CHECK(!res.succeeded); // no threshold given: caller policy
}

TEST_CASE("exactly one otfs candidate demodulates, for every grid") {
    Rng rng(13);
    for (std::size_t n : {16u, 32u, 64u, 128u}) {
        PrecoderCache cache;
        for (auto k_true : divisors(n)) {
            const Precoder tx = otfs_precoder({n, static_cast<std::size_t>(k_true), n / k_true});
            const auto bits = rng.bits(2 * n);
            const auto d = qpsk_map(bits);
            const auto x = modulate(d, tx);
            std::size_t perfect = 0;
            std::size_t perfect_k = 0;
            for (const auto& cand : otfs_candidates(n).candidates) {
                const auto d_hat = attempt_demod(x, cand, Waveform::kOtfs, &cache);
                if (score_candidate(d_hat, GroundTruthBer{d}) < 1e-6) {
                    ++perfect;
                    perfect_k = std::get<OtfsCandidate>(cand).doppler_bins;
                }
            }
            CHECK(perfect == 1);
            CHECK(perfect_k == k_true);
        }
    }
}

TEST_CASE("blind scoring agrees with ground truth ranking") {
    Rng rng(14);
    const std::size_t n = 128;
    const Precoder tx = otfs_precoder({n, 16, 8});
    const auto set = otfs_candidates(n);
    PrecoderCache cache;
    std::size_t both_first = 0;
    const std::size_t trials = 300;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto bits = rng.bits(2 * n);
        const auto d = qpsk_map(bits);
        const auto x = modulate(d, tx);
        const auto gt = bruteforce(x, set, GroundTruthBer{d}, std::nullopt, &cache);
        const auto blind = bruteforce(x, set, BlindFourthPower{}, std::nullopt, &cache);
        const auto& kg = std::get<OtfsCandidate>(gt.winner_candidate());
        const auto& kb = std::get<OtfsCandidate>(blind.winner_candidate());
        if (kg.doppler_bins == 16 && kb.doppler_bins == 16) ++both_first;
    }
    CHECK(static_cast<double>(both_first) / static_cast<double>(trials) >= 0.99);
}

TEST_CASE("attack result serialization") {
    Rng rng(15);
    const std::size_t n = 16;
    const Precoder tx = otfs_precoder({n, 4, 4});
    const auto bits = rng.bits(2 * n);
    const auto d = qpsk_map(bits);
    const auto x = modulate(d, tx);
    const auto res = bruteforce(x, otfs_candidates(n), GroundTruthBer{d});

    const auto j = attack_result_to_json(res, Waveform::kOtfs);
    CHECK(j.at("waveform") == "otfs");
    CHECK(j.at("attempts").size() == res.attempts.size());
    CHECK(j.at("attempts_used").get<std::size_t>() == res.attempts_used);
    CHECK(j.at("winner").get<std::size_t>() == res.winner);
    CHECK(j.at("attempts")[0].contains("doppler_bins"));
    CHECK(j.at("attempts")[0].contains("score"));

    const std::string csv = attack_result_to_csv(res);
    CHECK(csv.rfind("parameter,score\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == res.attempts.size() + 1);
}
