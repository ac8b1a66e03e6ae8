#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wavesec/channel.hpp"
#include "wavesec/qpsk.hpp"
#include "wavesec/waveform.hpp"

using namespace wavesec;

TEST_CASE("identity and pure-shift channels") {
    ChannelSpec id{{{Complex(1, 0), 0, 0.0}}, 0.0, 4};
    CHECK(max_abs_diff(build_channel_matrix(id), ComplexMatrix::identity(4)) == 0.0);

    ChannelSpec shift{{{Complex(1, 0), 1, 0.0}}, 0.0, 3};
    const auto h = build_channel_matrix(shift);
    const ComplexVector v = {Complex(1, 0), Complex(2, 0), Complex(3, 0)};
    const auto out = h * v;
    CHECK(std::abs(out[0] - Complex(3, 0)) < 1e-15);
    CHECK(std::abs(out[1] - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(out[2] - Complex(2, 0)) < 1e-15);
}

TEST_CASE("two-tap channel matches the hand expansion") {
    const double g = 1.0 / std::sqrt(2.0);
    ChannelSpec spec{{{Complex(g, 0), 0, 0.0}, {Complex(g, 0), 1, 0.3}}, 0.3, 4};
    const auto h = build_channel_matrix(spec);

    const auto expect = doppler_diag(0.0, 4) * cyclic_shift_matrix(0, 4) +
                        doppler_diag(0.3, 4) * cyclic_shift_matrix(1, 4);
    ComplexMatrix scaled(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) scaled(r, c) = g * expect(r, c);
    CHECK(max_abs_diff(h, scaled) < 1e-15);
    // entry (0,3): the delayed tap at k=0 carries phase exp(0) = 1
    CHECK(std::abs(h(0, 3) - Complex(g, 0)) < 1e-15);
}

TEST_CASE("channel matrix is linear in disjoint tap sets") {
    Rng rng(8);
    ChannelSpec a{{{rng.complex_gaussian(1.0), 0, 0.1}, {rng.complex_gaussian(1.0), 2, 0.25}}, 0.3, 8};
    ChannelSpec b{{{rng.complex_gaussian(1.0), 1, 0.07}, {rng.complex_gaussian(1.0), 5, 0.3}}, 0.3, 8};
    ChannelSpec both{{}, 0.3, 8};
    both.taps = a.taps;
    both.taps.insert(both.taps.end(), b.taps.begin(), b.taps.end());
    CHECK(max_abs_diff(build_channel_matrix(both),
                       build_channel_matrix(a) + build_channel_matrix(b)) < 1e-15);
}

TEST_CASE("zero-Doppler channels are circulant") {
    Rng rng(4);
    for (std::size_t n : {8u, 32u, 64u}) {
        const auto spec = random_channel(4, 0.0, n, rng);
        const auto h = build_channel_matrix(spec);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                CHECK(std::abs(h(r, c) - h((r + 1) % n, (c + 1) % n)) < 1e-15);
            }
        }
    }
}

TEST_CASE("random_channel normalization and determinism") {
    Rng rng(42);
    const auto spec = random_channel(4, 0.3, 128, rng);
    double power = 0.0;
    for (const auto& t : spec.taps) power += std::norm(t.gain);
    CHECK(std::abs(power - 1.0) < 1e-9);
    CHECK(spec.channel_length() == 4);
    for (const auto& t : spec.taps) {
        CHECK(t.doppler >= 0.0);
        CHECK(t.doppler <= 0.3);
    }

    Rng r1(42), r2(42);
    const auto s1 = random_channel(4, 0.3, 128, r1);
    const auto s2 = random_channel(4, 0.3, 128, r2);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(s1.taps[i].gain == s2.taps[i].gain);
        CHECK(s1.taps[i].doppler == s2.taps[i].doppler);
    }

    // single zero-Doppler tap: matrix is a pure phase times the identity
    Rng r3(7);
    const auto single = random_channel(1, 0.0, 8, r3);
    CHECK(std::abs(std::abs(single.taps[0].gain) - 1.0) < 1e-12);
    const auto h = build_channel_matrix(single);
    for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(h(k, k) - single.taps[0].gain) < 1e-15);
}

TEST_CASE("apply_awgn") {
    Rng rng(13);
    ComplexVector x(64, Complex(1.0, -0.5));
    const auto clean = apply_awgn(x, std::numeric_limits<double>::infinity(), 1.0, rng);
    CHECK(max_abs_diff(clean, x) == 0.0);

    // empirical variance at 0 dB over 1e5 samples
    ComplexVector zeros(100000, Complex(0, 0));
    const auto noisy = apply_awgn(zeros, 0.0, 1.0, rng);
    double var = 0.0;
    for (const auto& z : noisy) var += std::norm(z);
    var /= static_cast<double>(noisy.size());
    CHECK(var > 0.99);
    CHECK(var < 1.01);

    Rng ra(100), rb(100);
    CHECK(max_abs_diff(apply_awgn(x, 10.0, 1.0, ra), apply_awgn(x, 10.0, 1.0, rb)) == 0.0);

    CHECK_THROWS_AS(apply_awgn(x, 10.0, 0.0, rng), std::invalid_argument);
}

TEST_CASE("zf_equalizer") {
    const auto id = ComplexMatrix::identity(6);
    CHECK(max_abs_diff(zf_equalizer(id), id) < 1e-12);

    ComplexMatrix twice(4, 4);
    for (std::size_t i = 0; i < 4; ++i) twice(i, i) = 2.0;
    const auto half = zf_equalizer(twice);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(half(i, i) - Complex(0.5, 0)) < 1e-12);

    Rng rng(21);
    const auto spec = random_channel(4, 0.3, 32, rng);
    const auto h = build_channel_matrix(spec);
    const auto g = zf_equalizer(h);
    CHECK(max_abs_diff(g * h, ComplexMatrix::identity(32)) < 1e-8);

    ComplexMatrix singular(3, 3); // rank 1
    for (std::size_t c = 0; c < 3; ++c) singular(0, c) = singular(1, c) = singular(2, c) = 1.0;
    CHECK_THROWS_AS(zf_equalizer(singular), SingularChannelError);
}

TEST_CASE("mmse_equalizer") {
    const auto id = ComplexMatrix::identity(5);
    const auto g_unit = mmse_equalizer(id, 1.0);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(g_unit(i, i) - Complex(0.5, 0)) < 1e-12);
    CHECK(max_abs_diff(mmse_equalizer(id, 0.0), id) < 1e-12);

    Rng rng(31);
    const auto h = build_channel_matrix(random_channel(4, 0.3, 16, rng));
    CHECK(max_abs_diff(mmse_equalizer(h, 0.0), zf_equalizer(h)) < 1e-8);

    // monotone convergence to ZF as the noise vanishes
    const auto gz = zf_equalizer(h);
    double prev = 1e300;
    for (double s2 : {1e-2, 1e-4, 1e-6}) {
        const double gap = max_abs_diff(mmse_equalizer(h, s2), gz);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("equalized matched demodulation is error free without noise") {
    Rng rng(55);
    for (int wf = 0; wf < 2; ++wf) {
        const std::size_t n = 64;
        const Precoder p = wf == 0 ? afdm_precoder({n, 0.2, 1e-3}) : otfs_precoder({n, 16, 4});
        const auto bits = rng.bits(2 * n);
        const auto d = qpsk_map(bits);
        const auto x = modulate(d, p);
        const auto spec = random_channel(4, 0.3, n, rng);
        const auto h = build_channel_matrix(spec);
        const auto g = zf_equalizer(h);
        const auto d_hat = demodulate(g * (h * x), p);
        CHECK(count_bit_errors(bits, qpsk_demap(d_hat)) == 0);
        CHECK(max_abs_diff(d_hat, d) < 1e-7);
    }
}

TEST_CASE("channel spec json round trip") {
    Rng rng(77);
    const auto spec = random_channel(4, 0.3, 128, rng);
    nlohmann::json j;
    to_json(j, spec);
    ChannelSpec back;
    from_json(j, back);
    CHECK(back.n == spec.n);
    CHECK(back.theta_max == spec.theta_max);
    REQUIRE(back.taps.size() == spec.taps.size());
    for (std::size_t i = 0; i < spec.taps.size(); ++i) {
        CHECK(back.taps[i].gain == spec.taps[i].gain);
        CHECK(back.taps[i].delay == spec.taps[i].delay);
        CHECK(back.taps[i].doppler == spec.taps[i].doppler);
    }
}

TEST_CASE("channel spec validation") {
    ChannelSpec empty{{}, 0.3, 8};
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
    ChannelSpec late{{{Complex(1, 0), 9, 0.0}}, 0.3, 8};
    CHECK_THROWS_AS(late.validate(), std::invalid_argument);
    ChannelSpec hot{{{Complex(1, 0), 0, 0.5}}, 0.3, 8};
    CHECK_THROWS_AS(hot.validate(), std::invalid_argument);
    ChannelSpec dead{{{Complex(0, 0), 0, 0.0}}, 0.3, 8};
    CHECK_THROWS_AS(dead.validate(), std::invalid_argument);
}
