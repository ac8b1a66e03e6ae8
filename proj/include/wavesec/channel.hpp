// channel.hpp - doubly dispersive channel model and linear equalizers
//
// The received frame is y = H x + w with
//
//   H = sum_l h_l * Delta_{theta_l} * Pi^l
//
// where Pi is the forward cyclic shift, Delta_theta = diag(exp(2*pi*j*
// theta*k/N)) the per-path Doppler ramp, and w ~ CN(0, sigma^2) i.i.d.
// The cyclic model is applied to the N-sample block directly; no CP/CPP.

#pragma once

#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "wavesec/core_math.hpp"
#include "wavesec/rng.hpp"

namespace wavesec {

struct ChannelTap {
    Complex gain;         // h_l, linear amplitude
    std::size_t delay;    // l, samples
    double doppler;       // theta_l, cycles per frame, in [0, theta_max]
};

struct ChannelSpec {
    std::vector<ChannelTap> taps;
    double theta_max = 0.0;
    std::size_t n = 0; // frame length N

    std::size_t channel_length() const; // L_c = 1 + max delay
    void validate() const;              // throws std::invalid_argument
};

struct NoiseSpec {
    double variance = 0.0; // sigma^2 per complex sample
};

// Ill-conditioned or singular H in zf_equalizer.
struct SingularChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense H = sum_l h_l Delta_{theta_l} Pi^l.
ComplexMatrix build_channel_matrix(const ChannelSpec& spec);

// Rayleigh taps at delays 0..n_taps-1: gains i.i.d. CN(0,1) normalized to
// unit total power, Dopplers i.i.d. uniform on [0, theta_max]. Draw order:
// all gains first, then all Dopplers.
ChannelSpec random_channel(std::size_t n_taps, double theta_max, std::size_t n, Rng& rng);

// y = x + w with per-sample variance sigma^2 = signal_power * 10^(-snr_db/10).
// snr_db = +inf returns x unchanged (no draws).
ComplexVector apply_awgn(const ComplexVector& x, double snr_db, double signal_power, Rng& rng);

// G = H^-1; throws SingularChannelError when cond(H) > 1e12 or H singular.
ComplexMatrix zf_equalizer(const ComplexMatrix& h);

// G = H^H (H H^H + sigma^2 I)^-1, unit-power symbols assumed.
ComplexMatrix mmse_equalizer(const ComplexMatrix& h, double noise_variance);

// JSON form: {"n", "theta_max", "gains" as [re,im] pairs, "delays", "dopplers"}
void to_json(nlohmann::json& j, const ChannelSpec& spec);
void from_json(const nlohmann::json& j, ChannelSpec& spec);

} // namespace wavesec
