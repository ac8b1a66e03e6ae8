// waveform.hpp - AFDM and OTFS as unitary precodings of OFDM
//
// Both schemes transmit x = F_N^H Q d with
//
//   AFDM:  Q = F_N Lambda_{c1} F_N^H Lambda_{c2},
//          Lambda_c = diag(exp(2*pi*j*c*k^2))
//   OTFS:  Q = F_N (F_L^H kron I_K),  N = K*L
//   OFDM:  Q = I_N
//
// and recover d_hat = Q^H F_N x_hat. The Precoder exposes both the dense
// matrix (oracle, built from the factor matrices on first use) and
// matrix-free apply paths:
//
//   AFDM modulate   : chirp(c2) -> IDFT -> chirp(c1)
//   AFDM demodulate : chirp(-c1) -> DFT -> chirp(-c2)   (the DAFT)
//   OTFS modulate   : length-L IDFTs on the K strided subsequences
//   OTFS demodulate : DFT_N, then length-L DFTs on the strided subsequences
//
// afdm_fast_demod runs the three DAFT stages for an arbitrary candidate
// (c1', c2') without building a Precoder; compute_s1 evaluates the
// quadratic sum S1 that governs inter-symbol leakage under a c1 mismatch.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "wavesec/core_math.hpp"

namespace wavesec {

enum class Waveform { kOfdm, kAfdm, kOtfs };

struct AfdmParams {
    std::size_t n_subcarriers = 0;
    double c1 = 0.0; // chirp rate, cycles per sample^2
    double c2 = 0.0; // chirp rate, cycles per symbol-index^2

    // full-diversity conditions given a maximum normalized Doppler:
    // c1 >= theta_max/N and c2 < 1/N (strict proxy for c2 << 1/N)
    bool full_diversity(double theta_max) const;
    void validate() const; // throws std::invalid_argument
};

struct OtfsParams {
    std::size_t n_subcarriers = 0;
    std::size_t doppler_bins = 0; // K
    std::size_t delay_bins = 0;   // L, with K*L = N

    void validate() const; // throws std::invalid_argument
};

class Precoder {
public:
    static Precoder ofdm(std::size_t n);
    static Precoder afdm(const AfdmParams& params);
    static Precoder otfs(const OtfsParams& params);

    Precoder(const Precoder& other);
    Precoder& operator=(const Precoder&) = delete;

    Waveform waveform() const { return waveform_; }
    std::size_t size() const { return n_; }
    const AfdmParams* afdm_params() const { return waveform_ == Waveform::kAfdm ? &afdm_ : nullptr; }
    const OtfsParams* otfs_params() const { return waveform_ == Waveform::kOtfs ? &otfs_ : nullptr; }

    // matrix-free Q v and Q^H v
    ComplexVector apply(const ComplexVector& v) const;
    ComplexVector apply_inverse(const ComplexVector& v) const;

    // dense Q composed from the factor matrices; built once on first use
    const ComplexMatrix& matrix() const;

private:
    Precoder() = default;

    Waveform waveform_ = Waveform::kOfdm;
    std::size_t n_ = 0;
    AfdmParams afdm_{};
    OtfsParams otfs_{};

    mutable std::mutex dense_mutex_;
    mutable std::unique_ptr<const ComplexMatrix> dense_;
};

Precoder afdm_precoder(const AfdmParams& params);
Precoder otfs_precoder(const OtfsParams& params);

// x = F_N^H Q d; unitary, so ||x|| = ||d||
ComplexVector modulate(const ComplexVector& d, const Precoder& p);

// d_hat = Q^H F_N x_hat
ComplexVector demodulate(const ComplexVector& x_hat, const Precoder& p);

// DAFT with candidate parameters: chirp(-c1p) -> DFT -> chirp(-c2p).
// Matches demodulate(x_hat, afdm_precoder({N, c1p, c2p})).
ComplexVector afdm_fast_demod(const ComplexVector& x_hat, double c1p, double c2p);

// S1 = sum_{i=0}^{n-1} exp(2*pi*j*(delta1*i^2 + (m-k)*i/n)), direct summation.
// Equals n*delta_{m,k} for integer delta1 (sum of the n-th roots of unity).
Complex compute_s1(double delta1, std::size_t m, std::size_t k, std::size_t n);

// Shared cache for attack loops that revisit candidate parameters.
// Keyed on (waveform, N, params rounded to 1e-12); thread-safe.
class PrecoderCache {
public:
    std::shared_ptr<const Precoder> get_ofdm(std::size_t n);
    std::shared_ptr<const Precoder> get_afdm(std::size_t n, double c1, double c2);
    std::shared_ptr<const Precoder> get_otfs(std::size_t n, std::size_t doppler_bins);
    std::size_t size() const;

private:
    struct Key {
        int tag;
        std::uint64_t n;
        std::int64_t a;
        std::int64_t b;
        bool operator<(const Key& o) const;
    };
    std::shared_ptr<const Precoder> lookup(const Key& key, const std::function<Precoder()>& make);

    mutable std::mutex mutex_;
    std::map<Key, std::shared_ptr<const Precoder>> entries_;
};

} // namespace wavesec
