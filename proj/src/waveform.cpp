#include "wavesec/waveform.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wavesec {

namespace {

// v[k] *= exp(sign * 2*pi*j * c * k^2)
void chirp_multiply_inplace(ComplexVector& v, double c, int sign) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] *= unit_phase(static_cast<double>(sign) * c * static_cast<double>(k) * static_cast<double>(k));
    }
}

// Unitary (I)DFT of length l applied to each of the k_blocks subsequences
// v[q], v[q+K], ..., v[q+(l-1)K] - the action of (F_l or F_l^H) kron I_K.
void block_transform_strided(ComplexVector& v, std::size_t k_blocks, std::size_t l, bool inverse) {
    ComplexVector scratch(l);
    for (std::size_t q = 0; q < k_blocks; ++q) {
        for (std::size_t j = 0; j < l; ++j) scratch[j] = v[j * k_blocks + q];
        if (inverse) {
            idft_inplace(scratch);
        } else {
            dft_inplace(scratch);
        }
        for (std::size_t j = 0; j < l; ++j) v[j * k_blocks + q] = scratch[j];
    }
}

} // namespace

bool AfdmParams::full_diversity(double theta_max) const {
    const double n = static_cast<double>(n_subcarriers);
    return c1 >= theta_max / n && c2 < 1.0 / n;
}

void AfdmParams::validate() const {
    if (n_subcarriers < 2) throw std::invalid_argument("AfdmParams: n_subcarriers must be >= 2");
    if (!std::isfinite(c1) || !std::isfinite(c2))
        throw std::invalid_argument("AfdmParams: chirp parameters must be finite");
}

void OtfsParams::validate() const {
    if (n_subcarriers < 1 || doppler_bins < 1 || delay_bins < 1)
        throw std::invalid_argument("OtfsParams: all dimensions must be >= 1");
    if (doppler_bins * delay_bins != n_subcarriers)
        throw std::invalid_argument("OtfsParams: doppler_bins * delay_bins must equal n_subcarriers");
}

Precoder Precoder::ofdm(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Precoder: n must be positive");
    Precoder p;
    p.waveform_ = Waveform::kOfdm;
    p.n_ = n;
    return p;
}

Precoder Precoder::afdm(const AfdmParams& params) {
    params.validate();
    Precoder p;
    p.waveform_ = Waveform::kAfdm;
    p.n_ = params.n_subcarriers;
    p.afdm_ = params;
    return p;
}

Precoder Precoder::otfs(const OtfsParams& params) {
    params.validate();
    Precoder p;
    p.waveform_ = Waveform::kOtfs;
    p.n_ = params.n_subcarriers;
    p.otfs_ = params;
    return p;
}

Precoder::Precoder(const Precoder& other)
    : waveform_(other.waveform_), n_(other.n_), afdm_(other.afdm_), otfs_(other.otfs_) {}

ComplexVector Precoder::apply(const ComplexVector& v) const {
    if (v.size() != n_) throw std::invalid_argument("Precoder::apply: length mismatch");
    ComplexVector w = v;
    switch (waveform_) {
        case Waveform::kOfdm:
            break;
        case Waveform::kAfdm:
            // F_N Lambda_{c1} F_N^H Lambda_{c2} v
            chirp_multiply_inplace(w, afdm_.c2, +1);
            idft_inplace(w);
            chirp_multiply_inplace(w, afdm_.c1, +1);
            dft_inplace(w);
            break;
        case Waveform::kOtfs:
            // F_N (F_L^H kron I_K) v
            block_transform_strided(w, otfs_.doppler_bins, otfs_.delay_bins, true);
            dft_inplace(w);
            break;
    }
    return w;
}

ComplexVector Precoder::apply_inverse(const ComplexVector& v) const {
    if (v.size() != n_) throw std::invalid_argument("Precoder::apply_inverse: length mismatch");
    ComplexVector w = v;
    switch (waveform_) {
        case Waveform::kOfdm:
            break;
        case Waveform::kAfdm:
            // Lambda_{c2}^* F_N Lambda_{c1}^* F_N^H v
            idft_inplace(w);
            chirp_multiply_inplace(w, afdm_.c1, -1);
            dft_inplace(w);
            chirp_multiply_inplace(w, afdm_.c2, -1);
            break;
        case Waveform::kOtfs:
            // (F_L kron I_K) F_N^H v
            idft_inplace(w);
            block_transform_strided(w, otfs_.doppler_bins, otfs_.delay_bins, false);
            break;
    }
    return w;
}

const ComplexMatrix& Precoder::matrix() const {
    std::lock_guard<std::mutex> lock(dense_mutex_);
    if (!dense_) {
        ComplexMatrix q;
        switch (waveform_) {
            case Waveform::kOfdm:
                q = ComplexMatrix::identity(n_);
                break;
            case Waveform::kAfdm:
                q = (dft_matrix(n_) * chirp_diag(afdm_.c1, n_)) *
                    (idft_matrix(n_) * chirp_diag(afdm_.c2, n_));
                break;
            case Waveform::kOtfs:
                q = dft_matrix(n_) *
                    kron(idft_matrix(otfs_.delay_bins), ComplexMatrix::identity(otfs_.doppler_bins));
                break;
        }
        dense_ = std::make_unique<const ComplexMatrix>(std::move(q));
    }
    return *dense_;
}

Precoder afdm_precoder(const AfdmParams& params) { return Precoder::afdm(params); }
Precoder otfs_precoder(const OtfsParams& params) { return Precoder::otfs(params); }

ComplexVector modulate(const ComplexVector& d, const Precoder& p) {
    if (d.size() != p.size()) throw std::invalid_argument("modulate: length mismatch");
    return idft(p.apply(d));
}

ComplexVector demodulate(const ComplexVector& x_hat, const Precoder& p) {
    if (x_hat.size() != p.size()) throw std::invalid_argument("demodulate: length mismatch");
    return p.apply_inverse(dft(x_hat));
}

ComplexVector afdm_fast_demod(const ComplexVector& x_hat, double c1p, double c2p) {
    if (x_hat.size() < 2) throw std::invalid_argument("afdm_fast_demod: need at least 2 samples");
    ComplexVector w = x_hat;
    chirp_multiply_inplace(w, c1p, -1); // dechirp in time
    dft_inplace(w);
    chirp_multiply_inplace(w, c2p, -1); // dechirp in frequency
    return w;
}

Complex compute_s1(double delta1, std::size_t m, std::size_t k, std::size_t n) {
    if (n == 0) throw std::invalid_argument("compute_s1: n must be positive");
    if (m >= n || k >= n) throw std::invalid_argument("compute_s1: indices must be < n");
    const std::int64_t diff = static_cast<std::int64_t>(m) - static_cast<std::int64_t>(k);
    const std::int64_t nn = static_cast<std::int64_t>(n);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t lin = ((diff * static_cast<std::int64_t>(i)) % nn + nn) % nn;
        const double turns = delta1 * static_cast<double>(i) * static_cast<double>(i) +
                             static_cast<double>(lin) / static_cast<double>(n);
        acc += unit_phase(turns);
    }
    return acc;
}

bool PrecoderCache::Key::operator<(const Key& o) const {
    if (tag != o.tag) return tag < o.tag;
    if (n != o.n) return n < o.n;
    if (a != o.a) return a < o.a;
    return b < o.b;
}

std::shared_ptr<const Precoder> PrecoderCache::lookup(const Key& key, const std::function<Precoder()>& make) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    auto p = std::make_shared<const Precoder>(make());
    entries_.emplace(key, p);
    return p;
}

namespace {
std::int64_t round_param(double x) { return static_cast<std::int64_t>(std::llround(x * 1e12)); }
} // namespace

std::shared_ptr<const Precoder> PrecoderCache::get_ofdm(std::size_t n) {
    return lookup({0, n, 0, 0}, [n] { return Precoder::ofdm(n); });
}

std::shared_ptr<const Precoder> PrecoderCache::get_afdm(std::size_t n, double c1, double c2) {
    return lookup({1, n, round_param(c1), round_param(c2)},
                  [=] { return Precoder::afdm({n, c1, c2}); });
}

std::shared_ptr<const Precoder> PrecoderCache::get_otfs(std::size_t n, std::size_t doppler_bins) {
    return lookup({2, n, static_cast<std::int64_t>(doppler_bins), 0}, [=] {
        return Precoder::otfs({n, doppler_bins, doppler_bins == 0 ? 0 : n / doppler_bins});
    });
}

std::size_t PrecoderCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

} // namespace wavesec
