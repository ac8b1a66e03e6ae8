#include "wavesec/channel.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace wavesec {

namespace {

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EigenMap = Eigen::Map<const EigenMatrix>;

ComplexMatrix from_eigen(const EigenMatrix& e) {
    ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c)
            m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e(r, c);
    return m;
}

double norm1(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) s += std::abs(m(r, c));
        best = std::max(best, s);
    }
    return best;
}

} // namespace

std::size_t ChannelSpec::channel_length() const {
    std::size_t mx = 0;
    for (const auto& t : taps) mx = std::max(mx, t.delay);
    return mx + 1;
}

void ChannelSpec::validate() const {
    if (n == 0) throw std::invalid_argument("ChannelSpec: frame length must be positive");
    if (taps.empty()) throw std::invalid_argument("ChannelSpec: at least one tap required");
    bool any_power = false;
    for (const auto& t : taps) {
        if (t.delay >= n) throw std::invalid_argument("ChannelSpec: tap delay must be < n");
        if (t.doppler < 0.0 || t.doppler > theta_max + 1e-12)
            throw std::invalid_argument("ChannelSpec: tap Doppler outside [0, theta_max]");
        if (std::norm(t.gain) > 0.0) any_power = true;
    }
    if (!any_power) throw std::invalid_argument("ChannelSpec: all tap gains are zero");
}

ComplexMatrix build_channel_matrix(const ChannelSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n;
    ComplexMatrix h(n, n);
    for (const auto& tap : spec.taps) {
        const std::size_t l = tap.delay % n;
        for (std::size_t k = 0; k < n; ++k) {
            // (Delta_theta Pi^l)[k, (k-l) mod n] = exp(2*pi*j*theta*k/n)
            h(k, (k + n - l) % n) +=
                tap.gain * unit_phase(tap.doppler * static_cast<double>(k) / static_cast<double>(n));
        }
    }
    return h;
}

ChannelSpec random_channel(std::size_t n_taps, double theta_max, std::size_t n, Rng& rng) {
    if (n_taps == 0 || n_taps > n) throw std::invalid_argument("random_channel: need 1 <= n_taps <= n");
    if (theta_max < 0.0) throw std::invalid_argument("random_channel: theta_max must be >= 0");
    ChannelSpec spec;
    spec.theta_max = theta_max;
    spec.n = n;
    spec.taps.resize(n_taps);
    double power = 0.0;
    for (std::size_t l = 0; l < n_taps; ++l) {
        spec.taps[l].delay = l;
        spec.taps[l].gain = rng.complex_gaussian(1.0);
        power += std::norm(spec.taps[l].gain);
    }
    const double scale = 1.0 / std::sqrt(power);
    for (auto& t : spec.taps) t.gain *= scale;
    for (auto& t : spec.taps) t.doppler = theta_max > 0.0 ? rng.uniform(0.0, theta_max) : 0.0;
    return spec;
}

ComplexVector apply_awgn(const ComplexVector& x, double snr_db, double signal_power, Rng& rng) {
    if (!(signal_power > 0.0)) throw std::invalid_argument("apply_awgn: signal_power must be > 0");
    if (std::isinf(snr_db) && snr_db > 0.0) return x;
    const double variance = signal_power * std::pow(10.0, -snr_db / 10.0);
    ComplexVector y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + rng.complex_gaussian(variance);
    return y;
}

ComplexMatrix zf_equalizer(const ComplexMatrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0)
        throw std::invalid_argument("zf_equalizer: H must be square");
    EigenMap hm(h.data().data(), static_cast<Eigen::Index>(h.rows()), static_cast<Eigen::Index>(h.cols()));
    EigenMatrix inv = hm.partialPivLu().inverse();
    ComplexMatrix g = from_eigen(inv);
    if (!all_finite(g)) throw SingularChannelError("zf_equalizer: singular channel matrix");
    const double cond1 = norm1(h) * norm1(g);
    if (!std::isfinite(cond1) || cond1 > 1e12)
        throw SingularChannelError("zf_equalizer: channel condition number exceeds 1e12");
    return g;
}

ComplexMatrix mmse_equalizer(const ComplexMatrix& h, double noise_variance) {
    if (h.rows() != h.cols() || h.rows() == 0)
        throw std::invalid_argument("mmse_equalizer: H must be square");
    if (noise_variance < 0.0) throw std::invalid_argument("mmse_equalizer: noise variance must be >= 0");
    EigenMap hm(h.data().data(), static_cast<Eigen::Index>(h.rows()), static_cast<Eigen::Index>(h.cols()));
    EigenMatrix a = hm * hm.adjoint();
    a.diagonal().array() += noise_variance;
    // G^H = A^-1 H since A is Hermitian
    Eigen::LLT<EigenMatrix> llt(a);
    EigenMatrix gh;
    if (llt.info() == Eigen::Success) {
        gh = llt.solve(hm);
    } else {
        gh = a.partialPivLu().solve(hm);
    }
    EigenMatrix g = gh.adjoint();
    return from_eigen(g);
}

void to_json(nlohmann::json& j, const ChannelSpec& spec) {
    nlohmann::json gains = nlohmann::json::array();
    nlohmann::json delays = nlohmann::json::array();
    nlohmann::json dopplers = nlohmann::json::array();
    for (const auto& t : spec.taps) {
        gains.push_back({t.gain.real(), t.gain.imag()});
        delays.push_back(t.delay);
        dopplers.push_back(t.doppler);
    }
    j = nlohmann::json{{"n", spec.n},
                       {"theta_max", spec.theta_max},
                       {"gains", gains},
                       {"delays", delays},
                       {"dopplers", dopplers}};
}

void from_json(const nlohmann::json& j, ChannelSpec& spec) {
    spec.n = j.at("n").get<std::size_t>();
    spec.theta_max = j.at("theta_max").get<double>();
    const auto& gains = j.at("gains");
    const auto& delays = j.at("delays");
    const auto& dopplers = j.at("dopplers");
    if (gains.size() != delays.size() || gains.size() != dopplers.size())
        throw std::invalid_argument("ChannelSpec: gains/delays/dopplers lengths differ");
    spec.taps.clear();
    for (std::size_t i = 0; i < gains.size(); ++i) {
        ChannelTap t;
        t.gain = Complex(gains[i].at(0).get<double>(), gains[i].at(1).get<double>());
        t.delay = delays[i].get<std::size_t>();
        t.doppler = dopplers[i].get<double>();
        spec.taps.push_back(t);
    }
    spec.validate();
}

} // namespace wavesec
