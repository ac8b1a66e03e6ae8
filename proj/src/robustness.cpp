#include "wavesec/robustness.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "wavesec/eavesdropper.hpp"

namespace wavesec {

namespace {
constexpr double kEulerMascheroni = 0.5772156649015329;
}

OtfsRobustness otfs_ma(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("otfs_ma: n must be positive");
    const auto divs = divisors(n);
    return {static_cast<std::uint64_t>(divs.size()),
            2.0 * std::sqrt(static_cast<double>(n)),
            std::log(static_cast<double>(n)) + 2.0 * kEulerMascheroni - 1.0};
}

double afdm_ma(std::size_t n, double theta_max, double d_upper, double epsilon) {
    if (n < 2) throw std::invalid_argument("afdm_ma: n must be >= 2");
    if (!(epsilon > 0.0) || epsilon > 1.0) throw std::invalid_argument("afdm_ma: epsilon must be in (0, 1]");
    const double nd = static_cast<double>(n);
    if (!(d_upper > theta_max / nd)) throw std::invalid_argument("afdm_ma: empty c1 search range");
    const double nm1 = nd - 1.0;
    return std::numbers::pi * (d_upper * nd - theta_max) * nm1 * nm1 / (epsilon * nd);
}

double delta1_bound(std::size_t n, double epsilon) {
    if (n < 2) throw std::invalid_argument("delta1_bound: n must be >= 2");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("delta1_bound: epsilon must be in (0, 1]");
    const double nm1 = static_cast<double>(n - 1);
    return epsilon / (2.0 * std::numbers::pi * nm1 * nm1);
}

bool consistency_check(std::size_t n, double theta_max, double d_upper, double epsilon) {
    const double ma = afdm_ma(n, theta_max, d_upper, epsilon);
    const auto set = afdm_candidates(theta_max, d_upper, n, epsilon);
    return std::abs(ma - static_cast<double>(set.candidates.size())) <= 1.0;
}

RobustnessReport analyze_otfs(std::size_t n) {
    const auto r = otfs_ma(n);
    RobustnessReport rep;
    rep.waveform = Waveform::kOtfs;
    rep.n = n;
    rep.ma_exact = static_cast<double>(r.exact);
    rep.ma_bound = r.bound;
    rep.dirichlet_avg = r.average;
    return rep;
}

RobustnessReport analyze_afdm(std::size_t n, double theta_max, double d_upper, double epsilon) {
    RobustnessReport rep;
    rep.waveform = Waveform::kAfdm;
    rep.n = n;
    rep.ma_exact = afdm_ma(n, theta_max, d_upper, epsilon);
    rep.delta1 = delta1_bound(n, epsilon);
    rep.theta_max = theta_max;
    rep.d_upper = d_upper;
    rep.epsilon = epsilon;
    return rep;
}

std::string format_report(const RobustnessReport& r) {
    char buf[512];
    if (r.waveform == Waveform::kOtfs) {
        std::snprintf(buf, sizeof(buf),
                      "waveform           otfs\n"
                      "n_subcarriers      %zu\n"
                      "ma_exact           %.0f\n"
                      "ma_bound (2*sqrtN) %.6g\n"
                      "dirichlet_avg      %.6g\n",
                      r.n, r.ma_exact, r.ma_bound, r.dirichlet_avg);
    } else {
        std::snprintf(buf, sizeof(buf),
                      "waveform           afdm\n"
                      "n_subcarriers      %zu\n"
                      "ma_exact           %.6g\n"
                      "delta1_bound       %.6g\n"
                      "theta_max          %.6g\n"
                      "d_upper            %.6g\n"
                      "epsilon            %.6g\n",
                      r.n, r.ma_exact, r.delta1, r.theta_max, r.d_upper, r.epsilon);
    }
    return buf;
}

nlohmann::json report_to_json(const RobustnessReport& r) {
    if (r.waveform == Waveform::kOtfs) {
        return nlohmann::json{{"waveform", "otfs"},
                              {"n_subcarriers", r.n},
                              {"ma_exact", r.ma_exact},
                              {"ma_bound", r.ma_bound},
                              {"dirichlet_avg", r.dirichlet_avg}};
    }
    return nlohmann::json{{"waveform", "afdm"},     {"n_subcarriers", r.n},
                          {"ma_exact", r.ma_exact}, {"delta1_bound", r.delta1},
                          {"theta_max", r.theta_max}, {"d_upper", r.d_upper},
                          {"epsilon", r.epsilon}};
}

} // namespace wavesec
