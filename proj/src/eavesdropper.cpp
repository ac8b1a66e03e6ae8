#include "wavesec/eavesdropper.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wavesec/qpsk.hpp"

namespace wavesec {

CandidateSet otfs_candidates(std::size_t n) {
    if (n < 2) throw std::invalid_argument("otfs_candidates: n must be >= 2");
    CandidateSet set;
    set.waveform = Waveform::kOtfs;
    set.n = n;
    for (std::uint64_t k : divisors(n)) {
        set.candidates.push_back(OtfsCandidate{static_cast<std::size_t>(k), n / static_cast<std::size_t>(k)});
    }
    return set;
}

CandidateSet afdm_candidates(double theta_max, double d_upper, std::size_t n, double epsilon,
                             double known_c2) {
    if (n < 2) throw std::invalid_argument("afdm_candidates: n must be >= 2");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("afdm_candidates: epsilon must be in (0, 1]");
    if (theta_max < 0.0) throw std::invalid_argument("afdm_candidates: theta_max must be >= 0");
    const double lo = theta_max / static_cast<double>(n);
    if (!(d_upper > lo)) throw std::invalid_argument("afdm_candidates: empty c1 search range");
    const double nm1 = static_cast<double>(n - 1);
    const double step = epsilon / (std::numbers::pi * nm1 * nm1);
    const auto count = static_cast<std::size_t>(std::floor((d_upper - lo) / step)) + 1;

    CandidateSet set;
    set.waveform = Waveform::kAfdm;
    set.n = n;
    set.theta_max = theta_max;
    set.d_upper = d_upper;
    set.epsilon = epsilon;
    set.step = step;
    set.candidates.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        set.candidates.push_back(AfdmCandidate{lo + static_cast<double>(i) * step, known_c2});
    }
    return set;
}

ComplexVector attempt_demod(const ComplexVector& y_equalized, const Candidate& candidate,
                            Waveform waveform, PrecoderCache* cache) {
    const std::size_t n = y_equalized.size();
    if (waveform == Waveform::kAfdm) {
        const auto& c = std::get<AfdmCandidate>(candidate);
        return afdm_fast_demod(y_equalized, c.c1, c.c2);
    }
    if (waveform == Waveform::kOtfs) {
        const auto& c = std::get<OtfsCandidate>(candidate);
        if (cache != nullptr) {
            return demodulate(y_equalized, *cache->get_otfs(n, c.doppler_bins));
        }
        return demodulate(y_equalized, Precoder::otfs({n, c.doppler_bins, c.delay_bins}));
    }
    throw std::invalid_argument("attempt_demod: unsupported waveform tag");
}

double score_candidate(const ComplexVector& d_hat, const ScoringMode& mode) {
    if (const auto* gt = std::get_if<GroundTruthBer>(&mode)) {
        if (gt->d_true.size() != d_hat.size())
            throw std::invalid_argument("score_candidate: length mismatch");
        const auto truth = qpsk_demap(gt->d_true);
        const auto decided = qpsk_demap(d_hat);
        return static_cast<double>(count_bit_errors(truth, decided)) / static_cast<double>(truth.size());
    }
    // blind fourth-power statistic
    Complex acc4(0.0, 0.0);
    double p4 = 0.0;
    for (const auto& z : d_hat) {
        const Complex z2 = z * z;
        acc4 += z2 * z2;
        p4 += std::norm(z2);
    }
    const double m = static_cast<double>(d_hat.size());
    if (!(p4 > 0.0)) return 1.0;
    const double score = 1.0 - std::abs(acc4 / m) / (p4 / m);
    return std::min(1.0, std::max(0.0, score));
}

AttackResult bruteforce(const ComplexVector& y_equalized, const CandidateSet& candidates,
                        const ScoringMode& scoring, std::optional<double> early_stop_threshold,
                        PrecoderCache* cache) {
    if (candidates.candidates.empty())
        throw std::invalid_argument("bruteforce: empty candidate set");
    const bool ground_truth = std::holds_alternative<GroundTruthBer>(scoring);

    AttackResult result;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cand : candidates.candidates) {
        const ComplexVector d_hat = attempt_demod(y_equalized, cand, candidates.waveform, cache);
        const double score = score_candidate(d_hat, scoring);
        Attempt a{cand, score, std::nullopt};
        if (ground_truth) a.ber_vs_truth = score;
        result.attempts.push_back(std::move(a));
        if (score < best) {
            best = score;
            result.winner = result.attempts.size() - 1;
        }
        if (early_stop_threshold && score <= *early_stop_threshold) break;
    }
    result.attempts_used = result.attempts.size();
    result.succeeded = early_stop_threshold.has_value() && best <= *early_stop_threshold;
    return result;
}

namespace {

double candidate_parameter(const Candidate& c) {
    if (const auto* o = std::get_if<OtfsCandidate>(&c)) return static_cast<double>(o->doppler_bins);
    return std::get<AfdmCandidate>(c).c1;
}

} // namespace

nlohmann::json attack_result_to_json(const AttackResult& result, Waveform waveform) {
    nlohmann::json attempts = nlohmann::json::array();
    for (const auto& a : result.attempts) {
        nlohmann::json ja;
        if (const auto* o = std::get_if<OtfsCandidate>(&a.candidate)) {
            ja["doppler_bins"] = o->doppler_bins;
            ja["delay_bins"] = o->delay_bins;
        } else {
            const auto& f = std::get<AfdmCandidate>(a.candidate);
            ja["c1"] = f.c1;
            ja["c2"] = f.c2;
        }
        ja["score"] = a.score;
        if (a.ber_vs_truth) ja["ber_vs_truth"] = *a.ber_vs_truth;
        attempts.push_back(std::move(ja));
    }
    return nlohmann::json{{"waveform", waveform == Waveform::kOtfs   ? "otfs"
                                       : waveform == Waveform::kAfdm ? "afdm"
                                                                     : "ofdm"},
                          {"attempts", std::move(attempts)},
                          {"winner", result.winner},
                          {"attempts_used", result.attempts_used},
                          {"succeeded", result.succeeded}};
}

std::string attack_result_to_csv(const AttackResult& result) {
    std::string out = "parameter,score\n";
    char line[80];
    for (const auto& a : result.attempts) {
        std::snprintf(line, sizeof(line), "%.12g,%.10g\n", candidate_parameter(a.candidate), a.score);
        out += line;
    }
    return out;
}

} // namespace wavesec
