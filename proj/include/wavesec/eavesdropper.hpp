// eavesdropper.hpp - brute-force blind demodulation
//
// The eavesdropper knows N and the waveform family but not the modulation
// parameters. It enumerates candidates and scores each demodulation
// attempt:
//
//   OTFS: one candidate (K', N/K') per divisor K' of N - sigma(N) in total.
//   AFDM: a c1' grid over [theta_max/N, D] with step 2*|Delta1| =
//         epsilon/(pi*(N-1)^2); c2 is taken as known a priori and carried
//         into every candidate pair.
//
// Scoring is either BER against the known transmitted data (the figure
// reproduction privilege) or a blind fourth-power constellation statistic
// a real eavesdropper could compute.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wavesec/waveform.hpp"

namespace wavesec {

struct OtfsCandidate {
    std::size_t doppler_bins; // K'
    std::size_t delay_bins;   // L' = N/K'
};

struct AfdmCandidate {
    double c1;
    double c2;
};

using Candidate = std::variant<OtfsCandidate, AfdmCandidate>;

struct CandidateSet {
    Waveform waveform = Waveform::kOtfs;
    std::size_t n = 0;
    std::vector<Candidate> candidates;
    // generation metadata (AFDM grid only)
    double theta_max = 0.0;
    double d_upper = 0.0;
    double epsilon = 0.0;
    double step = 0.0;
};

// All divisor pairs (K', N/K'), ascending K'. Requires n >= 2.
CandidateSet otfs_candidates(std::size_t n);

// c1' = theta_max/n + i*step for i = 0..floor((D - theta_max/n)/step),
// step = epsilon/(pi*(n-1)^2). Rejects an empty range. known_c2 is copied
// into every candidate (the eavesdropper knows the pre-chirp parameter).
CandidateSet afdm_candidates(double theta_max, double d_upper, std::size_t n, double epsilon,
                             double known_c2 = 0.0);

// Demodulate one attempt: OTFS via the candidate precoder (cached when a
// cache is supplied), AFDM via the fast DAFT path.
ComplexVector attempt_demod(const ComplexVector& y_equalized, const Candidate& candidate,
                            Waveform waveform, PrecoderCache* cache = nullptr);

struct GroundTruthBer {
    ComplexVector d_true;
};
struct BlindFourthPower {};
using ScoringMode = std::variant<GroundTruthBer, BlindFourthPower>;

// GroundTruthBer: hard-decision BER against the true data.
// BlindFourthPower: 1 - |mean(d^4)| / mean(|d|^4); near 0 for a clean QPSK
// cloud, near 1 for uniform phase.
double score_candidate(const ComplexVector& d_hat, const ScoringMode& mode);

struct Attempt {
    Candidate candidate;
    double score;
    std::optional<double> ber_vs_truth;
};

struct AttackResult {
    std::vector<Attempt> attempts;
    std::size_t winner = 0;        // index into attempts, argmin score, earliest tie
    std::size_t attempts_used = 0;
    bool succeeded = false;        // winner score <= threshold when one was given

    double winner_score() const { return attempts[winner].score; }
    const Candidate& winner_candidate() const { return attempts[winner].candidate; }
};

// Scores candidates in order; stops early when a score reaches the
// threshold. Without a threshold all candidates are scored and succeeded
// is reported false (caller policy).
AttackResult bruteforce(const ComplexVector& y_equalized, const CandidateSet& candidates,
                        const ScoringMode& scoring,
                        std::optional<double> early_stop_threshold = std::nullopt,
                        PrecoderCache* cache = nullptr);

nlohmann::json attack_result_to_json(const AttackResult& result, Waveform waveform);

// Two-column CSV (parameter, score): K' for OTFS, c1' for AFDM.
std::string attack_result_to_csv(const AttackResult& result);

} // namespace wavesec
