// experiment.hpp - Monte Carlo experiment drivers and configuration
//
// Three experiments, matching the paper's simulation section:
//
//   ber_vs_otfs_k     BER at the eavesdropper per divisor candidate K'
//   ber_vs_afdm_c1    BER across a c1' window around the true c1
//   ber_vs_snr_attack winner-of-budget brute-force BER vs SNR, OTFS + AFDM
//
// Determinism contract: (config, master_seed) fully determines every output
// byte. Trial t of sweep point p on curve c draws from
// Rng(derive_seed(master_seed, (c<<32)|p, t)); error/bit totals are integer
// counts, so aggregation is independent of thread count and run order.
// Per-trial draw order: data bits, channel realization (multipath only),
// noise, attack candidate sampling (attack experiment only).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wavesec/channel.hpp"
#include "wavesec/eavesdropper.hpp"
#include "wavesec/qpsk.hpp"
#include "wavesec/rng.hpp"
#include "wavesec/waveform.hpp"

namespace wavesec {

enum class ExperimentKind { kBerVsOtfsK, kBerVsAfdmC1, kBerVsSnrAttack };
enum class ChannelKind { kAwgn, kMultipath };
enum class EqualizerKind { kZf, kMmse };
enum class ScoringKind { kGroundTruthBer, kBlindFourthPower };

struct ChannelConfig {
    ChannelKind kind = ChannelKind::kAwgn;
    double snr_db = 25.0;
    std::size_t n_taps = 4;     // multipath only
    double theta_max = 0.3;     // multipath only
};

struct SweepConfig {
    // ber_vs_afdm_c1: window c1 +- half_width sampled at `points` points
    double half_width = 8e-5;
    std::size_t points = 81;
    // ber_vs_snr_attack: SNR grid in dB
    std::vector<double> snr_db = {0, 5, 10, 15, 20, 25, 30};
};

struct AttackConfig {
    std::size_t budget = 8; // OTFS uses all sigma(N) divisors regardless
    ScoringKind scoring = ScoringKind::kGroundTruthBer;
    double d_upper = 0.3;
    double epsilon = 1.0;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::kBerVsOtfsK;
    std::size_t n_subcarriers = 128;
    std::size_t otfs_doppler_bins = 16; // true K
    double afdm_c1 = 0.2;               // true c1
    double afdm_c2 = 1e-3;              // true c2
    ChannelConfig channel{};
    EqualizerKind equalizer = EqualizerKind::kZf;
    bool equalizer_given = false; // when false, bound to the channel kind
    std::string constellation = "qpsk";
    std::size_t trials = 1000;
    std::uint64_t master_seed = 1;
    SweepConfig sweep{};
    AttackConfig attack{};
    std::size_t threads = 0;     // 0 = hardware concurrency
    std::string waveform;        // attack CLI only: "afdm" or "otfs"

    void validate() const; // throws std::invalid_argument with a one-line reason

    // strict parse: unknown keys anywhere are rejected
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    // FNV-1a 64 over the canonical JSON dump, 16 hex chars
    std::string config_hash() const;

    EqualizerKind effective_equalizer() const;
};

struct BerCurve {
    std::string name;
    std::vector<double> sweep_values;
    std::vector<double> ber;
    std::vector<std::uint64_t> bits;
    std::vector<std::uint64_t> errors;
    std::size_t trials_per_point = 0;
    std::uint64_t seed = 0;

    // header "sweep_value,ber,bits,errors,trials"
    std::string to_csv() const;
};

struct TrialStats {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
};

// Runs `trials` independent trials, each on its own derived stream, and
// sums the integer counts. Order- and thread-count-independent.
TrialStats monte_carlo(const std::function<TrialStats(std::size_t, Rng&)>& trial,
                       std::size_t trials, std::uint64_t master_seed, std::uint64_t stream_id,
                       std::size_t threads);

BerCurve run_ber_vs_otfs_k(const ExperimentConfig& cfg);
BerCurve run_ber_vs_afdm_c1(const ExperimentConfig& cfg);
std::vector<BerCurve> run_ber_vs_snr_attack(const ExperimentConfig& cfg);

// dispatch on cfg.experiment
std::vector<BerCurve> run_experiment(const ExperimentConfig& cfg);

// One CSV per curve, named <experiment>_<curve>_<hash>.csv; returns paths.
std::vector<std::string> save_curves(const std::vector<BerCurve>& curves,
                                     const ExperimentConfig& cfg, const std::string& out_dir);

// gnuplot commands referencing the CSV files
std::string plot_script(const std::vector<std::string>& csv_paths);

// Single frame through the configured channel and equalizer; used by the
// attack demo and the drivers.
ComplexVector propagate_equalize(const ComplexVector& x, const ChannelConfig& channel,
                                 EqualizerKind equalizer, double snr_db, Rng& rng);

// Single-shot attack demo for the CLI.
AttackResult run_single_attack(const ExperimentConfig& cfg);

} // namespace wavesec
