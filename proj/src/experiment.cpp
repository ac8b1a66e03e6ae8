#include "wavesec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

namespace wavesec {

namespace {

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::kBerVsOtfsK: return "ber_vs_otfs_k";
        case ExperimentKind::kBerVsAfdmC1: return "ber_vs_afdm_c1";
        case ExperimentKind::kBerVsSnrAttack: return "ber_vs_snr_attack";
    }
    return "unknown";
}

ExperimentKind parse_experiment(const std::string& s) {
    if (s == "ber_vs_otfs_k") return ExperimentKind::kBerVsOtfsK;
    if (s == "ber_vs_afdm_c1") return ExperimentKind::kBerVsAfdmC1;
    if (s == "ber_vs_snr_attack") return ExperimentKind::kBerVsSnrAttack;
    throw std::invalid_argument("config: unknown experiment '" + s + "'");
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                const char* context) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw std::invalid_argument(std::string("config: unknown key '") + it.key() + "' in " +
                                        context);
        }
    }
}

// distinct draws from [0, population), ascending
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t population, std::size_t count) {
    count = std::min(count, population);
    std::set<std::size_t> chosen;
    if (count == population) {
        for (std::size_t i = 0; i < population; ++i) chosen.insert(i);
    } else {
        while (chosen.size() < count) {
            chosen.insert(static_cast<std::size_t>(rng.uniform_index(population)));
        }
    }
    return {chosen.begin(), chosen.end()};
}

std::uint64_t stream_of(std::uint64_t curve, std::uint64_t point) { return (curve << 32) | point; }

} // namespace

EqualizerKind ExperimentConfig::effective_equalizer() const {
    if (equalizer_given) return equalizer;
    return channel.kind == ChannelKind::kAwgn ? EqualizerKind::kZf : EqualizerKind::kMmse;
}

void ExperimentConfig::validate() const {
    if (n_subcarriers < 2) throw std::invalid_argument("config: n_subcarriers must be >= 2");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (constellation != "qpsk") throw std::invalid_argument("config: only the qpsk constellation ships");
    if (channel.kind == ChannelKind::kMultipath) {
        if (channel.n_taps < 1 || channel.n_taps > n_subcarriers)
            throw std::invalid_argument("config: channel n_taps must be in [1, n_subcarriers]");
        if (channel.theta_max < 0.0) throw std::invalid_argument("config: theta_max must be >= 0");
    }
    if (!std::isfinite(afdm_c1) || !std::isfinite(afdm_c2))
        throw std::invalid_argument("config: afdm_c1/afdm_c2 must be finite");
    switch (experiment) {
        case ExperimentKind::kBerVsOtfsK:
            if (otfs_doppler_bins == 0 || n_subcarriers % otfs_doppler_bins != 0)
                throw std::invalid_argument("config: otfs_doppler_bins must divide n_subcarriers");
            break;
        case ExperimentKind::kBerVsAfdmC1:
            if (sweep.points < 2) throw std::invalid_argument("config: sweep.points must be >= 2");
            if (!(sweep.half_width > 0.0))
                throw std::invalid_argument("config: sweep.half_width must be > 0");
            break;
        case ExperimentKind::kBerVsSnrAttack:
            if (otfs_doppler_bins == 0 || n_subcarriers % otfs_doppler_bins != 0)
                throw std::invalid_argument("config: otfs_doppler_bins must divide n_subcarriers");
            if (sweep.snr_db.empty()) throw std::invalid_argument("config: sweep.snr_db must be nonempty");
            if (attack.budget < 1) throw std::invalid_argument("config: attack.budget must be >= 1");
            if (!(attack.epsilon > 0.0) || attack.epsilon > 1.0)
                throw std::invalid_argument("config: attack.epsilon must be in (0, 1]");
            if (!(attack.d_upper > channel.theta_max / static_cast<double>(n_subcarriers)))
                throw std::invalid_argument("config: attack.d_upper must exceed theta_max/N");
            break;
    }
    if (!waveform.empty() && waveform != "afdm" && waveform != "otfs")
        throw std::invalid_argument("config: waveform must be 'afdm' or 'otfs'");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    check_keys(j,
               {"experiment", "n_subcarriers", "otfs_doppler_bins", "afdm_c1", "afdm_c2", "channel",
                "equalizer", "constellation", "trials", "master_seed", "sweep", "attack", "threads",
                "waveform"},
               "top level");
    ExperimentConfig cfg;
    cfg.experiment = parse_experiment(j.at("experiment").get<std::string>());
    if (j.contains("n_subcarriers")) cfg.n_subcarriers = j["n_subcarriers"].get<std::size_t>();
    if (j.contains("otfs_doppler_bins")) cfg.otfs_doppler_bins = j["otfs_doppler_bins"].get<std::size_t>();
    if (j.contains("afdm_c1")) cfg.afdm_c1 = j["afdm_c1"].get<double>();
    if (j.contains("afdm_c2")) cfg.afdm_c2 = j["afdm_c2"].get<double>();
    if (j.contains("channel")) {
        const auto& jc = j["channel"];
        check_keys(jc, {"type", "snr_db", "n_taps", "theta_max"}, "channel");
        const std::string type = jc.at("type").get<std::string>();
        if (type == "awgn") {
            cfg.channel.kind = ChannelKind::kAwgn;
        } else if (type == "multipath") {
            cfg.channel.kind = ChannelKind::kMultipath;
        } else {
            throw std::invalid_argument("config: channel.type must be 'awgn' or 'multipath'");
        }
        if (jc.contains("snr_db")) cfg.channel.snr_db = jc["snr_db"].get<double>();
        if (jc.contains("n_taps")) cfg.channel.n_taps = jc["n_taps"].get<std::size_t>();
        if (jc.contains("theta_max")) cfg.channel.theta_max = jc["theta_max"].get<double>();
    }
    if (j.contains("equalizer")) {
        const std::string eq = j["equalizer"].get<std::string>();
        if (eq == "zf") {
            cfg.equalizer = EqualizerKind::kZf;
        } else if (eq == "mmse") {
            cfg.equalizer = EqualizerKind::kMmse;
        } else {
            throw std::invalid_argument("config: equalizer must be 'zf' or 'mmse'");
        }
        cfg.equalizer_given = true;
    }
    if (j.contains("constellation")) cfg.constellation = j["constellation"].get<std::string>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::size_t>();
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("sweep")) {
        const auto& js = j["sweep"];
        check_keys(js, {"half_width", "points", "snr_db"}, "sweep");
        if (js.contains("half_width")) cfg.sweep.half_width = js["half_width"].get<double>();
        if (js.contains("points")) cfg.sweep.points = js["points"].get<std::size_t>();
        if (js.contains("snr_db")) cfg.sweep.snr_db = js["snr_db"].get<std::vector<double>>();
    }
    if (j.contains("attack")) {
        const auto& ja = j["attack"];
        check_keys(ja, {"budget", "scoring", "d_upper", "epsilon"}, "attack");
        if (ja.contains("budget")) cfg.attack.budget = ja["budget"].get<std::size_t>();
        if (ja.contains("scoring")) {
            const std::string s = ja["scoring"].get<std::string>();
            if (s == "ground_truth_ber") {
                cfg.attack.scoring = ScoringKind::kGroundTruthBer;
            } else if (s == "blind_fourth_power") {
                cfg.attack.scoring = ScoringKind::kBlindFourthPower;
            } else {
                throw std::invalid_argument(
                    "config: attack.scoring must be 'ground_truth_ber' or 'blind_fourth_power'");
            }
        }
        if (ja.contains("d_upper")) cfg.attack.d_upper = ja["d_upper"].get<double>();
        if (ja.contains("epsilon")) cfg.attack.epsilon = ja["epsilon"].get<double>();
    }
    if (j.contains("threads")) cfg.threads = j["threads"].get<std::size_t>();
    if (j.contains("waveform")) cfg.waveform = j["waveform"].get<std::string>();
    cfg.validate();
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment_name(experiment);
    j["n_subcarriers"] = n_subcarriers;
    j["otfs_doppler_bins"] = otfs_doppler_bins;
    j["afdm_c1"] = afdm_c1;
    j["afdm_c2"] = afdm_c2;
    j["channel"] = {{"type", channel.kind == ChannelKind::kAwgn ? "awgn" : "multipath"},
                    {"snr_db", channel.snr_db},
                    {"n_taps", channel.n_taps},
                    {"theta_max", channel.theta_max}};
    j["equalizer"] = effective_equalizer() == EqualizerKind::kZf ? "zf" : "mmse";
    j["constellation"] = constellation;
    j["trials"] = trials;
    j["master_seed"] = master_seed;
    j["sweep"] = {{"half_width", sweep.half_width}, {"points", sweep.points}, {"snr_db", sweep.snr_db}};
    j["attack"] = {{"budget", attack.budget},
                   {"scoring", attack.scoring == ScoringKind::kGroundTruthBer ? "ground_truth_ber"
                                                                              : "blind_fourth_power"},
                   {"d_upper", attack.d_upper},
                   {"epsilon", attack.epsilon}};
    if (!waveform.empty()) j["waveform"] = waveform;
    return j;
}

std::string ExperimentConfig::config_hash() const {
    const std::string dump = to_json().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string BerCurve::to_csv() const {
    std::string out = "sweep_value,ber,bits,errors,trials\n";
    char line[160];
    for (std::size_t i = 0; i < sweep_values.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.12g,%.10g,%llu,%llu,%zu\n", sweep_values[i], ber[i],
                      static_cast<unsigned long long>(bits[i]),
                      static_cast<unsigned long long>(errors[i]), trials_per_point);
        out += line;
    }
    return out;
}

TrialStats monte_carlo(const std::function<TrialStats(std::size_t, Rng&)>& trial,
                       std::size_t trials, std::uint64_t master_seed, std::uint64_t stream_id,
                       std::size_t threads) {
    if (trials == 0) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, trials);

    if (threads <= 1) {
        TrialStats total;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng(derive_seed(master_seed, stream_id, t));
            const TrialStats s = trial(t, rng);
            total.bits += s.bits;
            total.errors += s.errors;
        }
        return total;
    }

    std::atomic<std::size_t> next{0};
    std::vector<TrialStats> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= trials) break;
                    Rng rng(derive_seed(master_seed, stream_id, t));
                    const TrialStats s = trial(t, rng);
                    partial[w].bits += s.bits;
                    partial[w].errors += s.errors;
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    TrialStats total;
    for (const auto& p : partial) {
        total.bits += p.bits;
        total.errors += p.errors;
    }
    return total;
}

ComplexVector propagate_equalize(const ComplexVector& x, const ChannelConfig& channel,
                                 EqualizerKind equalizer, double snr_db, Rng& rng) {
    const bool noiseless = std::isinf(snr_db) && snr_db > 0.0;
    const double sigma2 = noiseless ? 0.0 : std::pow(10.0, -snr_db / 10.0);
    if (channel.kind == ChannelKind::kAwgn) {
        ComplexVector y = apply_awgn(x, snr_db, 1.0, rng);
        if (equalizer == EqualizerKind::kMmse && sigma2 > 0.0) {
            // H = I: G = I / (1 + sigma^2)
            const double scale = 1.0 / (1.0 + sigma2);
            for (auto& z : y) z *= scale;
        }
        return y;
    }
    const ChannelSpec spec = random_channel(channel.n_taps, channel.theta_max, x.size(), rng);
    const ComplexMatrix h = build_channel_matrix(spec);
    const ComplexVector y = apply_awgn(h * x, snr_db, 1.0, rng);
    const ComplexMatrix g =
        equalizer == EqualizerKind::kZf ? zf_equalizer(h) : mmse_equalizer(h, sigma2);
    return g * y;
}

BerCurve run_ber_vs_otfs_k(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment != ExperimentKind::kBerVsOtfsK)
        throw std::invalid_argument("run_ber_vs_otfs_k: wrong experiment tag");
    const std::size_t n = cfg.n_subcarriers;
    const std::size_t k_true = cfg.otfs_doppler_bins;
    const Precoder tx = Precoder::otfs({n, k_true, n / k_true});
    const EqualizerKind eq = cfg.effective_equalizer();
    const auto divs = divisors(n);

    BerCurve curve;
    curve.name = "k_sweep";
    curve.trials_per_point = cfg.trials;
    curve.seed = cfg.master_seed;
    for (std::size_t pi = 0; pi < divs.size(); ++pi) {
        const auto k_cand = static_cast<std::size_t>(divs[pi]);
        const Precoder rx = Precoder::otfs({n, k_cand, n / k_cand});
        const TrialStats stats = monte_carlo(
            [&](std::size_t, Rng& rng) {
                const auto tx_bits = rng.bits(2 * n);
                const ComplexVector d = qpsk_map(tx_bits);
                const ComplexVector x = modulate(d, tx);
                const ComplexVector x_hat = propagate_equalize(x, cfg.channel, eq, cfg.channel.snr_db, rng);
                const ComplexVector d_hat = demodulate(x_hat, rx);
                return TrialStats{2 * n, count_bit_errors(tx_bits, qpsk_demap(d_hat))};
            },
            cfg.trials, cfg.master_seed, stream_of(0, pi), cfg.threads);
        curve.sweep_values.push_back(static_cast<double>(k_cand));
        curve.bits.push_back(stats.bits);
        curve.errors.push_back(stats.errors);
        curve.ber.push_back(static_cast<double>(stats.errors) / static_cast<double>(stats.bits));
    }
    return curve;
}

BerCurve run_ber_vs_afdm_c1(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment != ExperimentKind::kBerVsAfdmC1)
        throw std::invalid_argument("run_ber_vs_afdm_c1: wrong experiment tag");
    const std::size_t n = cfg.n_subcarriers;
    const Precoder tx = Precoder::afdm({n, cfg.afdm_c1, cfg.afdm_c2});
    const EqualizerKind eq = cfg.effective_equalizer();
    const std::size_t points = cfg.sweep.points;
    const double lo = cfg.afdm_c1 - cfg.sweep.half_width;
    const double step = 2.0 * cfg.sweep.half_width / static_cast<double>(points - 1);

    BerCurve curve;
    curve.name = "c1_sweep";
    curve.trials_per_point = cfg.trials;
    curve.seed = cfg.master_seed;
    for (std::size_t pi = 0; pi < points; ++pi) {
        const double c1p = lo + static_cast<double>(pi) * step;
        const TrialStats stats = monte_carlo(
            [&](std::size_t, Rng& rng) {
                const auto tx_bits = rng.bits(2 * n);
                const ComplexVector d = qpsk_map(tx_bits);
                const ComplexVector x = modulate(d, tx);
                const ComplexVector x_hat = propagate_equalize(x, cfg.channel, eq, cfg.channel.snr_db, rng);
                const ComplexVector d_hat = afdm_fast_demod(x_hat, c1p, cfg.afdm_c2);
                return TrialStats{2 * n, count_bit_errors(tx_bits, qpsk_demap(d_hat))};
            },
            cfg.trials, cfg.master_seed, stream_of(0, pi), cfg.threads);
        curve.sweep_values.push_back(c1p);
        curve.bits.push_back(stats.bits);
        curve.errors.push_back(stats.errors);
        curve.ber.push_back(static_cast<double>(stats.errors) / static_cast<double>(stats.bits));
    }
    return curve;
}

std::vector<BerCurve> run_ber_vs_snr_attack(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment != ExperimentKind::kBerVsSnrAttack)
        throw std::invalid_argument("run_ber_vs_snr_attack: wrong experiment tag");
    const std::size_t n = cfg.n_subcarriers;
    const EqualizerKind eq = cfg.effective_equalizer();
    const std::string channel_tag = cfg.channel.kind == ChannelKind::kAwgn ? "awgn" : "multipath";

    // AFDM candidate grid geometry (candidates drawn per trial)
    const double grid_lo = cfg.channel.theta_max / static_cast<double>(n);
    const double nm1 = static_cast<double>(n - 1);
    const double grid_step = cfg.attack.epsilon / (std::numbers::pi * nm1 * nm1);
    const auto grid_count =
        static_cast<std::size_t>(std::floor((cfg.attack.d_upper - grid_lo) / grid_step)) + 1;

    const Precoder tx_otfs = Precoder::otfs({n, cfg.otfs_doppler_bins, n / cfg.otfs_doppler_bins});
    const Precoder tx_afdm = Precoder::afdm({n, cfg.afdm_c1, cfg.afdm_c2});
    const CandidateSet otfs_set = otfs_candidates(n);
    PrecoderCache cache;

    std::vector<BerCurve> curves(2);
    curves[0].name = "otfs_" + channel_tag;
    curves[1].name = "afdm_" + channel_tag;
    for (auto& c : curves) {
        c.trials_per_point = cfg.trials;
        c.seed = cfg.master_seed;
    }

    for (std::size_t pi = 0; pi < cfg.sweep.snr_db.size(); ++pi) {
        const double snr = cfg.sweep.snr_db[pi];

        // OTFS: the eavesdropper tests every divisor pair (sigma(N) attempts)
        const TrialStats otfs_stats = monte_carlo(
            [&](std::size_t, Rng& rng) {
                const auto tx_bits = rng.bits(2 * n);
                const ComplexVector d = qpsk_map(tx_bits);
                const ComplexVector x = modulate(d, tx_otfs);
                const ComplexVector x_hat = propagate_equalize(x, cfg.channel, eq, snr, rng);
                const ScoringMode scoring =
                    cfg.attack.scoring == ScoringKind::kGroundTruthBer
                        ? ScoringMode{GroundTruthBer{d}}
                        : ScoringMode{BlindFourthPower{}};
                const AttackResult res = bruteforce(x_hat, otfs_set, scoring, std::nullopt, &cache);
                const ComplexVector d_win =
                    attempt_demod(x_hat, res.winner_candidate(), Waveform::kOtfs, &cache);
                return TrialStats{2 * n, count_bit_errors(tx_bits, qpsk_demap(d_win))};
            },
            cfg.trials, cfg.master_seed, stream_of(0, pi), cfg.threads);
        curves[0].sweep_values.push_back(snr);
        curves[0].bits.push_back(otfs_stats.bits);
        curves[0].errors.push_back(otfs_stats.errors);
        curves[0].ber.push_back(static_cast<double>(otfs_stats.errors) /
                                static_cast<double>(otfs_stats.bits));

        // AFDM: budget random grid candidates, spacing >= 2*Delta1 by construction
        const TrialStats afdm_stats = monte_carlo(
            [&](std::size_t, Rng& rng) {
                const auto tx_bits = rng.bits(2 * n);
                const ComplexVector d = qpsk_map(tx_bits);
                const ComplexVector x = modulate(d, tx_afdm);
                const ComplexVector x_hat = propagate_equalize(x, cfg.channel, eq, snr, rng);
                CandidateSet set;
                set.waveform = Waveform::kAfdm;
                set.n = n;
                set.theta_max = cfg.channel.theta_max;
                set.d_upper = cfg.attack.d_upper;
                set.epsilon = cfg.attack.epsilon;
                set.step = grid_step;
                for (std::size_t idx : sample_distinct(rng, grid_count, cfg.attack.budget)) {
                    set.candidates.push_back(
                        AfdmCandidate{grid_lo + static_cast<double>(idx) * grid_step, cfg.afdm_c2});
                }
                const ScoringMode scoring =
                    cfg.attack.scoring == ScoringKind::kGroundTruthBer
                        ? ScoringMode{GroundTruthBer{d}}
                        : ScoringMode{BlindFourthPower{}};
                const AttackResult res = bruteforce(x_hat, set, scoring, std::nullopt, nullptr);
                const ComplexVector d_win =
                    attempt_demod(x_hat, res.winner_candidate(), Waveform::kAfdm, nullptr);
                return TrialStats{2 * n, count_bit_errors(tx_bits, qpsk_demap(d_win))};
            },
            cfg.trials, cfg.master_seed, stream_of(1, pi), cfg.threads);
        curves[1].sweep_values.push_back(snr);
        curves[1].bits.push_back(afdm_stats.bits);
        curves[1].errors.push_back(afdm_stats.errors);
        curves[1].ber.push_back(static_cast<double>(afdm_stats.errors) /
                                static_cast<double>(afdm_stats.bits));
    }
    return curves;
}

std::vector<BerCurve> run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentKind::kBerVsOtfsK: return {run_ber_vs_otfs_k(cfg)};
        case ExperimentKind::kBerVsAfdmC1: return {run_ber_vs_afdm_c1(cfg)};
        case ExperimentKind::kBerVsSnrAttack: return run_ber_vs_snr_attack(cfg);
    }
    throw std::invalid_argument("run_experiment: unknown experiment tag");
}

std::vector<std::string> save_curves(const std::vector<BerCurve>& curves,
                                     const ExperimentConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string hash = cfg.config_hash();
    std::vector<std::string> paths;
    for (const auto& curve : curves) {
        const std::string path = out_dir + "/" + experiment_name(cfg.experiment) + "_" + curve.name +
                                 "_" + hash + ".csv";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("save_curves: cannot open " + path);
        f << curve.to_csv();
        paths.push_back(path);
    }
    return paths;
}

std::string plot_script(const std::vector<std::string>& csv_paths) {
    std::string s;
    s += "set datafile separator \",\"\n";
    s += "set xlabel \"sweep value\"\n";
    s += "set ylabel \"BER\"\n";
    s += "set logscale y\n";
    s += "set key outside\n";
    s += "plot ";
    for (std::size_t i = 0; i < csv_paths.size(); ++i) {
        if (i > 0) s += ", \\\n     ";
        s += "\"" + csv_paths[i] + "\" using 1:2 skip 1 with linespoints title \"" + csv_paths[i] + "\"";
    }
    s += "\n";
    return s;
}

AttackResult run_single_attack(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.waveform.empty())
        throw std::invalid_argument("attack: config must set \"waveform\" to 'afdm' or 'otfs'");
    const std::size_t n = cfg.n_subcarriers;
    Rng rng(derive_seed(cfg.master_seed, 0, 0));
    const auto tx_bits = rng.bits(2 * n);
    const ComplexVector d = qpsk_map(tx_bits);
    const EqualizerKind eq = cfg.effective_equalizer();

    ComplexVector x;
    CandidateSet set;
    if (cfg.waveform == "otfs") {
        x = modulate(d, Precoder::otfs({n, cfg.otfs_doppler_bins, n / cfg.otfs_doppler_bins}));
        set = otfs_candidates(n);
    } else {
        x = modulate(d, Precoder::afdm({n, cfg.afdm_c1, cfg.afdm_c2}));
        const double lo = cfg.channel.theta_max / static_cast<double>(n);
        const double nm1 = static_cast<double>(n - 1);
        const double step = cfg.attack.epsilon / (std::numbers::pi * nm1 * nm1);
        const auto count =
            static_cast<std::size_t>(std::floor((cfg.attack.d_upper - lo) / step)) + 1;
        set.waveform = Waveform::kAfdm;
        set.n = n;
        set.theta_max = cfg.channel.theta_max;
        set.d_upper = cfg.attack.d_upper;
        set.epsilon = cfg.attack.epsilon;
        set.step = step;
        for (std::size_t idx : sample_distinct(rng, count, cfg.attack.budget)) {
            set.candidates.push_back(AfdmCandidate{lo + static_cast<double>(idx) * step, cfg.afdm_c2});
        }
    }
    const ComplexVector x_hat = propagate_equalize(x, cfg.channel, eq, cfg.channel.snr_db, rng);
    const ScoringMode scoring = cfg.attack.scoring == ScoringKind::kGroundTruthBer
                                    ? ScoringMode{GroundTruthBer{d}}
                                    : ScoringMode{BlindFourthPower{}};
    PrecoderCache cache;
    // early stop at 0.1 so attempts_used reflects the attempt count statistic
    return bruteforce(x_hat, set, scoring, 0.1, &cache);
}

} // namespace wavesec
