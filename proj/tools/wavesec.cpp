// wavesec - AFDM/OTFS eavesdropping-robustness simulator CLI
//
// Subcommands:
//   analyze   closed-form robustness report (attempt counts, bounds)
//   simulate  Monte Carlo experiment from a JSON config, CSV output
//   attack    single-shot brute-force demodulation demo, JSON output

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wavesec/experiment.hpp"
#include "wavesec/robustness.hpp"

namespace {

wavesec::ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    f >> j;
    return wavesec::ExperimentConfig::from_json(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AFDM/OTFS robustness against brute-force eavesdropping"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "closed-form robustness report");
    std::string waveform;
    std::size_t n = 128;
    double theta_max = 0.3;
    double d_upper = 0.3;
    double epsilon = 1.0;
    bool as_json = false;
    analyze->add_option("--waveform", waveform, "afdm or otfs")->required();
    analyze->add_option("--n", n, "number of subcarriers")->required();
    analyze->add_option("--theta-max", theta_max, "maximum normalized Doppler (afdm)");
    analyze->add_option("--d", d_upper, "upper end D of the c1 search range (afdm)");
    analyze->add_option("--epsilon", epsilon, "acceptable-error level in (0,1] (afdm)");
    analyze->add_flag("--json", as_json, "emit JSON instead of text");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo experiment");
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    std::size_t threads_override = 0;
    bool write_plot = false;
    simulate->add_option("--config", config_path, "experiment config JSON")->required();
    simulate->add_option("--out", out_dir, "output directory for CSV files");
    simulate->add_option("--seed", seed_override, "override master_seed")
        ->each([&](const std::string&) { seed_given = true; });
    simulate->add_option("--threads", threads_override, "worker thread count (0 = hardware)");
    simulate->add_flag("--plot-script", write_plot, "also write a gnuplot script for the CSVs");

    // attack
    auto* attack = app.add_subcommand("attack", "single-shot brute-force attack demo");
    std::string attack_config_path;
    std::string attack_csv;
    attack->add_option("--config", attack_config_path, "experiment config JSON")->required();
    attack->add_option("--csv", attack_csv, "also write the (parameter, score) CSV to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            wavesec::RobustnessReport report;
            if (waveform == "otfs") {
                report = wavesec::analyze_otfs(n);
            } else if (waveform == "afdm") {
                report = wavesec::analyze_afdm(n, theta_max, d_upper, epsilon);
            } else {
                throw std::invalid_argument("analyze: waveform must be 'afdm' or 'otfs'");
            }
            if (as_json) {
                std::cout << wavesec::report_to_json(report).dump(2) << "\n";
            } else {
                std::cout << wavesec::format_report(report);
            }
        } else if (*simulate) {
            wavesec::ExperimentConfig cfg = load_config(config_path);
            if (seed_given) cfg.master_seed = seed_override;
            if (threads_override != 0) cfg.threads = threads_override;
            const auto curves = wavesec::run_experiment(cfg);
            const auto paths = wavesec::save_curves(curves, cfg, out_dir);
            for (const auto& p : paths) std::cout << p << "\n";
            if (write_plot) {
                const std::string plot_path = out_dir + "/plot_" + cfg.config_hash() + ".gp";
                std::ofstream f(plot_path, std::ios::binary);
                f << wavesec::plot_script(paths);
                std::cout << plot_path << "\n";
            }
        } else if (*attack) {
            wavesec::ExperimentConfig cfg = load_config(attack_config_path);
            const wavesec::AttackResult result = wavesec::run_single_attack(cfg);
            const auto wf = cfg.waveform == "otfs" ? wavesec::Waveform::kOtfs : wavesec::Waveform::kAfdm;
            std::cout << wavesec::attack_result_to_json(result, wf).dump(2) << "\n";
            if (!attack_csv.empty()) {
                std::ofstream f(attack_csv, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + attack_csv);
                f << wavesec::attack_result_to_csv(result);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
