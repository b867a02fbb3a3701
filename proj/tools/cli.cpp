#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cordiceq::cli {

namespace {

AlgorithmKind parse_kind(const std::string& name) {
    if (name == "lms") return AlgorithmKind::Lms;
    if (name == "tlms") return AlgorithmKind::Tlms;
    if (name == "hlms") return AlgorithmKind::Hlms;
    throw UsageError("unknown algorithm '" + name + "' (expected lms, tlms or hlms)");
}

TrigBackend::Kind parse_trig(const std::string& name) {
    if (name == "cordic") return TrigBackend::Kind::Cordic;
    if (name == "exact") return TrigBackend::Kind::Exact;
    throw UsageError("unknown trig backend '" + name + "' (expected cordic or exact)");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::string db_string(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 10.0 * std::log10(value));
    return buf;
}

double mean(std::span<const double> v, std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) sum += v[i];
    return sum / static_cast<double>(hi - lo);
}

}  // namespace

CliConfig parse_args(const std::vector<std::string>& args) {
    CliConfig config;
    ExperimentConfig& exp = config.experiment;

    std::string algorithm = "tlms";
    std::string trig = "cordic";
    std::string schedule = "standard";
    std::string compare;
    double power_db = 10.0;
    double noise_var = exp.channel.noise_variance;
    long long training_len = -1;

    CLI::App app{"Adaptive channel-equalization simulator driven by step-by-step "
                 "fixed-point CORDIC rotations"};
    app.option_defaults()->always_capture_default();
    app.add_option("--algorithm", algorithm, "Adaptation algorithm")
        ->check(CLI::IsMember({"lms", "tlms", "hlms"}));
    app.add_option("--trig", trig, "sin/cos evaluation backend")
        ->check(CLI::IsMember({"cordic", "exact"}));
    app.add_option("--cordic-steps", exp.backend.cordic_steps, "Rotation count per evaluation")
        ->check(CLI::Range(1, 64));
    app.add_option("--schedule", schedule, "Hyperbolic double-pass schedule")
        ->check(CLI::IsMember({"standard", "paper"}));
    app.add_option("--taps", exp.taps, "Equalizer length")->check(CLI::Range(1, 4096));
    app.add_option("--center", exp.center, "Reference tap position (1-based)")
        ->check(CLI::Range(1, 4096));
    app.add_option("--mu", exp.mu, "Adaptation step size")
        ->check(CLI::PositiveNumber);
    app.add_option("--symbols", exp.n_symbols, "Symbols per run");
    app.add_option("--runs", exp.n_runs, "Ensemble size")->check(CLI::Range(1, 1000000));
    app.add_option("--seed", exp.base_seed, "Base seed; run i uses seed + i");
    app.add_option("--noise-var", noise_var, "Channel noise variance")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--power-db", power_db, "Transmitted signal power in dB");
    app.add_option("--training-len", training_len,
                   "Training symbols before decision-directed mode (default: all)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--smoothing-window", exp.smoothing_window, "Moving-average window")
        ->check(CLI::Range(1, 1000000));
    app.add_option("--output", config.output, "Output CSV path");
    app.add_option("--compare", compare,
                   "Comma-separated algorithm[:backend] combos run on identical streams");
    app.add_flag("--dump-angle-table", config.dump_angle_table,
                 "Write the elementary-angle table as CSV and exit");
    app.add_option("--frac-bits", exp.backend.frac_bits, "Fractional bits of the datapath")
        ->check(CLI::Range(1, 62));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        throw;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    exp.source = make_source(power_db);
    exp.channel.noise_variance = noise_var;
    exp.backend.kind = parse_trig(trig);
    exp.backend.schedule = schedule == "standard" ? RepeatSchedule::Standard : RepeatSchedule::Paper;
    exp.kind = parse_kind(algorithm);
    if (training_len >= 0) exp.training_len = static_cast<std::size_t>(training_len);

    if (compare.empty()) {
        config.combos.push_back({exp.kind, exp.backend.kind});
    } else {
        if (config.dump_angle_table)
            throw UsageError("--compare and --dump-angle-table are contradictory");
        for (const std::string& entry : split(compare, ',')) {
            const auto parts = split(entry, ':');
            if (parts.empty() || parts.size() > 2)
                throw UsageError("bad --compare entry '" + entry + "'");
            Combo combo{parse_kind(parts[0]),
                        parts.size() == 2 ? parse_trig(parts[1]) : exp.backend.kind};
            config.combos.push_back(combo);
        }
    }

    if (!config.dump_angle_table) {
        try {
            validate(exp);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return config;
}

std::string combo_label(const CliConfig& config, const Combo& combo) {
    std::string label;
    switch (combo.kind) {
        case AlgorithmKind::Lms: label = "lms"; break;
        case AlgorithmKind::Tlms: label = "tlms"; break;
        case AlgorithmKind::Hlms: label = "hlms"; break;
    }
    label += '-';
    if (combo.trig == TrigBackend::Kind::Exact)
        label += "exact";
    else
        label += "cordic" + std::to_string(config.experiment.backend.cordic_steps);
    return label;
}

std::string output_path_for(const CliConfig& config, const Combo& combo) {
    std::string path = config.output.empty() ? "mse.csv" : config.output;
    if (config.combos.size() < 2) return path;
    const std::size_t slash = path.find_last_of('/');
    std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) dot = path.size();
    return path.substr(0, dot) + "_" + combo_label(config, combo) + path.substr(dot);
}

int run(const CliConfig& config) {
    if (config.dump_angle_table) {
        const CordicMode mode = config.combos.front().kind == AlgorithmKind::Hlms
                                    ? CordicMode::Hyperbolic
                                    : CordicMode::Circular;
        const TrigBackend& b = config.experiment.backend;
        const AngleTable table =
            build_angle_table(mode, b.cordic_steps, b.schedule, b.frac_bits, b.word_bits);
        if (config.output.empty()) {
            write_angle_table_csv(table, std::cout);
        } else {
            std::ofstream out(config.output);
            if (!out) {
                std::cerr << "error: cannot write " << config.output << '\n';
                return 2;
            }
            write_angle_table_csv(table, out);
        }
        return 0;
    }

    for (const Combo& combo : config.combos) {
        ExperimentConfig exp = config.experiment;
        exp.kind = combo.kind;
        exp.backend.kind = combo.trig;

        const MseCurve curve = run_ensemble(exp);
        const std::string path = output_path_for(config, combo);
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot write " << path << '\n';
            return 2;
        }
        write_mse_csv(curve, out);
        if (!out.flush()) {
            std::cerr << "error: short write to " << path << '\n';
            return 2;
        }

        const std::vector<double> smoothed = moving_average(curve.mse, exp.smoothing_window);
        const std::size_t n = smoothed.size();
        const std::size_t w = std::min(exp.smoothing_window, n);
        const double initial = mean(smoothed, 0, w);
        const double final_ = mean(smoothed, n - w, n);
        std::string drop_at = "none";
        for (std::size_t i = 0; i < n; ++i) {
            if (smoothed[i] <= initial / 10.0) {
                drop_at = std::to_string(i);
                break;
            }
        }
        std::cout << combo_label(config, combo) << ": initial " << db_string(initial)
                  << " dB, final " << db_string(final_) << " dB, 10 dB drop at n=" << drop_at
                  << " -> " << path << '\n';
    }
    return 0;
}

int cli_main(int argc, const char* const* argv) {
    try {
        const CliConfig config = parse_args(std::vector<std::string>(argv + 1, argv + argc));
        return run(config);
    } catch (const CLI::CallForHelp&) {
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\nsee --help for usage\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cordiceq::cli
