#pragma once

#include <string>
#include <vector>

#include "cordiceq/channel_sim.hpp"

namespace cordiceq::cli {

/// One algorithm/backend combination to simulate.
struct Combo {
    AlgorithmKind kind;
    TrigBackend::Kind trig;
};

struct CliConfig {
    ExperimentConfig experiment;      ///< fully resolved defaults + overrides
    std::vector<Combo> combos;        ///< one entry normally; several with --compare
    std::string output;               ///< CSV path; empty = default per action
    bool dump_angle_table = false;
};

/// Thrown on bad flags; cli_main turns it into exit code 1 plus a usage
/// message on stderr.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses the full flag set. Defaults are the reference experiment: tlms,
/// 15 taps, center 8, mu 0.0004, 10 dB source, the standard test channel
/// with noise variance 0.077, 32-step rotations, 5000 symbols x 200 runs.
CliConfig parse_args(const std::vector<std::string>& args);

/// Executes the configured action; returns 0 on success, 2 on runtime
/// failure (e.g. unwritable output path).
int run(const CliConfig& config);

/// parse + run with exit codes 0 / 1 (usage) / 2 (runtime).
int cli_main(int argc, const char* const* argv);

/// Output file for one combo: the configured path as-is for a single combo,
/// or with an algorithm/backend tag spliced in before the extension when
/// comparing.
std::string output_path_for(const CliConfig& config, const Combo& combo);

/// Human-readable combo tag, e.g. "tlms-cordic32" or "hlms-exact".
std::string combo_label(const CliConfig& config, const Combo& combo);

}  // namespace cordiceq::cli
