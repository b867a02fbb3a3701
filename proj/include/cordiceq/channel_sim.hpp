#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cordiceq/adaptive_filter.hpp"

namespace cordiceq {

/// 16-level equispaced symmetric source: levels +/-(2k-1)*spacing, k = 1..8,
/// calibrated so the mean-square symbol value equals the requested power.
struct SourceSpec {
    std::vector<double> levels;  ///< ascending
    double spacing = 0.0;
    double power_db = 0.0;
};

/// spacing = sqrt(10^(power_db/10) / 85); 85 is the mean square of
/// {+/-1, +/-3, ..., +/-15}.
SourceSpec make_source(double power_db);

/// i.i.d. equiprobable draws from the alphabet, deterministic per seed.
std::vector<double> gen_symbols(const SourceSpec& source, std::size_t n, std::uint64_t seed);

/// FIR channel plus additive white Gaussian noise at the output.
struct ChannelSpec {
    std::vector<double> taps;
    double noise_variance = 0.0;
};

/// Expands a product of first-order factors (1 + c_j z^-1) into impulse
/// response coefficients in ascending delay order.
std::vector<double> channel_taps_from_factors(std::span<const double> factors);

/// r(n) = sum_j taps[j] * a(n-j) + g(n), a(k) = 0 for k < 0, g i.i.d.
/// Gaussian with the given variance from its own seeded stream.
std::vector<double> channel_output(std::span<const double> taps, std::span<const double> symbols,
                                   double noise_variance, std::uint64_t seed);

/// Everything one equalization experiment needs. Defaults reproduce the
/// reference setup: 16-level 10 dB source, channel
/// (1 + 2z^-1)(1 - 0.5z^-1)(1 + 1.1z^-1)(1 - 0.6z^-1) with noise variance
/// 0.077, and a 15-tap equalizer centered on tap 8 adapting at mu = 0.0004.
struct ExperimentConfig {
    SourceSpec source = make_source(10.0);
    ChannelSpec channel{channel_taps_from_factors(std::vector<double>{2.0, -0.5, 1.1, -0.6}),
                        0.077};
    AlgorithmKind kind = AlgorithmKind::Tlms;
    TrigBackend backend = TrigBackend::cordic(32);
    int taps = 15;
    int center = 8;  ///< 1-based reference tap; training delay = center - 1
    double mu = 4e-4;
    std::size_t n_symbols = 5000;
    std::size_t n_runs = 200;
    std::optional<std::size_t> training_len;  ///< default: all symbols (pure training)
    std::uint64_t base_seed = 12345;
    std::size_t smoothing_window = 100;
};

/// Throws std::invalid_argument when any field is out of contract.
void validate(const ExperimentConfig& config);

/// Ensemble-averaged squared-error learning curve.
struct MseCurve {
    std::vector<double> mse;  ///< mse[n] = mean over runs of e^2(n)
};

/// One training/decision-directed pass over n_symbols symbols; returns
/// e^2(n). Symbol and noise generators run as two independent streams so
/// changing one never perturbs the other. The optional sink receives the
/// per-step trace CSV.
std::vector<double> run_single(const ExperimentConfig& config, std::uint64_t symbol_seed,
                               std::uint64_t noise_seed, std::ostream* step_trace = nullptr);

/// Same, with both stream seeds derived from one run seed.
std::vector<double> run_single(const ExperimentConfig& config, std::uint64_t run_seed,
                               std::ostream* step_trace = nullptr);

/// n_runs independent runs with run seeds base_seed + i, averaged pointwise.
/// Runs may execute in parallel; the result does not depend on scheduling.
MseCurve run_ensemble(const ExperimentConfig& config);

/// Trailing moving average with partial windows at the head.
std::vector<double> moving_average(std::span<const double> values, std::size_t window);

/// CSV with header `n,mse,mse_db`, one row per symbol index.
void write_mse_csv(const MseCurve& curve, std::ostream& os);

/// Distinct deterministic substreams of one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace cordiceq
