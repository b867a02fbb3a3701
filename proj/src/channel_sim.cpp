#include "cordiceq/channel_sim.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace cordiceq {

SourceSpec make_source(double power_db) {
    if (!std::isfinite(power_db)) throw std::invalid_argument("make_source: power must be finite");
    SourceSpec spec;
    spec.power_db = power_db;
    // mean square of {+/-1, +/-3, ..., +/-15} is 680/8 = 85
    spec.spacing = std::sqrt(std::pow(10.0, power_db / 10.0) / 85.0);
    spec.levels.reserve(16);
    for (int k = -15; k <= 15; k += 2) spec.levels.push_back(k * spec.spacing);
    return spec;
}

std::vector<double> gen_symbols(const SourceSpec& source, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_symbols: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, source.levels.size() - 1);
    std::vector<double> symbols(n);
    for (double& a : symbols) a = source.levels[pick(rng)];
    return symbols;
}

std::vector<double> channel_taps_from_factors(std::span<const double> factors) {
    std::vector<double> taps{1.0};
    for (double c : factors) {
        // multiply by (1 + c z^-1)
        taps.push_back(0.0);
        for (std::size_t j = taps.size() - 1; j > 0; --j) taps[j] += c * taps[j - 1];
    }
    return taps;
}

std::vector<double> channel_output(std::span<const double> taps, std::span<const double> symbols,
                                   double noise_variance, std::uint64_t seed) {
    if (symbols.empty()) throw std::invalid_argument("channel_output: empty symbol sequence");
    if (noise_variance < 0.0)
        throw std::invalid_argument("channel_output: negative noise variance");

    std::vector<double> received(symbols.size(), 0.0);
    for (std::size_t n = 0; n < symbols.size(); ++n) {
        double acc = 0.0;
        const std::size_t jmax = std::min(taps.size() - 1, n);
        for (std::size_t j = 0; j <= jmax; ++j) acc += taps[j] * symbols[n - j];
        received[n] = acc;
    }
    if (noise_variance > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, std::sqrt(noise_variance));
        for (double& r : received) r += gauss(rng);
    }
    return received;
}

void validate(const ExperimentConfig& config) {
    if (config.taps < 1) throw std::invalid_argument("config: taps must be >= 1");
    if (config.center < 1 || config.center > config.taps)
        throw std::invalid_argument("config: center must be in [1, taps]");
    if (config.n_runs < 1) throw std::invalid_argument("config: n_runs must be >= 1");
    if (config.n_symbols <= static_cast<std::size_t>(config.taps))
        throw std::invalid_argument("config: n_symbols must exceed the tap count");
    if (!(config.mu > 0.0) || !std::isfinite(config.mu))
        throw std::invalid_argument("config: mu must be positive and finite");
    if (config.channel.noise_variance < 0.0)
        throw std::invalid_argument("config: negative noise variance");
    if (config.channel.taps.empty()) throw std::invalid_argument("config: empty channel");
    if (config.source.levels.empty()) throw std::invalid_argument("config: empty source alphabet");
    if (config.training_len && *config.training_len > config.n_symbols)
        throw std::invalid_argument("config: training_len exceeds n_symbols");
    if (config.smoothing_window < 1)
        throw std::invalid_argument("config: smoothing_window must be >= 1");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over seed offset by the stream index
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<double> run_single(const ExperimentConfig& config, std::uint64_t symbol_seed,
                               std::uint64_t noise_seed, std::ostream* step_trace) {
    validate(config);
    const std::vector<double> symbols = gen_symbols(config.source, config.n_symbols, symbol_seed);
    const std::vector<double> received =
        channel_output(config.channel.taps, symbols, config.channel.noise_variance, noise_seed);

    EqualizerState state = init_state(config.kind, config.taps, config.mu, config.backend);
    const std::size_t delay = static_cast<std::size_t>(config.center - 1);
    const std::size_t training_len = config.training_len.value_or(config.n_symbols);

    if (step_trace) write_trace_header(*step_trace, config.taps);

    std::vector<double> squared_error(config.n_symbols);
    for (std::size_t n = 0; n < config.n_symbols; ++n) {
        state.training = n < training_len;
        std::optional<double> desired;
        if (state.training) desired = n >= delay ? symbols[n - delay] : 0.0;
        const StepResult result = step(state, received[n], desired, config.source.levels);
        squared_error[n] = result.e * result.e;
        if (step_trace) write_trace_row(*step_trace, n, result, state.thetas);
    }
    return squared_error;
}

std::vector<double> run_single(const ExperimentConfig& config, std::uint64_t run_seed,
                               std::ostream* step_trace) {
    return run_single(config, mix_seed(run_seed, 1), mix_seed(run_seed, 2), step_trace);
}

MseCurve run_ensemble(const ExperimentConfig& config) {
    validate(config);
    const std::size_t runs = config.n_runs;
    std::vector<std::vector<double>> per_run(runs);

    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(hw > 0 ? hw : 1, runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= runs) return;
            try {
                per_run[i] = run_single(config, config.base_seed + i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // fixed reduction order keeps the result independent of scheduling
    MseCurve curve;
    curve.mse.assign(config.n_symbols, 0.0);
    for (std::size_t i = 0; i < runs; ++i)
        for (std::size_t n = 0; n < config.n_symbols; ++n) curve.mse[n] += per_run[i][n];
    for (double& m : curve.mse) m /= static_cast<double>(runs);
    return curve;
}

std::vector<double> moving_average(std::span<const double> values, std::size_t window) {
    if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
    std::vector<double> out(values.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < values.size(); ++n) {
        sum += values[n];
        if (n >= window) sum -= values[n - window];
        out[n] = sum / static_cast<double>(std::min(n + 1, window));
    }
    return out;
}

void write_mse_csv(const MseCurve& curve, std::ostream& os) {
    os << "n,mse,mse_db\n";
    char row[80];
    for (std::size_t n = 0; n < curve.mse.size(); ++n) {
        const double mse = curve.mse[n];
        std::snprintf(row, sizeof row, "%zu,%.17g,%.17g\n", n, mse, 10.0 * std::log10(mse));
        os << row;
    }
}

}  // namespace cordiceq
