#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cordiceq/cordic.hpp"

namespace cordiceq {

/// Tap-weight parameterization of the transversal filter:
///   Tlms: w_k = sin(theta_k),  update gain cos(theta_k)
///   Hlms: w_k = sinh(theta_k), update gain cosh(theta_k)
///   Lms:  plain baseline, theta_k is the weight itself
enum class AlgorithmKind { Lms, Tlms, Hlms };

/// How sin/cos (or sinh/cosh) get evaluated: through the step-by-step
/// fixed-point rotation engine, or through the math library as an exact
/// reference.
struct TrigBackend {
    enum class Kind { Cordic, Exact };

    Kind kind = Kind::Cordic;
    int cordic_steps = 32;
    RepeatSchedule schedule = RepeatSchedule::Standard;
    int frac_bits = FixedPoint::kDefaultFracBits;
    int word_bits = FixedPoint::kDefaultWordBits;

    static TrigBackend exact() {
        TrigBackend b;
        b.kind = Kind::Exact;
        return b;
    }
    static TrigBackend cordic(int steps, RepeatSchedule schedule = RepeatSchedule::Standard,
                              int frac_bits = FixedPoint::kDefaultFracBits,
                              int word_bits = FixedPoint::kDefaultWordBits) {
        return TrigBackend{Kind::Cordic, steps, schedule, frac_bits, word_bits};
    }
};

struct StepResult {
    double y;      ///< filter output y(n)
    double e;      ///< error z_ref - y
    double z_ref;  ///< desired symbol in training mode, quantized output otherwise
};

/// Single-owner adaptive equalizer state. Instances are independent; run as
/// many in parallel as you like, but never mutate one concurrently.
struct EqualizerState {
    AlgorithmKind kind = AlgorithmKind::Tlms;
    TrigBackend backend{};
    double mu = 0.0;
    std::vector<double> thetas;      ///< angles (Lms: the weights directly)
    std::vector<double> delay_line;  ///< delay_line[k] = x(n-k)
    bool training = true;
    double theta_limit = 0.0;  ///< clamp bound after each update; 0 = none (Lms)
    long clamp_count = 0;      ///< how many tap updates hit the clamp
    std::shared_ptr<const AngleTable> table;  ///< set for Cordic backends

    int taps() const { return static_cast<int>(thetas.size()); }
    std::vector<double> slope_scratch;  ///< per-step gain buffer, not logical state
};

/// Fresh all-zero state (zero angles mean zero weights). Builds and caches
/// the rotation table for Cordic backends. Tlms clamps thetas to
/// +/-(pi/2 - 2^-20); Hlms clamps to the hyperbolic convergence domain of
/// the active schedule.
EqualizerState init_state(AlgorithmKind kind, int taps, double mu, const TrigBackend& backend);

/// Tap weight for one angle through the given backend. For Cordic backends
/// this builds a throwaway table; state-driven paths reuse the cached one.
double weight(double theta, AlgorithmKind kind, const TrigBackend& backend);

/// y(n) = sum_k x(n-k) * w(theta_k), evaluated in ascending k.
double filter_output(const EqualizerState& state);

/// theta_k += mu * e * gain(theta_k) * x(n-k), then clamp into the kind's
/// domain. gain is cos/cosh via the state's backend (1 for Lms).
void update_thetas(EqualizerState& state, double e);

/// Nearest level of a sorted alphabet; ties break toward the lower level,
/// extremes saturate.
double decide(double y, std::span<const double> levels);

/// One full symbol: shift x_new into the delay line, evaluate the output,
/// pick the error reference (desired symbol while training, quantized output
/// in decision-directed mode), and update every theta. For Cordic backends
/// each tap costs exactly one rotation per symbol: the trace's y and x serve
/// as sin and cos in the output and the update respectively.
StepResult step(EqualizerState& state, double x_new, std::optional<double> desired,
                std::span<const double> levels = {});

/// Per-step trace CSV: header `n,y,e,theta_0..theta_{N-1}`.
void write_trace_header(std::ostream& os, int taps);
void write_trace_row(std::ostream& os, std::size_t n, const StepResult& result,
                     std::span<const double> thetas);

}  // namespace cordiceq
