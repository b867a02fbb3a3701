#include "cordiceq/adaptive_filter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace cordiceq {

namespace {

constexpr double kTlmsLimit = std::numbers::pi / 2 - 0x1p-20;

struct TapEval {
    double w;      // weight
    double slope;  // d(weight)/d(theta): cos, cosh, or 1
};

TapEval eval_tap(const EqualizerState& state, double theta) {
    switch (state.kind) {
        case AlgorithmKind::Lms: return {theta, 1.0};
        case AlgorithmKind::Tlms:
            if (state.backend.kind == TrigBackend::Kind::Exact)
                return {std::sin(theta), std::cos(theta)};
            else {
                const SinCos sc = sin_cos(*state.table, theta);
                return {sc.sin, sc.cos};
            }
        case AlgorithmKind::Hlms:
            if (state.backend.kind == TrigBackend::Kind::Exact)
                return {std::sinh(theta), std::cosh(theta)};
            else {
                const SinhCosh sc = sinh_cosh(*state.table, theta);
                return {sc.sinh, sc.cosh};
            }
    }
    throw std::logic_error("eval_tap: bad algorithm kind");
}

// Clamped theta update shared by update_thetas and step. With e == 0 every
// increment is exactly +/-0.0, so thetas stay bit-identical.
void apply_update(EqualizerState& state, double e, std::span<const double> slopes) {
    if (!std::isfinite(e)) throw std::invalid_argument("update_thetas: error is not finite");
    const int n = state.taps();
    for (int k = 0; k < n; ++k) {
        double theta = state.thetas[k] + state.mu * e * slopes[k] * state.delay_line[k];
        if (state.theta_limit > 0.0 && std::abs(theta) > state.theta_limit) {
            theta = theta > 0.0 ? state.theta_limit : -state.theta_limit;
            ++state.clamp_count;
        }
        state.thetas[k] = theta;
    }
}

}  // namespace

EqualizerState init_state(AlgorithmKind kind, int taps, double mu, const TrigBackend& backend) {
    if (taps < 1) throw std::invalid_argument("init_state: taps must be >= 1");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("init_state: mu must be positive and finite");

    EqualizerState state;
    state.kind = kind;
    state.backend = backend;
    state.mu = mu;
    state.thetas.assign(taps, 0.0);
    state.delay_line.assign(taps, 0.0);
    state.slope_scratch.assign(taps, 0.0);

    if (backend.kind == TrigBackend::Kind::Cordic && kind != AlgorithmKind::Lms) {
        const CordicMode mode =
            kind == AlgorithmKind::Tlms ? CordicMode::Circular : CordicMode::Hyperbolic;
        state.table = std::make_shared<const AngleTable>(build_angle_table(
            mode, backend.cordic_steps, backend.schedule, backend.frac_bits, backend.word_bits));
    }

    switch (kind) {
        case AlgorithmKind::Lms: state.theta_limit = 0.0; break;
        case AlgorithmKind::Tlms: state.theta_limit = kTlmsLimit; break;
        case AlgorithmKind::Hlms:
            state.theta_limit = state.table
                                    ? state.table->domain_radians()
                                    : schedule_domain(CordicMode::Hyperbolic, backend.cordic_steps,
                                                      backend.schedule);
            break;
    }
    return state;
}

double weight(double theta, AlgorithmKind kind, const TrigBackend& backend) {
    EqualizerState state = init_state(kind, 1, 1.0, backend);
    return eval_tap(state, theta).w;
}

double filter_output(const EqualizerState& state) {
    double y = 0.0;
    const int n = state.taps();
    for (int k = 0; k < n; ++k) y += state.delay_line[k] * eval_tap(state, state.thetas[k]).w;
    return y;
}

void update_thetas(EqualizerState& state, double e) {
    const int n = state.taps();
    for (int k = 0; k < n; ++k) state.slope_scratch[k] = eval_tap(state, state.thetas[k]).slope;
    apply_update(state, e, state.slope_scratch);
}

double decide(double y, std::span<const double> levels) {
    if (levels.empty()) throw std::invalid_argument("decide: empty alphabet");
    const auto it = std::lower_bound(levels.begin(), levels.end(), y);
    if (it == levels.begin()) return levels.front();
    if (it == levels.end()) return levels.back();
    const double hi = *it;
    const double lo = *(it - 1);
    return y - lo <= hi - y ? lo : hi;
}

StepResult step(EqualizerState& state, double x_new, std::optional<double> desired,
                std::span<const double> levels) {
    const int n = state.taps();
    for (int k = n - 1; k > 0; --k) state.delay_line[k] = state.delay_line[k - 1];
    state.delay_line[0] = x_new;

    // One trig evaluation per tap; the slope rides along for the update.
    double y = 0.0;
    for (int k = 0; k < n; ++k) {
        const TapEval tap = eval_tap(state, state.thetas[k]);
        y += state.delay_line[k] * tap.w;
        state.slope_scratch[k] = tap.slope;
    }

    double z_ref;
    if (state.training) {
        if (!desired) throw std::invalid_argument("step: training mode needs a desired symbol");
        z_ref = *desired;
    } else {
        z_ref = decide(y, levels);
    }
    const double e = z_ref - y;
    apply_update(state, e, state.slope_scratch);
    return {y, e, z_ref};
}

void write_trace_header(std::ostream& os, int taps) {
    os << "n,y,e";
    for (int k = 0; k < taps; ++k) os << ",theta_" << k;
    os << '\n';
}

void write_trace_row(std::ostream& os, std::size_t n, const StepResult& result,
                     std::span<const double> thetas) {
    char buf[64];
    os << n;
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g", result.y, result.e);
    os << buf;
    for (double theta : thetas) {
        std::snprintf(buf, sizeof buf, ",%.17g", theta);
        os << buf;
    }
    os << '\n';
}

}  // namespace cordiceq
