#include "cordiceq/cordic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace cordiceq {

namespace {

constexpr int kStandardRepeats[] = {4, 13, 40};
constexpr int kPaperRepeats[] = {5, 7, 8, 13, 15, 17, 19, 20, 21, 22, 24};

std::span<const int> repeat_shifts(RepeatSchedule repeats) {
    return repeats == RepeatSchedule::Standard ? std::span<const int>(kStandardRepeats)
                                               : std::span<const int>(kPaperRepeats);
}

void check_shift(CordicMode mode, int shift) {
    if (mode == CordicMode::Hyperbolic) {
        if (shift < 1)
            throw std::domain_error("elementary_angle: hyperbolic shifts start at 1 "
                                    "(arctanh(1) diverges)");
    } else if (shift < 0) {
        throw std::domain_error("elementary_angle: shift must be non-negative");
    }
}

void check_z_domain(const AngleTable& table, FixedPoint z0) {
    if (z0.raw() > table.z_domain.raw() || z0.raw() < -table.z_domain.raw())
        throw std::domain_error("cordic_rotate: |z0| exceeds the convergence domain");
}

void check_operand(const AngleTable& table, FixedPoint v, const char* name) {
    if (v.frac_bits() != table.frac_bits() || v.word_bits() != table.word_bits())
        throw std::invalid_argument(std::string("cordic_rotate: format of ") + name +
                                    " does not match the table");
}

// One full pass over the schedule. OnStep is called after every iteration
// with (index, delta, x, y, z); an empty callback compiles away, which keeps
// sin_cos/sinh_cosh allocation-free.
template <typename OnStep>
void run_schedule(const AngleTable& table, FixedPoint& x, FixedPoint& y, FixedPoint& z,
                  OnStep&& on_step) {
    const std::size_t n = table.shift_schedule.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int s = table.shift_schedule[i];
        const bool positive = z.raw() >= 0;  // delta = +1 on z == 0
        const FixedPoint xs = x.asr(s);
        const FixedPoint ys = y.asr(s);
        switch (table.mode) {
            case CordicMode::Circular: x = positive ? x - ys : x + ys; break;
            case CordicMode::Hyperbolic: x = positive ? x + ys : x - ys; break;
            case CordicMode::Linear: break;
        }
        y = positive ? y + xs : y - xs;
        z = positive ? z - table.alphas[i] : z + table.alphas[i];
        on_step(i, static_cast<std::int8_t>(positive ? 1 : -1), x, y, z);
    }
}

// Rotation with the scale constant pre-loaded: returns (x_M, y_M) already on
// unit scale, so y = sin/sinh(theta) and x = cos/cosh(theta).
std::pair<double, double> rotate_unit(const AngleTable& table, double theta) {
    FixedPoint z = FixedPoint::from_real(theta, table.frac_bits(), table.word_bits());
    check_z_domain(table, z);
    FixedPoint x = table.scale;
    FixedPoint y = table.zero();
    run_schedule(table, x, y, z, [](std::size_t, std::int8_t, FixedPoint, FixedPoint, FixedPoint) {});
    return {y.to_real(), x.to_real()};
}

}  // namespace

double elementary_angle(CordicMode mode, int shift) {
    check_shift(mode, shift);
    const double t = std::ldexp(1.0, -shift);
    switch (mode) {
        case CordicMode::Circular: return std::atan(t);
        case CordicMode::Linear: return t;
        case CordicMode::Hyperbolic: return std::atanh(t);
    }
    throw std::logic_error("elementary_angle: bad mode");
}

std::vector<int> expand_shift_schedule(CordicMode mode, int iterations, RepeatSchedule repeats) {
    if (iterations < 1 || iterations > 64)
        throw std::out_of_range("build_angle_table: iterations must be in [1, 64]");
    std::vector<int> shifts;
    if (mode == CordicMode::Hyperbolic) {
        const auto rep = repeat_shifts(repeats);
        for (int s = 1; s <= iterations; ++s) {
            shifts.push_back(s);
            if (std::find(rep.begin(), rep.end(), s) != rep.end()) shifts.push_back(s);
        }
    } else {
        for (int s = 0; s < iterations; ++s) shifts.push_back(s);
    }
    return shifts;
}

double schedule_domain(CordicMode mode, int iterations, RepeatSchedule repeats) {
    double sum = 0.0;
    for (int s : expand_shift_schedule(mode, iterations, repeats)) sum += elementary_angle(mode, s);
    return sum;
}

double scale_factor(CordicMode mode, std::span<const int> shift_schedule) {
    if (mode == CordicMode::Linear) return 1.0;
    long double k = 1.0L;
    for (int s : shift_schedule) {
        check_shift(mode, s);
        const long double t2 = ldexpl(1.0L, -2 * s);
        // cos(arctan t) = 1/sqrt(1 + t^2); cosh(arctanh t) = 1/sqrt(1 - t^2)
        k *= mode == CordicMode::Circular ? 1.0L / sqrtl(1.0L + t2) : 1.0L / sqrtl(1.0L - t2);
    }
    return static_cast<double>(k);
}

AngleTable build_angle_table(CordicMode mode, int iterations, RepeatSchedule repeats,
                             int frac_bits, int word_bits) {
    AngleTable table;
    table.mode = mode;
    table.iterations = iterations;
    table.shift_schedule = expand_shift_schedule(mode, iterations, repeats);

    table.alphas.reserve(table.shift_schedule.size());
    FixedPoint sum = FixedPoint::from_raw(0, frac_bits, word_bits);
    for (int s : table.shift_schedule) {
        FixedPoint alpha = FixedPoint::from_real(elementary_angle(mode, s), frac_bits, word_bits);
        if (alpha.raw() <= 0)
            throw std::domain_error("build_angle_table: elementary angle for shift " +
                                    std::to_string(s) + " underflows " +
                                    std::to_string(frac_bits) + " fractional bits");
        sum = sum + alpha;
        table.alphas.push_back(alpha);
    }
    table.z_domain = sum;

    const double k = scale_factor(mode, table.shift_schedule);
    table.scale = FixedPoint::from_real(k, frac_bits, word_bits);
    table.scale_inv = FixedPoint::from_real(1.0 / k, frac_bits, word_bits);
    return table;
}

CordicTrace cordic_rotate(const AngleTable& table, FixedPoint x0, FixedPoint y0, FixedPoint z0,
                          bool record_history) {
    check_operand(table, x0, "x0");
    check_operand(table, y0, "y0");
    check_operand(table, z0, "z0");
    check_z_domain(table, z0);

    CordicTrace trace;
    trace.deltas.reserve(table.total_iterations());
    if (record_history) {
        trace.history.emplace();
        trace.history->reserve(table.total_iterations() + 1);
        trace.history->push_back({x0, y0, z0});
    }

    FixedPoint x = x0, y = y0, z = z0;
    run_schedule(table, x, y, z,
                 [&](std::size_t, std::int8_t delta, FixedPoint xi, FixedPoint yi, FixedPoint zi) {
                     trace.deltas.push_back(delta);
                     if (trace.history) trace.history->push_back({xi, yi, zi});
                 });
    trace.x = x;
    trace.y = y;
    trace.z = z;
    return trace;
}

SinCos sin_cos(const AngleTable& table, double theta) {
    if (table.mode != CordicMode::Circular)
        throw std::invalid_argument("sin_cos: table mode must be circular");
    auto [s, c] = rotate_unit(table, theta);
    return {s, c};
}

SinCos sin_cos(double theta, int iterations, int frac_bits, int word_bits) {
    return sin_cos(build_angle_table(CordicMode::Circular, iterations, RepeatSchedule::Standard,
                                     frac_bits, word_bits),
                   theta);
}

SinhCosh sinh_cosh(const AngleTable& table, double theta) {
    if (table.mode != CordicMode::Hyperbolic)
        throw std::invalid_argument("sinh_cosh: table mode must be hyperbolic");
    auto [s, c] = rotate_unit(table, theta);
    return {s, c};
}

SinhCosh sinh_cosh(double theta, int iterations, RepeatSchedule repeats, int frac_bits,
                   int word_bits) {
    return sinh_cosh(build_angle_table(CordicMode::Hyperbolic, iterations, repeats, frac_bits,
                                       word_bits),
                     theta);
}

void write_angle_table_csv(const AngleTable& table, std::ostream& os) {
    os << "shift,alpha_radians,alpha_degrees\n";
    char row[96];
    for (std::size_t i = 0; i < table.shift_schedule.size(); ++i) {
        const double rad = table.alphas[i].to_real();
        const double deg = rad * 180.0 / std::numbers::pi;
        std::snprintf(row, sizeof row, "%d,%.17g,%.17g\n", table.shift_schedule[i], rad, deg);
        os << row;
    }
}

}  // namespace cordiceq
