#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cordiceq/fixed_point.hpp"

namespace cordiceq {

/// Coordinate system of the rotation: m = +1 (circular), 0 (linear),
/// -1 (hyperbolic).
enum class CordicMode { Circular, Linear, Hyperbolic };

constexpr int mode_m(CordicMode mode) {
    switch (mode) {
        case CordicMode::Circular: return 1;
        case CordicMode::Linear: return 0;
        case CordicMode::Hyperbolic: return -1;
    }
    return 0;
}

/// Which hyperbolic shifts get a second pass. Hyperbolic elementary angles
/// shrink faster than half per step, so selected iterations must run twice
/// for the angle decomposition to converge.
///   Standard: repeat shifts 4, 13, 40.
///   Paper:    repeat shifts 5, 7, 8, 13, 15, 17, 19, 20, 21, 22, 24.
enum class RepeatSchedule { Standard, Paper };

/// Elementary rotation angle in radians for one shift amount:
/// arctan(2^-shift), 2^-shift, or arctanh(2^-shift) by mode.
/// Hyperbolic requires shift >= 1 (arctanh(1) diverges).
double elementary_angle(CordicMode mode, int shift);

/// Per-mode lookup table: the expanded shift schedule (repeats included),
/// the elementary angles rounded into fixed point, and the magnitude scale
/// constant of the full schedule.
struct AngleTable {
    CordicMode mode = CordicMode::Circular;
    int iterations = 0;               ///< requested count; repeats add passes
    std::vector<int> shift_schedule;  ///< non-decreasing, one entry per pass
    std::vector<FixedPoint> alphas;   ///< same length as shift_schedule
    FixedPoint scale;      ///< K: product of cos(alpha) / cosh(alpha); 1 for linear
    FixedPoint scale_inv;  ///< 1/K
    FixedPoint z_domain;   ///< sum of alphas; rotations need |z0| <= z_domain

    std::size_t total_iterations() const { return shift_schedule.size(); }
    double domain_radians() const { return z_domain.to_real(); }
    int frac_bits() const { return scale.frac_bits(); }
    int word_bits() const { return scale.word_bits(); }
    FixedPoint zero() const { return FixedPoint::from_raw(0, frac_bits(), word_bits()); }
};

/// Builds the table for `iterations` elementary angles (1..64). Circular and
/// linear schedules use shifts 0..M-1; hyperbolic uses 1..M with the repeat
/// schedule's shifts passed twice. Throws std::out_of_range for a bad M and
/// std::domain_error when an angle underflows the fixed-point format (large
/// shifts need more fractional bits).
AngleTable build_angle_table(CordicMode mode, int iterations,
                             RepeatSchedule repeats = RepeatSchedule::Standard,
                             int frac_bits = FixedPoint::kDefaultFracBits,
                             int word_bits = FixedPoint::kDefaultWordBits);

/// Magnitude scale constant of a schedule: prod cos(arctan 2^-s) for
/// circular, prod cosh(arctanh 2^-s) for hyperbolic, exactly 1 for linear.
/// Pass the expanded schedule (repeats included). Depends only on mode and
/// schedule, so it is a machine constant of the configuration.
double scale_factor(CordicMode mode, std::span<const int> shift_schedule);

/// The expanded shift sequence that build_angle_table would use, without
/// building fixed-point state.
std::vector<int> expand_shift_schedule(CordicMode mode, int iterations, RepeatSchedule repeats);

/// Sum of the ideal (real-valued) elementary angles of a schedule: the
/// convergence domain bound in radians.
double schedule_domain(CordicMode mode, int iterations, RepeatSchedule repeats);

/// Full record of one rotation: final state, the +/-1 decision sequence,
/// and (optionally) every intermediate (x, y, z).
struct CordicTrace {
    FixedPoint x, y, z;
    std::vector<std::int8_t> deltas;
    std::optional<std::vector<std::array<FixedPoint, 3>>> history;  ///< length deltas.size() + 1

    std::size_t iterations_executed() const { return deltas.size(); }
};

/// Runs the table's full schedule in rotation mode: at each pass
/// delta = +1 if z >= 0 else -1, then
///   x' = x - m * delta * (y >> s),  y' = y + delta * (x >> s),
///   z' = z - delta * alpha.
/// Returns the raw, unscaled final state; the caller applies the scale
/// constant (or pre-loads it into x0). The angle accumulator must start
/// inside the convergence domain (|z0| <= table.z_domain), otherwise
/// std::domain_error. Inputs must leave headroom for the iteration growth,
/// or the checked arithmetic throws std::overflow_error: the vector norm
/// grows by at most 1/K ~ 1.647x (circular); per-component growth is below
/// prod(1 + 2^-s) < 2.5 (hyperbolic); |y| <= |y0| + 2|x0| and x is constant
/// (linear).
CordicTrace cordic_rotate(const AngleTable& table, FixedPoint x0, FixedPoint y0, FixedPoint z0,
                          bool record_history = false);

struct SinCos {
    double sin, cos;
};
struct SinhCosh {
    double sinh, cosh;
};

/// sin/cos of theta through the fixed-point rotation engine, scale constant
/// pre-loaded into x0. theta must lie inside the circular convergence domain
/// (sum of table angles, ~1.7433 rad for a full table).
SinCos sin_cos(const AngleTable& table, double theta);
SinCos sin_cos(double theta, int iterations, int frac_bits = FixedPoint::kDefaultFracBits,
               int word_bits = FixedPoint::kDefaultWordBits);

/// sinh/cosh via hyperbolic rotations (double passes included). Domain is
/// the sum of hyperbolic angles, ~1.1182 rad for the standard schedule.
SinhCosh sinh_cosh(const AngleTable& table, double theta);
SinhCosh sinh_cosh(double theta, int iterations, RepeatSchedule repeats = RepeatSchedule::Standard,
                   int frac_bits = FixedPoint::kDefaultFracBits,
                   int word_bits = FixedPoint::kDefaultWordBits);

/// CSV dump, header `shift,alpha_radians,alpha_degrees`, one row per pass.
void write_angle_table_csv(const AngleTable& table, std::ostream& os);

}  // namespace cordiceq
