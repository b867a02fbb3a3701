#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cordiceq {

/// Two's-complement fixed-point number: real value = raw * 2^-frac_bits,
/// stored in the low `word_bits` bits of a signed 64-bit integer.
///
/// This is the software stand-in for a shift-add datapath, so the semantics
/// are deliberately strict:
///   - right shifts are arithmetic (sign-preserving), like a barrel shifter;
///   - add/sub results that do not fit `word_bits` throw std::overflow_error
///     instead of wrapping or saturating;
///   - values of different formats never mix silently.
class FixedPoint {
public:
    static constexpr int kDefaultFracBits = 48;
    static constexpr int kDefaultWordBits = 64;

    constexpr FixedPoint() = default;

    static FixedPoint from_raw(std::int64_t raw, int frac_bits = kDefaultFracBits,
                               int word_bits = kDefaultWordBits);

    /// Round-to-nearest conversion; throws std::out_of_range when `value`
    /// does not fit the representable range [-2^(W-1-F), 2^(W-1-F) - 2^-F].
    static FixedPoint from_real(double value, int frac_bits = kDefaultFracBits,
                                int word_bits = kDefaultWordBits);

    std::int64_t raw() const { return raw_; }
    int frac_bits() const { return frac_bits_; }
    int word_bits() const { return word_bits_; }

    double to_real() const { return std::ldexp(static_cast<double>(raw_), -frac_bits_); }

    /// Largest / smallest representable real value of this format.
    double max_real() const { return std::ldexp(static_cast<double>(max_raw(word_bits_)), -frac_bits_); }
    double min_real() const { return std::ldexp(static_cast<double>(min_raw(word_bits_)), -frac_bits_); }

    FixedPoint operator+(FixedPoint rhs) const {
        check_same_format(rhs);
        std::int64_t sum = 0;
        if (__builtin_add_overflow(raw_, rhs.raw_, &sum)) throw_overflow();
        return with_raw_checked(sum);
    }

    FixedPoint operator-(FixedPoint rhs) const {
        check_same_format(rhs);
        std::int64_t diff = 0;
        if (__builtin_sub_overflow(raw_, rhs.raw_, &diff)) throw_overflow();
        return with_raw_checked(diff);
    }

    FixedPoint operator-() const {
        if (raw_ == INT64_MIN) throw_overflow();
        return with_raw_checked(-raw_);
    }

    /// Arithmetic shift right by `shift` bits, shift >= 0. Shifting by the
    /// word width or more leaves only sign bits (0 or -1 raw).
    FixedPoint asr(int shift) const {
        if (shift < 0) throw std::invalid_argument("FixedPoint::asr: negative shift");
        FixedPoint r = *this;
        r.raw_ >>= shift < 63 ? shift : 63;
        return r;
    }

    bool operator==(const FixedPoint&) const = default;
    bool is_negative() const { return raw_ < 0; }

    static constexpr std::int64_t min_raw(int word_bits) {
        return word_bits == 64 ? INT64_MIN : -(std::int64_t{1} << (word_bits - 1));
    }
    static constexpr std::int64_t max_raw(int word_bits) {
        return word_bits == 64 ? INT64_MAX : (std::int64_t{1} << (word_bits - 1)) - 1;
    }

private:
    constexpr FixedPoint(std::int64_t raw, int f, int w) : raw_(raw), frac_bits_(f), word_bits_(w) {}

    void check_same_format(const FixedPoint& rhs) const {
        if (frac_bits_ != rhs.frac_bits_ || word_bits_ != rhs.word_bits_) throw_format_mismatch();
    }

    FixedPoint with_raw_checked(std::int64_t raw) const {
        if (word_bits_ < 64 && (raw < min_raw(word_bits_) || raw > max_raw(word_bits_))) throw_overflow();
        FixedPoint r = *this;
        r.raw_ = raw;
        return r;
    }

    [[noreturn]] static void throw_overflow();
    [[noreturn]] static void throw_format_mismatch();

    std::int64_t raw_ = 0;
    int frac_bits_ = kDefaultFracBits;
    int word_bits_ = kDefaultWordBits;
};

inline FixedPoint to_fixed(double value, int frac_bits = FixedPoint::kDefaultFracBits,
                           int word_bits = FixedPoint::kDefaultWordBits) {
    return FixedPoint::from_real(value, frac_bits, word_bits);
}

inline double from_fixed(FixedPoint fp) { return fp.to_real(); }

}  // namespace cordiceq
