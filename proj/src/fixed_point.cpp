#include "cordiceq/fixed_point.hpp"

namespace cordiceq {

namespace {

void validate_format(int frac_bits, int word_bits) {
    if (word_bits < 2 || word_bits > 64)
        throw std::invalid_argument("FixedPoint: word_bits must be in [2, 64], got " +
                                    std::to_string(word_bits));
    if (frac_bits < 0 || frac_bits >= word_bits)
        throw std::invalid_argument("FixedPoint: frac_bits must be in [0, word_bits), got " +
                                    std::to_string(frac_bits));
}

}  // namespace

FixedPoint FixedPoint::from_raw(std::int64_t raw, int frac_bits, int word_bits) {
    validate_format(frac_bits, word_bits);
    if (word_bits < 64 && (raw < min_raw(word_bits) || raw > max_raw(word_bits)))
        throw std::out_of_range("FixedPoint::from_raw: raw value does not fit " +
                                std::to_string(word_bits) + " bits");
    FixedPoint r;
    r.raw_ = raw;
    r.frac_bits_ = frac_bits;
    r.word_bits_ = word_bits;
    return r;
}

FixedPoint FixedPoint::from_real(double value, int frac_bits, int word_bits) {
    validate_format(frac_bits, word_bits);
    if (!std::isfinite(value))
        throw std::out_of_range("FixedPoint::from_real: value is not finite");
    // Round to nearest on the 2^-frac_bits grid; reject anything whose
    // rounded image falls outside the word.
    const long double scaled = ldexpl(static_cast<long double>(value), frac_bits);
    const long double lo = static_cast<long double>(min_raw(word_bits)) - 0.5L;
    const long double hi = static_cast<long double>(max_raw(word_bits)) + 0.5L;
    if (!(scaled > lo && scaled < hi))
        throw std::out_of_range("FixedPoint::from_real: value out of representable range");
    FixedPoint r;
    r.raw_ = static_cast<std::int64_t>(llroundl(scaled));
    r.frac_bits_ = frac_bits;
    r.word_bits_ = word_bits;
    return r;
}

void FixedPoint::throw_overflow() {
    throw std::overflow_error("FixedPoint: arithmetic overflow");
}

void FixedPoint::throw_format_mismatch() {
    throw std::invalid_argument("FixedPoint: operands have different formats");
}

}  // namespace cordiceq
