#pragma once

#include <compare>
#include <numeric>
#include <string>

#include "ksplit/common.hpp"

namespace ksplit {

/// Nonnegative rational extended with +infinity, stored canonically
/// (reduced, with denominator 0 encoding infinity as 1/0).
///
/// Comparisons cross-multiply in 128-bit arithmetic, which is exact for any
/// operands whose numerator and denominator fit in 64 bits. Instance
/// validation bounds all subset sums so that this always holds.
class ExtendedRational {
public:
    constexpr ExtendedRational() = default;

    ExtendedRational(u64 num, u64 den) : num_(num), den_(den) {
        if (den_ == 0) {
            if (num_ == 0) throw ValidationError("0/0 is not a valid extended rational");
            num_ = 1;  // canonical infinity
        } else {
            u64 g = std::gcd(num_, den_);
            num_ /= g;
            den_ /= g;
        }
    }

    static ExtendedRational infinity() { return ExtendedRational(1, 0); }
    static ExtendedRational one() { return ExtendedRational(1, 1); }

    bool is_infinite() const { return den_ == 0; }
    u64 num() const { return num_; }
    u64 den() const { return den_; }

    double approx() const {
        if (is_infinite()) return std::numeric_limits<double>::infinity();
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        if (is_infinite()) return "inf";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.is_infinite() || b.is_infinite()) {
            if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
            return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        u128 lhs = static_cast<u128>(a.num_) * b.den_;
        u128 rhs = static_cast<u128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        return (a <=> b) == 0;
    }

private:
    u64 num_ = 0;
    u64 den_ = 1;
};

/// Exact fraction in (0,1) used for error parameters.
struct Fraction {
    u64 num = 0;
    u64 den = 1;

    Fraction() = default;
    Fraction(u64 n, u64 d) : num(n), den(d) {
        if (den == 0) throw ValidationError("fraction denominator must be nonzero");
        u64 g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    bool in_unit_interval() const { return num > 0 && num < den; }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Fraction&, const Fraction&) = default;
};

inline void require_error_parameter(const Fraction& eps) {
    if (!eps.in_unit_interval())
        throw ValidationError("error parameter must lie strictly between 0 and 1");
    // Keeps every scaled comparison inside 192 bits, with room for the /3
    // the windowed scheme applies.
    if (eps.den > 1'000'000'000'000'000'000ULL)
        throw ValidationError("error parameter denominator too large (max 1e18)");
}

/// Exact test of achieved <= (scale_num/scale_den) * reference.
/// scale_num/scale_den must each fit in 128 bits; products are compared in
/// 192-bit arithmetic so sums up to 2^64 and scales up to 2^128 are exact.
inline bool ratio_within(const ExtendedRational& achieved, u128 scale_num, u128 scale_den,
                         const ExtendedRational& reference) {
    if (reference.is_infinite()) return true;
    if (achieved.is_infinite()) return false;
    // achieved.num * (scale_den * ref.den) <= (scale_num * ref.num) * achieved.den
    constexpr u128 kMax = ~static_cast<u128>(0);
    KSPLIT_CHECK(reference.den() == 0 || scale_den <= kMax / reference.den(),
                 "ratio_within: scale denominator overflow");
    KSPLIT_CHECK(reference.num() == 0 || scale_num <= kMax / reference.num(),
                 "ratio_within: scale numerator overflow");
    u128 lhs_hi = scale_den * reference.den();
    u128 rhs_hi = scale_num * reference.num();
    return detail::mul_192(lhs_hi, achieved.num()) <= detail::mul_192(rhs_hi, achieved.den());
}

/// achieved <= (1 + eps) * reference, compared exactly.
inline bool within_factor(const ExtendedRational& achieved, const Fraction& eps,
                          const ExtendedRational& reference) {
    return ratio_within(achieved, static_cast<u128>(eps.num) + eps.den, eps.den, reference);
}

}  // namespace ksplit
