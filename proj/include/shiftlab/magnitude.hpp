#pragma once

#include "shiftlab/rational.hpp"

#include <compare>
#include <cstdint>

namespace shiftlab {

// A non-negative magnitude built for weight products that reach 2^(thousands).
//
// Two representations:
//   exact   -- mantissa * 2^exponent with a positive rational mantissa
//              (mantissa 1 for pure powers of two); comparisons are exact.
//   approx  -- base-2 logarithm in double precision plus an accumulated
//              error bound; comparisons within (error + tau) of a threshold
//              are flagged borderline.
// Zero is its own state (the annihilated orbit case).
class Magnitude {
  public:
    Magnitude() : kind_(Kind::Exact), mantissa_(1), exponent_(0) {}

    static Magnitude zero();
    static Magnitude one();
    static Magnitude exact_pow2(long long exponent);
    static Magnitude exact(Rational positive_value);
    static Magnitude approx(double log2_value, double log2_error);

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_exact() const { return kind_ == Kind::Exact; }

    // Exact accessors; DomainError when not in the matching state.
    Rational exact_value() const;
    long long exact_exponent() const;  // requires mantissa == 1
    bool is_pow2() const { return kind_ == Kind::Exact && mantissa_ == 1; }

    double log2() const;        // -inf for zero
    double log2_error() const;  // 0 in exact mode
    double to_double() const;   // may round to 0 or inf at extreme exponents

    Magnitude operator*(const Magnitude& rhs) const;
    Magnitude operator/(const Magnitude& rhs) const;  // rhs must be non-zero
    Magnitude pow(double p) const;  // stays exact for non-negative integer p

    struct Comparison {
        std::strong_ordering order;
        bool borderline;  // approx mode only: within error + tau of the threshold
    };
    // Compare against a positive rational threshold.
    Comparison compare(const Rational& threshold, double tau = 1e-9) const;

  private:
    enum class Kind { Zero, Exact, Approx };

    void normalize();  // pull powers of two out of the mantissa

    Kind kind_;
    Rational mantissa_;   // exact: positive, odd numerator and denominator
    long long exponent_ = 0;
    double log2_ = 0.0;   // approx
    double err_ = 0.0;    // approx: bound on |log2_ - true log2|
};

}  // namespace shiftlab
