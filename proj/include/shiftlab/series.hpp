#pragma once

#include "shiftlab/rational.hpp"

#include <optional>

namespace shiftlab::series {

// An upper bound on a non-negative quantity. `upper` is always usable;
// `exact` is set when the bound is an exact rational (integer p, rational
// ratios). Double bounds carry an upward rounding margin.
struct Bound {
    double upper = 0.0;
    std::optional<Rational> exact;

    static Bound from_exact(Rational value);
    static Bound from_double(double value);  // inflated by a few ulps

    Bound operator+(const Bound& rhs) const;
    Bound operator*(const Bound& rhs) const;
    Bound scaled(const Rational& factor) const;
};

// sum_{n >= N} q^n for 0 < q < 1, exactly: q^N / (1 - q).
Rational geometric_tail(const Rational& q, long long N);

// sum_{n >= N} (a*n + b) q^n for 0 < q < 1, exactly:
//   a * q^N (N(1-q) + q) / (1-q)^2  +  b * q^N / (1-q).
Rational arith_geometric_tail(const Rational& q, const Rational& a, const Rational& b, long long N);

// sum_{m >= m0} multiplicity * 2^{-p m}. Exact when p is a positive integer.
Bound pow2_tail(double p, long long m0, long long multiplicity);

// 2^{-p e} as a bound (exact for integer p >= 0 and any sign of e).
Bound pow2_term(double p, long long e);

// q^p as a bound for rational q > 0 (exact for integer p).
Bound rational_power(const Rational& q, double p);

}  // namespace shiftlab::series
