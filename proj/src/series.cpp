#include "shiftlab/series.hpp"

#include "shiftlab/errors.hpp"

#include <cmath>

namespace shiftlab::series {

namespace {
constexpr double kUp = 1.0 + 8 * 2.220446049250313e-16;
}

Bound Bound::from_exact(Rational value) {
    Bound b;
    b.upper = to_double(value) * kUp;
    b.exact = std::move(value);
    return b;
}

Bound Bound::from_double(double value) {
    Bound b;
    b.upper = value * kUp;
    return b;
}

Bound Bound::operator+(const Bound& rhs) const {
    Bound b;
    b.upper = (upper + rhs.upper) * kUp;
    if (exact && rhs.exact) b.exact = *exact + *rhs.exact;
    return b;
}

Bound Bound::operator*(const Bound& rhs) const {
    Bound b;
    b.upper = upper * rhs.upper * kUp;
    if (exact && rhs.exact) b.exact = *exact * *rhs.exact;
    return b;
}

Bound Bound::scaled(const Rational& factor) const {
    Bound b;
    b.upper = upper * to_double(factor) * kUp;
    if (exact) b.exact = *exact * factor;
    return b;
}

Rational geometric_tail(const Rational& q, long long N) {
    if (q <= 0 || q >= 1) throw DomainError("geometric_tail requires 0 < q < 1");
    return pow_rational(q, N) / (Rational(1) - q);
}

Rational arith_geometric_tail(const Rational& q, const Rational& a, const Rational& b, long long N) {
    if (q <= 0 || q >= 1) throw DomainError("arith_geometric_tail requires 0 < q < 1");
    Rational one_minus = Rational(1) - q;
    Rational qN = pow_rational(q, N);
    Rational term_a = a * qN * (Rational(N) * one_minus + q) / (one_minus * one_minus);
    Rational term_b = b * qN / one_minus;
    return term_a + term_b;
}

Bound pow2_tail(double p, long long m0, long long multiplicity) {
    if (!(p > 0)) throw DomainError("pow2_tail requires p > 0");
    if (is_integer(p) && p <= 62) {
        Rational q = pow_rational(Rational(1, 2), static_cast<long long>(p));
        return Bound::from_exact(Rational(multiplicity) * geometric_tail(q, m0));
    }
    double log2q = -p;
    double tail = std::exp2(log2q * static_cast<double>(m0)) / (1.0 - std::exp2(log2q));
    return Bound::from_double(static_cast<double>(multiplicity) * tail);
}

Bound pow2_term(double p, long long e) {
    if (is_integer(p) && std::abs(p) <= 62) {
        auto pi = static_cast<long long>(p);
        return Bound::from_exact(pow_rational(Rational(2), -(pi * e)));
    }
    return Bound::from_double(std::exp2(-p * static_cast<double>(e)));
}

Bound rational_power(const Rational& q, double p) {
    if (q <= 0) throw DomainError("rational_power requires q > 0");
    if (is_integer(p) && std::abs(p) <= 1e6) {
        return Bound::from_exact(pow_rational(q, static_cast<long long>(p)));
    }
    return Bound::from_double(std::exp2(log2_approx(q) * p));
}

}  // namespace shiftlab::series
