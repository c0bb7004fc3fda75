#include "shiftlab/magnitude.hpp"

#include "shiftlab/errors.hpp"

#include <cmath>
#include <limits>

namespace shiftlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 2.220446049250313e-16;  // 2^-52
}  // namespace

Magnitude Magnitude::zero() {
    Magnitude m;
    m.kind_ = Kind::Zero;
    m.mantissa_ = 0;
    return m;
}

Magnitude Magnitude::one() { return Magnitude(); }

Magnitude Magnitude::exact_pow2(long long exponent) {
    Magnitude m;
    m.kind_ = Kind::Exact;
    m.mantissa_ = 1;
    m.exponent_ = exponent;
    return m;
}

Magnitude Magnitude::exact(Rational positive_value) {
    if (positive_value <= 0) throw DomainError("Magnitude::exact requires a positive value");
    Magnitude m;
    m.kind_ = Kind::Exact;
    m.mantissa_ = std::move(positive_value);
    m.exponent_ = 0;
    m.normalize();
    return m;
}

Magnitude Magnitude::approx(double log2_value, double log2_error) {
    Magnitude m;
    m.kind_ = Kind::Approx;
    m.log2_ = log2_value;
    m.err_ = log2_error;
    return m;
}

void Magnitude::normalize() {
    Int num = boost::multiprecision::numerator(mantissa_);
    Int den = boost::multiprecision::denominator(mantissa_);
    if (num != 0) {
        auto nz = boost::multiprecision::lsb(num);
        if (nz > 0) {
            num >>= nz;
            exponent_ += static_cast<long long>(nz);
        }
    }
    auto dz = boost::multiprecision::lsb(den);
    if (dz > 0) {
        den >>= dz;
        exponent_ -= static_cast<long long>(dz);
    }
    mantissa_ = Rational(num, den);
}

Rational Magnitude::exact_value() const {
    if (kind_ == Kind::Zero) return Rational(0);
    if (kind_ != Kind::Exact) throw DomainError("magnitude is not exact");
    if (exponent_ >= 0) return mantissa_ * Rational(pow_int(Int(2), exponent_));
    return mantissa_ / Rational(pow_int(Int(2), -exponent_));
}

long long Magnitude::exact_exponent() const {
    if (!is_pow2()) throw DomainError("magnitude is not an exact power of two");
    return exponent_;
}

double Magnitude::log2() const {
    switch (kind_) {
        case Kind::Zero: return -kInf;
        case Kind::Exact: return static_cast<double>(exponent_) + log2_approx(mantissa_);
        case Kind::Approx: return log2_;
    }
    return 0;
}

double Magnitude::log2_error() const { return kind_ == Kind::Approx ? err_ : 0.0; }

double Magnitude::to_double() const {
    if (kind_ == Kind::Zero) return 0.0;
    if (kind_ == Kind::Exact) {
        double l = log2();
        if (l > 1020 || l < -1020) return std::exp2(l);  // saturates honestly
        return shiftlab::to_double(exact_value());
    }
    return std::exp2(log2_);
}

Magnitude Magnitude::operator*(const Magnitude& rhs) const {
    if (kind_ == Kind::Zero || rhs.kind_ == Kind::Zero) return zero();
    if (kind_ == Kind::Exact && rhs.kind_ == Kind::Exact) {
        Magnitude m;
        m.kind_ = Kind::Exact;
        m.mantissa_ = mantissa_ * rhs.mantissa_;
        m.exponent_ = exponent_ + rhs.exponent_;
        m.normalize();
        return m;
    }
    return approx(log2() + rhs.log2(), log2_error() + rhs.log2_error() + kEps);
}

Magnitude Magnitude::operator/(const Magnitude& rhs) const {
    if (rhs.kind_ == Kind::Zero) throw DomainError("division by zero magnitude");
    if (kind_ == Kind::Zero) return zero();
    if (kind_ == Kind::Exact && rhs.kind_ == Kind::Exact) {
        Magnitude m;
        m.kind_ = Kind::Exact;
        m.mantissa_ = mantissa_ / rhs.mantissa_;
        m.exponent_ = exponent_ - rhs.exponent_;
        m.normalize();
        return m;
    }
    return approx(log2() - rhs.log2(), log2_error() + rhs.log2_error() + kEps);
}

Magnitude Magnitude::pow(double p) const {
    if (kind_ == Kind::Zero) {
        if (p <= 0) throw DomainError("zero magnitude to a non-positive power");
        return zero();
    }
    if (kind_ == Kind::Exact && is_integer(p) && p >= 0 && p < 1e6) {
        auto e = static_cast<long long>(p);
        Magnitude m;
        m.kind_ = Kind::Exact;
        m.mantissa_ = pow_rational(mantissa_, e);
        m.exponent_ = exponent_ * e;
        m.normalize();
        return m;
    }
    double l = log2();
    return approx(l * p, log2_error() * std::abs(p) + kEps * std::abs(l * p) + kEps);
}

Magnitude::Comparison Magnitude::compare(const Rational& threshold, double tau) const {
    if (threshold <= 0) throw DomainError("threshold must be positive");
    if (kind_ == Kind::Zero) return {std::strong_ordering::less, false};
    if (kind_ == Kind::Exact) {
        // mantissa * 2^e  vs  num/den  ==  mantissa_num * den * 2^e  vs  num * mantissa_den
        Int lhs = boost::multiprecision::numerator(mantissa_) * boost::multiprecision::denominator(threshold);
        Int rhs = boost::multiprecision::numerator(threshold) * boost::multiprecision::denominator(mantissa_);
        if (exponent_ >= 0) lhs <<= exponent_;
        else rhs <<= -exponent_;
        if (lhs < rhs) return {std::strong_ordering::less, false};
        if (lhs > rhs) return {std::strong_ordering::greater, false};
        return {std::strong_ordering::equal, false};
    }
    double diff = log2_ - log2_approx(threshold);
    bool borderline = std::abs(diff) <= err_ + tau;
    if (diff < 0) return {std::strong_ordering::less, borderline};
    if (diff > 0) return {std::strong_ordering::greater, borderline};
    return {std::strong_ordering::equal, true};
}

}  // namespace shiftlab
