#include "shiftlab/rational.hpp"

#include "shiftlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace shiftlab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw SpecParseError("empty numeric literal: '" + std::string(text) + "'");

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw SpecParseError("bad fraction literal: '" + std::string(text) + "'");
        Int d{std::string(den)};
        if (d == 0) throw SpecParseError("zero denominator: '" + std::string(text) + "'");
        value = Rational(Int{std::string(num)}, d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw SpecParseError("bad decimal literal: '" + std::string(text) + "'");
        Int scaled{std::string(whole) + std::string(frac)};
        value = Rational(scaled, pow_int(Int(10), static_cast<long long>(frac.size())));
    } else {
        if (!all_digits(s)) throw SpecParseError("bad integer literal: '" + std::string(text) + "'");
        value = Rational(Int{std::string(s)});
    }
    return negative ? Rational(-value) : value;
}

std::string rational_string(const Rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

std::string decimal_string(const Rational& value, int significant_digits) {
    if (value == 0) return "0";
    if (significant_digits < 1) significant_digits = 1;

    Int num = boost::multiprecision::numerator(value);
    Int den = boost::multiprecision::denominator(value);
    bool negative = num < 0;
    if (negative) num = -num;

    // Decimal exponent: value in [10^(e), 10^(e+1)).
    long long e = 0;
    Int lo = num, hi = den;
    while (lo >= hi * 10) { hi *= 10; ++e; }
    while (lo < hi) { lo *= 10; --e; }

    // significant_digits digits of num/den * 10^(-e), rounded half up.
    Int scaled_num = num * pow_int(Int(10), significant_digits - 1);
    Int scaled_den = den;
    if (e >= 0) scaled_den *= pow_int(Int(10), e);
    else scaled_num *= pow_int(Int(10), -e);
    Int digits = (scaled_num * 2 + scaled_den) / (scaled_den * 2);
    std::string ds = digits.str();
    if (static_cast<int>(ds.size()) > significant_digits) {  // rounding carried over
        ds.pop_back();
        ++e;
    }
    while (ds.size() > 1 && ds.back() == '0') ds.pop_back();

    std::string out = negative ? "-" : "";
    if (e >= 0 && e <= 17) {
        if (static_cast<long long>(ds.size()) <= e) ds.append(e + 1 - ds.size(), '0');
        out += ds.substr(0, e + 1);
        if (ds.size() > static_cast<size_t>(e + 1)) out += "." + ds.substr(e + 1);
    } else if (e < 0 && e >= -6) {
        out += "0.";
        out.append(-e - 1, '0');
        out += ds;
    } else {
        out += ds.substr(0, 1);
        if (ds.size() > 1) out += "." + ds.substr(1);
        out += "e" + std::to_string(e);
    }
    return out;
}

std::string decimal_string(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::optional<long long> exact_pow2_exponent(const Rational& value) {
    if (value <= 0) return std::nullopt;
    Int num = boost::multiprecision::numerator(value);
    Int den = boost::multiprecision::denominator(value);
    if (num == 1) {
        // 1 / 2^j ?
        if ((den & (den - 1)) == 0) return -static_cast<long long>(boost::multiprecision::lsb(den));
        return std::nullopt;
    }
    if (den == 1) {
        if ((num & (num - 1)) == 0) return static_cast<long long>(boost::multiprecision::lsb(num));
        return std::nullopt;
    }
    return std::nullopt;
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

double log2_approx(const Rational& value) {
    if (value <= 0) throw DomainError("log2 of non-positive rational");
    Int num = boost::multiprecision::numerator(value);
    Int den = boost::multiprecision::denominator(value);
    long long nb = static_cast<long long>(boost::multiprecision::msb(num));
    long long db = static_cast<long long>(boost::multiprecision::msb(den));
    // Shift both into double range before converting.
    double dn = (num >> std::max<long long>(0, nb - 52)).convert_to<double>();
    double dd = (den >> std::max<long long>(0, db - 52)).convert_to<double>();
    return std::log2(dn) - std::log2(dd) + static_cast<double>(std::max<long long>(0, nb - 52)) -
           static_cast<double>(std::max<long long>(0, db - 52));
}

bool is_integer(double p) {
    return std::isfinite(p) && p == std::floor(p);
}

Int pow_int(const Int& base, long long exp) {
    if (exp < 0) throw DomainError("negative exponent for integer power");
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

Rational pow_rational(const Rational& base, long long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0) {
        if (exp < 0) throw DomainError("zero to a negative power");
        return Rational(0);
    }
    Int num = boost::multiprecision::numerator(base);
    Int den = boost::multiprecision::denominator(base);
    long long a = exp >= 0 ? exp : -exp;
    Rational result(pow_int(num, a), pow_int(den, a));
    if (exp < 0) result = Rational(1) / result;
    return result;
}

long long isqrt64(long long n) {
    if (n < 0) throw DomainError("isqrt of negative");
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace shiftlab
