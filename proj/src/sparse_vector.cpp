#include "shiftlab/sparse_vector.hpp"

#include "shiftlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab {

SparseVector SparseVector::basis(long long k, Rational coeff) {
    if (k < 0) throw DomainError("basis index must be >= 0");
    SparseVector v;
    if (coeff != 0) v.entries_.emplace_back(k, std::move(coeff));
    return v;
}

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    for (auto& [idx, c] : entries) {
        if (idx < 0) throw DomainError("sparse vector index must be >= 0");
        if (c == 0) continue;
        if (!v.entries_.empty() && v.entries_.back().first == idx) {
            v.entries_.back().second += c;
            if (v.entries_.back().second == 0) v.entries_.pop_back();
        } else {
            v.entries_.emplace_back(idx, std::move(c));
        }
    }
    return v;
}

long long SparseVector::min_index() const {
    if (entries_.empty()) throw DomainError("zero vector has no support");
    return entries_.front().first;
}

long long SparseVector::max_index() const {
    if (entries_.empty()) throw DomainError("zero vector has no support");
    return entries_.back().first;
}

Rational SparseVector::coeff(long long index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, long long i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return Rational(0);
}

SparseVector SparseVector::plus(const SparseVector& rhs) const {
    std::vector<Entry> merged = entries_;
    merged.insert(merged.end(), rhs.entries_.begin(), rhs.entries_.end());
    return from_entries(std::move(merged));
}

SparseVector SparseVector::scaled(const Rational& factor) const {
    SparseVector v;
    if (factor == 0) return v;
    v.entries_ = entries_;
    for (auto& [idx, c] : v.entries_) c *= factor;
    return v;
}

nlohmann::ordered_json SparseVector::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [idx, c] : entries_) j[std::to_string(idx)] = rational_string(c);
    return j;
}

SparseVector SparseVector::from_json(const nlohmann::json& j) {
    std::vector<Entry> entries;
    for (auto it = j.begin(); it != j.end(); ++it)
        entries.emplace_back(std::stoll(it.key()), parse_rational(it.value().get<std::string>()));
    return from_entries(std::move(entries));
}

SparseVector shift_apply(const PrefixTable& table, const SparseVector& x, long long n) {
    if (n < 0) throw DomainError("iterate count must be >= 0");
    if (x.is_zero()) return x;
    if (x.max_index() > table.horizon())
        throw HorizonError("vector support beyond table horizon");
    if (n == 0) return x;
    std::vector<SparseVector::Entry> out;
    for (const auto& [idx, c] : x.entries()) {
        if (idx < n) continue;  // annihilated
        out.emplace_back(idx - n, c * table.window_product(idx - n, n));
    }
    return SparseVector::from_entries(std::move(out));
}

SparseVector right_inverse_apply(const PrefixTable& table, const SparseVector& x, long long n) {
    if (n < 0) throw DomainError("iterate count must be >= 0");
    if (x.is_zero()) return x;
    if (x.max_index() + n > table.horizon())
        throw HorizonError("right inverse would leave the table horizon");
    if (n == 0) return x;
    std::vector<SparseVector::Entry> out;
    for (const auto& [idx, c] : x.entries())
        out.emplace_back(idx + n, c / table.window_product(idx, n));
    return SparseVector::from_entries(std::move(out));
}

Rational norm_p_pow(const SparseVector& x, long long p) {
    if (p < 1) throw DomainError("p must be >= 1");
    Rational sum(0);
    for (const auto& [idx, c] : x.entries()) {
        Rational a = c < 0 ? Rational(-c) : c;
        sum += pow_rational(a, p);
    }
    return sum;
}

double norm_p(const SparseVector& x, double p) {
    if (!(p >= 1)) throw DomainError("p must be >= 1");
    double sum = 0.0;
    for (const auto& [idx, c] : x.entries()) {
        Rational a = c < 0 ? Rational(-c) : c;
        sum += std::exp2(p * log2_approx(a));
    }
    return std::pow(sum, 1.0 / p);
}

}  // namespace shiftlab
