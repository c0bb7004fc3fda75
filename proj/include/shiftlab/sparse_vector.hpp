#pragma once

#include "shiftlab/prefix_table.hpp"
#include "shiftlab/rational.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace shiftlab {

// Finitely supported sequence with exact rational coefficients; entries are
// sorted by index and never zero.
class SparseVector {
  public:
    using Entry = std::pair<long long, Rational>;

    SparseVector() = default;
    static SparseVector basis(long long k, Rational coeff = Rational(1));
    static SparseVector from_entries(std::vector<Entry> entries);

    bool is_zero() const { return entries_.empty(); }
    size_t support_size() const { return entries_.size(); }
    long long min_index() const;
    long long max_index() const;
    Rational coeff(long long index) const;  // 0 when absent

    const std::vector<Entry>& entries() const { return entries_; }

    SparseVector plus(const SparseVector& rhs) const;
    SparseVector scaled(const Rational& factor) const;

    bool operator==(const SparseVector& rhs) const { return entries_ == rhs.entries_; }

    nlohmann::ordered_json to_json() const;  // {"index": "coefficient", ...}
    static SparseVector from_json(const nlohmann::json& j);

  private:
    std::vector<Entry> entries_;
};

// (B_w^n x)_j = (prod_{v=j+1}^{j+n} w_v) x_{j+n}; exact rationals.
SparseVector shift_apply(const PrefixTable& table, const SparseVector& x, long long n);

// S^n with S e_k = e_{k+1} / w_{k+1}; shift_apply(right_inverse_apply(x, n), n) == x.
SparseVector right_inverse_apply(const PrefixTable& table, const SparseVector& x, long long n);

// Exact sum |x_j|^p for a positive integer p.
Rational norm_p_pow(const SparseVector& x, long long p);

// (sum |x_j|^p)^(1/p); DomainError for p < 1.
double norm_p(const SparseVector& x, double p);

}  // namespace shiftlab
