#include "shiftlab/prefix_table.hpp"

#include "shiftlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab {

namespace {
constexpr double kEps = 2.220446049250313e-16;
}

PrefixTable::PrefixTable(WeightSpec spec, long long horizon, long long stride)
    : spec_(std::move(spec)), horizon_(horizon), stride_(std::max<long long>(1, stride)),
      exact_(spec_.power_of_two()) {
    if (horizon_ < 0) throw DomainError("horizon must be >= 0");

    // Enumerate runs across [1, horizon] and accumulate cumulative products at
    // run starts and at checkpoints.
    long long k = 1;
    long long cum_exp = 0;
    double cum_log2 = 0.0, cum_err = 0.0;
    cp_exp_.assign(1, 0);
    cp_log2_.assign(1, 0.0);
    cp_err_.assign(1, 0.0);
    long long next_cp = stride_;

    while (k <= horizon_) {
        RunView run = spec_.run_containing(k);
        long long run_end = run.end ? std::min(*run.end, horizon_ + 1) : horizon_ + 1;

        run_starts_.emplace_back(k, run.value);
        run_cum_exp_.push_back(cum_exp);
        run_cum_log2_.push_back(cum_log2);
        run_cum_err_.push_back(cum_err);
        long long vexp = 0;
        double vlog2 = log2_approx(run.value);
        if (exact_) vexp = *exact_pow2_exponent(run.value);
        run_value_exp_.push_back(vexp);
        run_value_log2_.push_back(vlog2);

        long long count = run_end - k;
        while (next_cp < run_end) {
            long long within = next_cp - k + 1;
            cp_exp_.push_back(cum_exp + vexp * within);
            cp_log2_.push_back(cum_log2 + vlog2 * static_cast<double>(within));
            cp_err_.push_back(cum_err + (std::abs(vlog2) + 1.0) * kEps * static_cast<double>(within));
            next_cp += stride_;
        }
        cum_exp += vexp * count;
        cum_log2 += vlog2 * static_cast<double>(count);
        cum_err += (std::abs(vlog2) + 1.0) * kEps * static_cast<double>(count);
        k = run_end;
    }
}

void PrefixTable::require_in_horizon(long long k) const {
    if (k < 0) throw DomainError("prefix index must be >= 0");
    if (k > horizon_)
        throw HorizonError("index " + std::to_string(k) + " beyond table horizon " + std::to_string(horizon_));
}

long long PrefixTable::exponent_unchecked(long long k) const {
    if (k == 0) return 0;
    auto it = std::upper_bound(run_starts_.begin(), run_starts_.end(), k,
                               [](long long v, const auto& r) { return v < r.first; });
    size_t idx = static_cast<size_t>(it - run_starts_.begin()) - 1;
    return run_cum_exp_[idx] + run_value_exp_[idx] * (k - run_starts_[idx].first + 1);
}

double PrefixTable::log2_unchecked(long long k) const {
    if (k == 0) return 0.0;
    auto it = std::upper_bound(run_starts_.begin(), run_starts_.end(), k,
                               [](long long v, const auto& r) { return v < r.first; });
    size_t idx = static_cast<size_t>(it - run_starts_.begin()) - 1;
    return run_cum_log2_[idx] + run_value_log2_[idx] * static_cast<double>(k - run_starts_[idx].first + 1);
}

Magnitude PrefixTable::prefix(long long k) const {
    require_in_horizon(k);
    if (exact_) return Magnitude::exact_pow2(exponent_unchecked(k));
    auto it = std::upper_bound(run_starts_.begin(), run_starts_.end(), std::max<long long>(k, 1),
                               [](long long v, const auto& r) { return v < r.first; });
    size_t idx = k == 0 ? 0 : static_cast<size_t>(it - run_starts_.begin()) - 1;
    double err = run_starts_.empty() ? 0.0 : run_cum_err_[idx] + kEps * static_cast<double>(k);
    return Magnitude::approx(log2_unchecked(k), err);
}

Magnitude PrefixTable::basis_orbit_norm(long long n, long long k) const {
    if (n < 0) throw DomainError("iterate count must be >= 0");
    require_in_horizon(k);
    if (n > k) return Magnitude::zero();
    return prefix(k) / prefix(k - n);
}

long long PrefixTable::prefix_exponent(long long k) const {
    if (!exact_) throw DomainError("prefix_exponent requires exact (power-of-two) mode");
    require_in_horizon(k);
    return exponent_unchecked(k);
}

void PrefixTable::fill_prefix_exponents(long long lo, long long hi, long long* out) const {
    if (!exact_) throw DomainError("fill_prefix_exponents requires exact mode");
    if (lo < 0 || hi > horizon_ + 1) throw HorizonError("fill range beyond horizon");
    for (long long k = lo; k < hi; ++k) out[k - lo] = exponent_unchecked(k);
}

void PrefixTable::fill_prefix_log2(long long lo, long long hi, double* out) const {
    if (lo < 0 || hi > horizon_ + 1) throw HorizonError("fill range beyond horizon");
    for (long long k = lo; k < hi; ++k)
        out[k - lo] = exact_ ? static_cast<double>(exponent_unchecked(k)) : log2_unchecked(k);
}

Rational PrefixTable::window_product(long long j, long long n) const {
    if (j < 0 || n < 0) throw DomainError("window product needs j, n >= 0");
    require_in_horizon(j + n);
    if (n == 0) return Rational(1);
    if (exact_) {
        long long diff = exponent_unchecked(j + n) - exponent_unchecked(j);
        return pow_rational(Rational(2), diff);
    }
    Rational product(1);
    long long k = j + 1;
    while (k <= j + n) {
        RunView run = spec_.run_containing(k);
        long long run_end = run.end ? std::min(*run.end, j + n + 1) : j + n + 1;
        product *= pow_rational(run.value, run_end - k);
        k = run_end;
    }
    return product;
}

Magnitude PrefixTable::window_magnitude(long long j, long long n) const {
    if (j < 0 || n < 0) throw DomainError("window product needs j, n >= 0");
    require_in_horizon(j + n);
    return prefix(j + n) / prefix(j);
}

}  // namespace shiftlab
