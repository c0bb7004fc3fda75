#include "shiftlab/kernels.hpp"

#include "shiftlab/errors.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shiftlab::kernels {

namespace {
constexpr double kTau = 1e-9;
}

std::strong_ordering pow2_vs_rational(long long delta, const Rational& C) {
    const Int& num = boost::multiprecision::numerator(C);
    const Int& den = boost::multiprecision::denominator(C);
    long long floor_log2 = static_cast<long long>(boost::multiprecision::msb(num)) -
                           static_cast<long long>(boost::multiprecision::msb(den));
    // 2^(floor_log2 - 1) < C < 2^(floor_log2 + 1), so only a narrow band needs bigints.
    if (delta < floor_log2 - 1) return std::strong_ordering::less;
    if (delta > floor_log2 + 1) return std::strong_ordering::greater;
    Int lhs = den, rhs = num;
    if (delta >= 0) lhs <<= delta;
    else rhs <<= -delta;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {

// Count for one k from its prefix exponents; norms ||B^n e_k|| = 2^(e[k]-e[k-n]).
long long count_exact(const std::span<const long long> e, long long k, const Rational& C,
                      bool monotone) {
    long long ek = e[static_cast<size_t>(k)];
    if (monotone) {
        // e nondecreasing: ||B^n e_k|| nondecreasing in n; bisect the first hit.
        long long lo = 0, hi = k + 1;  // first n with norm >= C, or k+1
        while (lo < hi) {
            long long mid = lo + (hi - lo) / 2;
            if (pow2_vs_rational(ek - e[static_cast<size_t>(k - mid)], C) >= 0) hi = mid;
            else lo = mid + 1;
        }
        return k + 1 - lo;
    }
    long long count = 0;
    for (long long n = 0; n <= k; ++n)
        if (pow2_vs_rational(ek - e[static_cast<size_t>(k - n)], C) >= 0) ++count;
    return count;
}

long long count_approx(const std::span<const double> lp, long long k, const Rational& C, double err,
                       long long* borderline) {
    double lk = lp[static_cast<size_t>(k)];
    double lc = log2_approx(C);
    long long count = 0;
    for (long long n = 0; n <= k; ++n) {
        double diff = lk - lp[static_cast<size_t>(k - n)] - lc;
        if (std::abs(diff) <= err + kTau) {
            if (borderline) ++*borderline;
            // pessimistic for the certification: borderline does not count as a hit
        } else if (diff > 0) {
            ++count;
        }
    }
    return count;
}

}  // namespace

std::vector<long long> threshold_counts(const PrefixTable& table,
                                        const std::function<Rational(long long)>& threshold,
                                        long long k_lo, long long k_hi, Exec exec,
                                        long long* borderline) {
    if (k_lo < 0 || k_hi > table.horizon() + 1) throw HorizonError("count range beyond table horizon");
    if (k_hi <= k_lo) return {};
    const long long n_k = k_hi - k_lo;
    std::vector<long long> counts(static_cast<size_t>(n_k));
    const bool monotone = table.spec().min_value() >= 1;

    if (table.exact_mode()) {
        std::vector<long long> e(static_cast<size_t>(k_hi));
        table.fill_prefix_exponents(0, k_hi, e.data());
        std::span<const long long> ev(e);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
#endif
        for (long long k = k_lo; k < k_hi; ++k)
            counts[static_cast<size_t>(k - k_lo)] = count_exact(ev, k, threshold(k), monotone);
    } else {
        std::vector<double> lp(static_cast<size_t>(k_hi));
        table.fill_prefix_log2(0, k_hi, lp.data());
        std::span<const double> lv(lp);
        double err = 2.0 * table.prefix(k_hi - 1).log2_error() + 1e-12;
        long long total_borderline = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : total_borderline) if (exec == Exec::Parallel)
#endif
        for (long long k = k_lo; k < k_hi; ++k) {
            long long local = 0;
            counts[static_cast<size_t>(k - k_lo)] = count_approx(lv, k, threshold(k), err, &local);
            total_borderline += local;
        }
        if (borderline) *borderline += total_borderline;
    }
    return counts;
}

std::vector<long long> threshold_counts_reference(const WeightSpec& spec,
                                                  const std::function<Rational(long long)>& threshold,
                                                  long long k_lo, long long k_hi) {
    if (k_hi <= k_lo) return {};
    std::vector<long long> counts;
    counts.reserve(static_cast<size_t>(k_hi - k_lo));
    for (long long k = k_lo; k < k_hi; ++k) {
        Rational c = threshold(k);
        Rational product(1);  // ||B^n e_k|| built up one factor at a time
        long long count = product >= c ? 1 : 0;
        for (long long n = 1; n <= k; ++n) {
            product *= spec.weight_at(k - n + 1);
            if (product >= c) ++count;
        }
        counts.push_back(count);
    }
    return counts;
}

std::vector<IntSet> g_set_batch(const PrefixTable& table, std::span<const long long> ks,
                                const Rational& C, BorderlinePolicy policy, Exec exec,
                                long long* borderline) {
    std::vector<IntSet> sets(ks.size());
    long long total_borderline = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : total_borderline) if (exec == Exec::Parallel)
#endif
    for (size_t i = 0; i < ks.size(); ++i) {
        long long local = 0;
        sets[i] = g_set(table, ks[i], C, policy, &local);
        total_borderline += local;
    }
    if (borderline) *borderline += total_borderline;
    return sets;
}

}  // namespace shiftlab::kernels
