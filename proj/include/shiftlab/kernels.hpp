#pragma once

#include "shiftlab/density.hpp"
#include "shiftlab/prefix_table.hpp"

#include <compare>
#include <functional>
#include <span>
#include <vector>

namespace shiftlab::kernels {

enum class Exec { Serial, Parallel };

// Exact comparison of 2^delta against a positive rational, cheap except when
// delta equals floor(log2 C).
std::strong_ordering pow2_vs_rational(long long delta, const Rational& C);

// counts[k - k_lo] = #{0 <= n <= k : ||B_w^n e_k|| >= C(k)} for k in [k_lo, k_hi).
// Deterministic under either Exec; per-k results are index-addressed.
// Uses a monotone bisection when every weight is >= 1, a linear scan otherwise.
std::vector<long long> threshold_counts(const PrefixTable& table,
                                        const std::function<Rational(long long)>& threshold,
                                        long long k_lo, long long k_hi, Exec exec,
                                        long long* borderline = nullptr);

// Naive reference: per (k, n) products recomputed incrementally from the
// weights themselves, no prefix table. Kept for oracle tests and the bench.
std::vector<long long> threshold_counts_reference(const WeightSpec& spec,
                                                  const std::function<Rational(long long)>& threshold,
                                                  long long k_lo, long long k_hi);

// One G-set per k, evaluated independently (parallel across ks).
std::vector<IntSet> g_set_batch(const PrefixTable& table, std::span<const long long> ks,
                                const Rational& C, BorderlinePolicy policy, Exec exec,
                                long long* borderline = nullptr);

}  // namespace shiftlab::kernels
