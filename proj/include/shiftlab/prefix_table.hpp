#pragma once

#include "shiftlab/magnitude.hpp"
#include "shiftlab/weights.hpp"

#include <memory>
#include <vector>

namespace shiftlab {

// Prefix products P(k) = prod_{v=1..k} w_v over a fixed horizon.
//
// Exact mode (power-of-two weights) stores integer exponents; otherwise a
// compensated log2 accumulation with a tracked error bound. Checkpoints every
// `stride` indices keep memory at O(K/stride); a run table (when the spec's
// run structure is compact) makes point queries O(log #runs).
//
// Immutable after construction; safe to share across threads.
class PrefixTable {
  public:
    PrefixTable(WeightSpec spec, long long horizon, long long stride = 1024);

    const WeightSpec& spec() const { return spec_; }
    long long horizon() const { return horizon_; }
    bool exact_mode() const { return exact_; }

    // P(k); P(0) = 1. HorizonError beyond the horizon.
    Magnitude prefix(long long k) const;

    // ||B_w^n e_k|| = P(k)/P(k-n) for n <= k, exact zero for n > k.
    Magnitude basis_orbit_norm(long long n, long long k) const;

    // Exact mode only: log2 P(k) as an integer.
    long long prefix_exponent(long long k) const;

    // Bulk accessors for kernels; fill out[i] for k = lo + i, lo <= k < hi.
    void fill_prefix_exponents(long long lo, long long hi, long long* out) const;
    void fill_prefix_log2(long long lo, long long hi, double* out) const;

    // Exact rational window product prod_{v=j+1}^{j+n} w_v. Walks runs, so it
    // is cheap whenever the spec's run structure is compact.
    Rational window_product(long long j, long long n) const;
    Magnitude window_magnitude(long long j, long long n) const;

    // Run boundaries restricted to [1, horizon]: pairs (start, value), the
    // value holding on [start, next start). First entry has start 1.
    const std::vector<std::pair<long long, Rational>>& run_boundaries() const { return run_starts_; }

    // Checkpoint view (k = i * stride), kept for consistency cross-checks.
    long long stride() const { return stride_; }
    size_t checkpoint_count() const { return cp_exp_.size(); }
    long long checkpoint_exponent(size_t i) const { return cp_exp_.at(i); }
    double checkpoint_log2(size_t i) const { return cp_log2_.at(i); }

  private:
    void require_in_horizon(long long k) const;
    long long exponent_unchecked(long long k) const;
    double log2_unchecked(long long k) const;

    WeightSpec spec_;
    long long horizon_ = 0;
    long long stride_ = 1024;
    bool exact_ = false;

    std::vector<std::pair<long long, Rational>> run_starts_;
    std::vector<long long> run_value_exp_;    // exact mode: exponent of each run value
    std::vector<double> run_value_log2_;
    std::vector<long long> run_cum_exp_;      // exact: log2 P(start-1) per run
    std::vector<double> run_cum_log2_;
    std::vector<double> run_cum_err_;

    std::vector<long long> cp_exp_;           // checkpoints at 0, stride, 2*stride, ...
    std::vector<double> cp_log2_;
    std::vector<double> cp_err_;
};

}  // namespace shiftlab
