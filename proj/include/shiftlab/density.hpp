#pragma once

#include "shiftlab/intset.hpp"
#include "shiftlab/prefix_table.hpp"
#include "shiftlab/rational.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <vector>

namespace shiftlab {

// Resolution of threshold comparisons that land within tau of the threshold
// in approximate mode. The pessimistic direction depends on what the caller
// is trying to certify, so it is explicit.
enum class BorderlinePolicy { Exclude, Include };

// Finite-horizon counting profile of an integer set. The liminf/limsup are
// asymptotic, so what is reported is the exact minimum/maximum of
// r(N') = #(A ∩ [0,N']) / (N'+1) over the suffix window [window_start, N],
// together with sampled checkpoints. Extremes are located from the interval
// structure (r only dips right before an interval begins), not by scanning.
struct DensityProfile {
    long long horizon = 0;
    long long window_start = 0;

    struct Checkpoint {
        long long at = 0;
        long long count = 0;
        Rational ratio;
        Rational window_min;  // exact min of r over [max(1, at/100), at]
    };
    std::vector<Checkpoint> checkpoints;

    Rational min_ratio;  // exact over [window_start, horizon]
    long long min_at = 0;
    Rational max_ratio;
    long long max_at = 0;
    std::vector<std::string> warnings;

    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;  // checkpoint rows
};

// Exact extremes of r over [window_start, N]; window_start defaults to
// ceil(N/100) (initial transients discarded, window always reported).
DensityProfile density_profile(const IntSet& a, long long N, std::span<const long long> checkpoints,
                               std::optional<long long> window_start = {});

// Convenience: evenly spaced checkpoints.
std::vector<long long> default_checkpoints(long long N, int count = 10);

// G(k, C) = {n >= 0 : ||B_w^n e_k|| <= C}; the finite part comes from the
// orbit norms for n <= k, the tail [k+1, inf) from annihilation. Borderline
// comparisons are resolved by `policy` and counted in *borderline.
IntSet g_set(const PrefixTable& table, long long k, const Rational& C,
             BorderlinePolicy policy = BorderlinePolicy::Exclude, long long* borderline = nullptr);

// Finite intersection over k values; an over-approximation of the infinite
// intersection (monotone decreasing in the number of sets).
IntSet intersect_g_sets(const PrefixTable& table, std::span<const long long> ks, const Rational& C,
                        BorderlinePolicy policy = BorderlinePolicy::Exclude,
                        long long* borderline = nullptr);

}  // namespace shiftlab
