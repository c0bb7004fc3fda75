#include "shiftlab/density.hpp"

#include "shiftlab/errors.hpp"
#include "shiftlab/kernels.hpp"
#include "shiftlab/report.hpp"

#include <algorithm>
#include <sstream>

namespace shiftlab {

namespace {

constexpr double kTau = 1e-9;

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

Rational ratio_at(const IntSet& a, long long n) {
    return Rational(a.count_upto(n), n + 1);
}

struct Extremes {
    Rational min_ratio;
    long long min_at;
    Rational max_ratio;
    long long max_at;
};

// r rises inside intervals and the tail, falls on gaps; so minima sit right
// before a rise starts and maxima at interval ends (plus window endpoints).
Extremes exact_extremes(const IntSet& a, long long w, long long N) {
    std::vector<long long> min_candidates{w, N};
    std::vector<long long> max_candidates{w, N};
    for (const auto& [start, end] : a.intervals()) {
        if (start > N) break;
        if (start - 1 >= w && start - 1 <= N) min_candidates.push_back(start - 1);
        if (end >= w && end <= N) max_candidates.push_back(end);
    }
    if (a.tail() && *a.tail() - 1 >= w && *a.tail() - 1 <= N) min_candidates.push_back(*a.tail() - 1);

    Extremes ex{ratio_at(a, w), w, ratio_at(a, w), w};
    for (long long c : min_candidates) {
        Rational r = ratio_at(a, c);
        if (r < ex.min_ratio || (r == ex.min_ratio && c < ex.min_at)) {
            ex.min_ratio = r;
            ex.min_at = c;
        }
    }
    for (long long c : max_candidates) {
        Rational r = ratio_at(a, c);
        if (r > ex.max_ratio || (r == ex.max_ratio && c < ex.max_at)) {
            ex.max_ratio = r;
            ex.max_at = c;
        }
    }
    return ex;
}

}  // namespace

DensityProfile density_profile(const IntSet& a, long long N, std::span<const long long> checkpoints,
                               std::optional<long long> window_start) {
    if (N < 1) throw DomainError("profile horizon must be >= 1");
    long long w = window_start.value_or(std::max<long long>(1, ceil_div(N, 100)));
    if (w < 0 || w > N) throw DomainError("window start outside [0, N]");

    DensityProfile profile;
    profile.horizon = N;
    profile.window_start = w;

    std::vector<long long> cps(checkpoints.begin(), checkpoints.end());
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    for (long long cp : cps) {
        if (cp < 1 || cp > N) continue;
        DensityProfile::Checkpoint c;
        c.at = cp;
        c.count = a.count_upto(cp);
        c.ratio = Rational(c.count, cp + 1);
        c.window_min = exact_extremes(a, std::max<long long>(1, ceil_div(cp, 100)), cp).min_ratio;
        profile.checkpoints.push_back(std::move(c));
    }

    Extremes ex = exact_extremes(a, w, N);
    profile.min_ratio = ex.min_ratio;
    profile.min_at = ex.min_at;
    profile.max_ratio = ex.max_ratio;
    profile.max_at = ex.max_at;
    return profile;
}

std::vector<long long> default_checkpoints(long long N, int count) {
    std::vector<long long> cps;
    for (int i = 1; i <= count; ++i) {
        long long cp = static_cast<long long>((static_cast<__int128>(N) * i) / count);
        if (cp >= 1) cps.push_back(cp);
    }
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

nlohmann::ordered_json DensityProfile::to_json() const {
    nlohmann::ordered_json j;
    j["horizon"] = horizon;
    j["window_start"] = window_start;
    j["lower_density_estimate"] = num_value(min_ratio);
    j["lower_density_argmin"] = min_at;
    j["upper_density_estimate"] = num_value(max_ratio);
    j["upper_density_argmax"] = max_at;
    auto& cps = j["checkpoints"] = nlohmann::ordered_json::array();
    for (const auto& c : checkpoints) {
        nlohmann::ordered_json cj;
        cj["at"] = c.at;
        cj["count"] = c.count;
        cj["ratio"] = num_value(c.ratio);
        cj["window_min"] = num_value(c.window_min);
        cps.push_back(std::move(cj));
    }
    if (!warnings.empty()) j["warnings"] = warnings;
    return j;
}

std::string DensityProfile::to_csv() const {
    std::ostringstream out;
    out << "at,count,ratio,window_min\n";
    for (const auto& c : checkpoints) {
        out << c.at << "," << c.count << "," << decimal_string(c.ratio, kDecimalDigits) << ","
            << decimal_string(c.window_min, kDecimalDigits) << "\n";
    }
    return out.str();
}

IntSet g_set(const PrefixTable& table, long long k, const Rational& C, BorderlinePolicy policy,
             long long* borderline) {
    if (C <= 0) throw DomainError("G-set threshold must be positive");
    if (k < 0) throw DomainError("G-set basis index must be >= 0");
    if (k > table.horizon()) throw HorizonError("G-set index beyond table horizon");

    std::vector<long long> members;
    members.reserve(static_cast<size_t>(k) + 1);
    if (table.exact_mode()) {
        std::vector<long long> e(static_cast<size_t>(k) + 1);
        table.fill_prefix_exponents(0, k + 1, e.data());
        long long ek = e[static_cast<size_t>(k)];
        for (long long n = 0; n <= k; ++n) {
            long long delta = ek - e[static_cast<size_t>(k - n)];
            if (kernels::pow2_vs_rational(delta, C) <= 0) members.push_back(n);
        }
    } else {
        std::vector<double> lp(static_cast<size_t>(k) + 1);
        table.fill_prefix_log2(0, k + 1, lp.data());
        double lk = lp[static_cast<size_t>(k)];
        double lc = log2_approx(C);
        double err = 2.0 * table.prefix(k).log2_error() + 1e-12;
        for (long long n = 0; n <= k; ++n) {
            double diff = lk - lp[static_cast<size_t>(k - n)] - lc;
            if (std::abs(diff) <= err + kTau) {
                if (borderline) ++*borderline;
                if (policy == BorderlinePolicy::Include) members.push_back(n);
            } else if (diff < 0) {
                members.push_back(n);
            }
        }
    }
    IntSet finite = IntSet::from_sorted_members(members);
    return set_union(finite, IntSet::ray(k + 1));
}

IntSet intersect_g_sets(const PrefixTable& table, std::span<const long long> ks, const Rational& C,
                        BorderlinePolicy policy, long long* borderline) {
    if (ks.empty()) throw DomainError("at least one G-set index is required");
    std::vector<IntSet> sets = kernels::g_set_batch(table, ks, C, policy, kernels::Exec::Parallel, borderline);
    IntSet result = sets.front();
    for (size_t i = 1; i < sets.size(); ++i) result = set_intersect(result, sets[i]);
    return result;
}

}  // namespace shiftlab
