#include "shiftlab/constructions.hpp"

#include "shiftlab/errors.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/series.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <vector>

namespace shiftlab {

struct MarkerSequence::Impl {
    std::string name;
    long long min_index = 0;
    std::function<Int(long long)> rule;
};

MarkerSequence MarkerSequence::menet() {
    auto impl = std::make_shared<Impl>();
    impl->name = "menet";
    impl->min_index = 0;
    impl->rule = [](long long n) {
        long long half = n / 2;
        if (n % 2 == 0) return Int(1) + Int(half) * (half + 1);
        return Int(1) + Int(half + 1) * (half + 1);
    };
    MarkerSequence seq;
    seq.impl_ = std::move(impl);
    return seq;
}

MarkerSequence MarkerSequence::geometric(long long base) {
    if (base < 2) throw DomainError("geometric marker base must be >= 2");
    auto impl = std::make_shared<Impl>();
    impl->name = "geometric-" + std::to_string(base);
    impl->min_index = 1;
    impl->rule = [base](long long n) { return pow_int(Int(base), n - 1); };
    MarkerSequence seq;
    seq.impl_ = std::move(impl);
    return seq;
}

MarkerSequence MarkerSequence::from_rule(std::string name, long long min_index,
                                         std::function<Int(long long)> rule) {
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->min_index = min_index;
    impl->rule = std::move(rule);
    MarkerSequence seq;
    seq.impl_ = std::move(impl);
    return seq;
}

Int MarkerSequence::at(long long n) const {
    if (n < impl_->min_index)
        throw DomainError("marker index below " + std::to_string(impl_->min_index));
    return impl_->rule(n);
}

long long MarkerSequence::at_int64(long long n) const {
    Int v = at(n);
    if (v > std::numeric_limits<long long>::max())
        throw DomainError("marker value exceeds 64-bit range at n=" + std::to_string(n));
    return v.convert_to<long long>();
}

long long MarkerSequence::min_index() const { return impl_->min_index; }
const std::string& MarkerSequence::name() const { return impl_->name; }

void MarkerSequence::require_strictly_increasing(long long n_hi) const {
    Int prev;
    bool have_prev = false;
    for (long long n = impl_->min_index; n <= n_hi; ++n) {
        Int v = at(n);
        if (v <= 0) throw ConstructionError("marker a_" + std::to_string(n) + " not positive");
        if (have_prev && v <= prev)
            throw ConstructionError("marker sequence not strictly increasing at n=" + std::to_string(n));
        prev = std::move(v);
        have_prev = true;
    }
}

// --- menet weights ----------------------------------------------------------

namespace {

// For k >= 1 let t = k-1 and s = isqrt(t). Then t in [s(s+1), (s+1)^2) means a
// 2-run [a_{2s}, a_{2s+1}), and t in [s^2, s^2+s) a 1-run [a_{2s-1}, a_{2s}).
bool menet_is_two(long long k) {
    long long t = k - 1;
    long long s = isqrt64(t);
    return t >= s * (s + 1);
}

RunView menet_run(long long k) {
    long long t = k - 1;
    long long s = isqrt64(t);
    RunView run;
    if (t >= s * (s + 1)) {
        run.value = 2;
        run.start = 1 + s * (s + 1);
        run.end = 1 + (s + 1) * (s + 1);
    } else {
        run.value = 1;
        run.start = 1 + s * s;
        run.end = 1 + s * (s + 1);
    }
    return run;
}

}  // namespace

WeightSpec menet_weights() {
    MarkerSequence a = MarkerSequence::menet();
    StructuralFacts facts;
    // #2-positions <= k equals ceil(k/2) exactly at every 1-run end, and
    // exceeds it elsewhere.
    facts.exponent_floor = ExponentFloor{1, 2, 0, 0};
    facts.eventual_value = std::nullopt;
    facts.unit_runs = UnitRunWitness{[a](long long n) {
        // [a_{2n-1}, a_{2n}) is a 1-run of length exactly n
        return a.at(2 * n - 1);
    }};
    facts.growth = GrowthWitness{[a](long long i) {
        // just before the (i+1)-th 2-run ends: log2 P(a_{2i+1} - 1) = (i+1)(i+2)/2
        return std::pair<Int, long long>(a.at(2 * i + 1) - 1, (i + 1) * (i + 2) / 2);
    }};

    nlohmann::ordered_json desc;
    desc["kind"] = "builtin";
    desc["name"] = "menet";
    return WeightSpec::from_rule(
        "menet", std::move(desc), Rational(2), /*power_of_two=*/true, Rational(1),
        [](long long k) { return Rational(menet_is_two(k) ? 2 : 1); }, menet_run, std::move(facts));
}

// --- block4 weights ---------------------------------------------------------

namespace {

// Marker positions m_n = sum_{k<n} a_k + n with a shared extendable cache.
struct Block4Markers {
    explicit Block4Markers(MarkerSequence seq) : a(std::move(seq)) {}

    MarkerSequence a;
    mutable std::vector<Int> positions{Int(0), Int(1)};  // positions[n] = m_n, m_1 = 1
    mutable std::mutex mutex;

    // Returns the largest n with m_n <= k, extending the cache as needed.
    long long block_of(const Int& k) const {
        std::lock_guard lock(mutex);
        while (positions.back() <= k)
            positions.push_back(positions.back() + a.at(static_cast<long long>(positions.size()) - 1) + 1);
        long long lo = 1, hi = static_cast<long long>(positions.size()) - 1;
        while (lo < hi) {
            long long mid = (lo + hi + 1) / 2;
            if (positions[static_cast<size_t>(mid)] <= k) lo = mid;
            else hi = mid - 1;
        }
        return lo;
    }

    Int position(long long n) const {
        std::lock_guard lock(mutex);
        while (static_cast<long long>(positions.size()) <= n)
            positions.push_back(positions.back() + a.at(static_cast<long long>(positions.size()) - 1) + 1);
        return positions[static_cast<size_t>(n)];
    }
};

}  // namespace

Int block4_marker_position(const MarkerSequence& a, long long n) {
    if (n < 1) throw DomainError("marker position index must be >= 1");
    Int m(1);
    for (long long j = 1; j < n; ++j) m += a.at(j) + 1;
    return m;
}

WeightSpec block4_weights(const MarkerSequence& a) {
    a.require_strictly_increasing(a.min_index() + 24);
    if (a.min_index() != 1) throw DomainError("block4 marker sequence must start at n=1");
    auto markers = std::make_shared<Block4Markers>(a);

    StructuralFacts facts;
    facts.unit_runs = UnitRunWitness{[markers](long long n) {
        // (m_n, m_{n+1}) is a 1-run of length a_n >= n
        return markers->position(n) + 1;
    }};
    facts.growth = GrowthWitness{[markers](long long i) {
        return std::pair<Int, long long>(markers->position(i), 2 * i);
    }};

    // Block n = [m_n, m_{n+1}) carries P = 4^n; block sums of P^{-p} are
    // (a_n + 1) 4^{-pn} <= (2/base_estimate)... declared only for geometric rules.
    bool geometric = a.name().rfind("geometric-", 0) == 0;
    long long base = 0;
    if (geometric) base = std::stoll(a.name().substr(10));
    if (geometric) {
        BlockBound bb;
        bb.first = 1;
        bb.start = [markers](long long n) { return markers->position(n); };
        bb.exp_floor = [](long long n) { return 2 * n; };
        bb.coefficient = [base](double) { return series::Bound::from_exact(Rational(2, base)); };
        bb.ratio = [base](double p) {
            return series::rational_power(Rational(1, 4), p).scaled(Rational(base));
        };
        bb.sums_grow_when_ratio_ge_1 = true;
        facts.block_bound = std::move(bb);
    }

    nlohmann::ordered_json desc;
    desc["kind"] = "builtin";
    desc["name"] = "block4-geometric";
    if (geometric) desc["params"] = {{"base", base}};
    else desc["params"] = {{"rule", a.name()}};

    auto value_at = [markers](long long k) {
        long long n = markers->block_of(Int(k));
        return Rational(markers->position(n) == k ? 4 : 1);
    };
    auto run_at = [markers](long long k) {
        long long n = markers->block_of(Int(k));
        Int m_n = markers->position(n);
        RunView run;
        if (m_n == k) {
            run.value = 4;
            run.start = k;
            run.end = k + 1;
        } else {
            run.value = 1;
            run.start = (m_n + 1).convert_to<long long>();
            Int next = markers->position(n + 1);
            if (next <= std::numeric_limits<long long>::max()) run.end = next.convert_to<long long>();
        }
        return run;
    };
    return WeightSpec::from_rule(geometric ? "block4-geometric" : "block4-" + a.name(), std::move(desc),
                                 Rational(4), /*power_of_two=*/true, Rational(1), value_at, run_at,
                                 std::move(facts));
}

ExampleASet example_a_set(const MarkerSequence& a, long long horizon) {
    if (horizon < 0) throw DomainError("horizon must be >= 0");
    ExampleASet result;
    std::vector<IntSet::Interval> intervals;
    Int a1 = a.at(1);
    if (a1 <= horizon) intervals.emplace_back(0, a1.convert_to<long long>());
    else {
        intervals.emplace_back(0, horizon);
        result.truncated = true;
    }
    Int partial_sum = a1;  // sum_{k<=n} a_k
    for (long long n = 1;; ++n) {
        Int start = partial_sum + (n + 1);
        Int end = a.at(n + 1);
        if (start > horizon) break;
        if (start <= end) {
            long long s = start.convert_to<long long>();
            if (end <= horizon) {
                intervals.emplace_back(s, end.convert_to<long long>());
            } else {
                intervals.emplace_back(s, horizon);
                result.truncated = true;
                break;
            }
        }
        partial_sum += end;
    }
    result.set = IntSet::from_intervals(std::move(intervals));
    return result;
}

// --- verification reports ---------------------------------------------------

namespace {

nlohmann::ordered_json series_with_tail(const Rational& partial, const series::Bound& tail,
                                        long long terms) {
    nlohmann::ordered_json j;
    j["terms"] = terms;
    j["partial_sum"] = num_value(partial);
    j["tail_bound"] = num_value(tail);
    if (tail.exact) j["sum_upper"] = num_value(partial + *tail.exact);
    else j["sum_upper"] = num_value(to_double(partial) + tail.upper);
    return j;
}

}  // namespace

nlohmann::ordered_json verify_menet_identities(long long n_max, double p) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    if (!(p >= 1)) throw DomainError("p must be >= 1");
    MarkerSequence a = MarkerSequence::menet();

    nlohmann::ordered_json report;
    report["marker_rule"] = "menet";
    report["p"] = num_value(p);

    // a_{2n+1} - a_{2n} = n+1 = a_{2n+2} - a_{2n+1}, exactly.
    bool diffs_ok = true;
    long long first_failure = -1;
    for (long long n = 0; n <= n_max; ++n) {
        Int d1 = a.at(2 * n + 1) - a.at(2 * n);
        Int d2 = a.at(2 * n + 2) - a.at(2 * n + 1);
        if (d1 != n + 1 || d2 != n + 1) {
            diffs_ok = false;
            first_failure = n;
            break;
        }
    }
    report["run_length_identities"] = {{"checked_upto", n_max}, {"pass", diffs_ok}};
    if (!diffs_ok) report["run_length_identities"]["first_failure"] = first_failure;

    // a_{2n} / a_{2n+3} -> 1, monotone from below.
    bool ratio_monotone = true;
    Rational prev_ratio(0);
    nlohmann::ordered_json ratio_samples = nlohmann::ordered_json::array();
    Rational final_ratio;
    for (long long n = 0; n <= n_max; ++n) {
        Rational r(a.at(2 * n), a.at(2 * n + 3));
        if (r < prev_ratio) ratio_monotone = false;
        prev_ratio = r;
        final_ratio = r;
        if (n <= 4 || n == n_max || (n % std::max<long long>(1, n_max / 8)) == 0)
            ratio_samples.push_back({{"n", n}, {"value", num_value(r)}, {"deviation", num_value(Rational(1) - r)}});
    }
    report["count_ratio"] = {{"samples", ratio_samples},
                             {"monotone_nondecreasing", ratio_monotone},
                             {"deviation_at_n_max", num_value(Rational(1) - final_ratio)}};

    // The three displayed series at this p, exact partial sums plus exact
    // arithmetico-geometric tails (integer p; otherwise tails only).
    if (is_integer(p)) {
        auto pi = static_cast<long long>(p);
        Rational q = pow_rational(Rational(1, 2), pi);

        Rational s1(0);  // sum_{n>=1} q^n
        for (long long n = 1; n <= n_max; ++n) s1 += pow_rational(q, n);
        report["series"]["geometric_run_terms"] =
            series_with_tail(s1, series::Bound::from_exact(series::geometric_tail(q, n_max + 1)), n_max);

        Rational s2(0);  // sum_{n>=0} (n+1) q^{n+1}
        for (long long n = 0; n <= n_max; ++n) s2 += Rational(n + 1) * pow_rational(q, n + 1);
        report["series"]["one_run_block_sums"] = series_with_tail(
            s2, series::Bound::from_exact(series::arith_geometric_tail(q, 1, 1, n_max + 1) * q), n_max + 1);

        Rational s3(0);  // sum_{n>=0} (2n+3) q^{n+1}
        for (long long n = 0; n <= n_max; ++n) s3 += Rational(2 * n + 3) * pow_rational(q, n + 1);
        report["series"]["threshold_rule_sums"] = series_with_tail(
            s3, series::Bound::from_exact(series::arith_geometric_tail(q, 2, 3, n_max + 1) * q), n_max + 1);
    } else {
        report["series"] = {{"note", "exact series partial sums require integer p"}};
    }

    report["pass"] = diffs_ok && ratio_monotone;
    return report;
}

nlohmann::ordered_json verify_example8_conditions(const MarkerSequence& a, double p, long long n_max) {
    if (n_max < 2) throw DomainError("n_max must be >= 2");
    if (!(p >= 1)) throw DomainError("p must be >= 1");
    a.require_strictly_increasing(std::min<long long>(n_max + 1, a.min_index() + 64));

    nlohmann::ordered_json report;
    report["marker_rule"] = a.name();
    report["p"] = num_value(p);

    bool geometric = a.name().rfind("geometric-", 0) == 0;
    long long base = geometric ? std::stoll(a.name().substr(10)) : 0;
    bool p_int = is_integer(p);

    // sum_k a_k / 4^{kp}: exact partial sums (integer p); tail from the term
    // ratio bound base/4^p, re-validated against every computed term ratio.
    if (p_int) {
        auto pi = static_cast<long long>(p);
        Rational partial(0), last_term(0), prev_term(0), max_ratio(0);
        for (long long k = 1; k <= n_max; ++k) {
            Rational term = Rational(a.at(k)) * pow_rational(Rational(1, 4), pi * k);
            if (k > 1 && prev_term != 0 && term / prev_term > max_ratio) max_ratio = term / prev_term;
            prev_term = term;
            last_term = term;
            partial += term;
        }
        bool ratios_ok = false;
        series::Bound tail = series::Bound::from_double(std::numeric_limits<double>::infinity());
        if (geometric) {
            Rational r = Rational(base) * pow_rational(Rational(1, 4), pi);
            if (r < 1) {
                ratios_ok = max_ratio <= r;
                tail = series::Bound::from_exact(last_term * r / (Rational(1) - r));
            }
        }
        auto j = series_with_tail(partial, tail, n_max);
        j["term_ratio_bound_validated"] = ratios_ok;
        j["converges"] = ratios_ok;
        report["summability_condition"] = std::move(j);
    } else {
        report["summability_condition"] = {{"note", "exact series partial sums require integer p"}};
    }

    // Lower-density ratio (a_n - sum_{k<n} a_k - n) / (sum_{k<=n} a_k + n + 1),
    // exact rationals; for geometric rules the limit is (base-2)/base.
    {
        nlohmann::ordered_json samples = nlohmann::ordered_json::array();
        Int partial_sum(0);  // sum_{k<n} a_k
        Rational final_ratio(0);
        for (long long n = 1; n <= n_max; ++n) {
            Int an = a.at(n);
            Rational ratio(an - partial_sum - n, partial_sum + an + n + 1);
            partial_sum += an;
            final_ratio = ratio;
            if (n <= 3 || n == n_max || (n % std::max<long long>(1, n_max / 8)) == 0)
                samples.push_back({{"n", n}, {"value", num_value(ratio)}});
        }
        nlohmann::ordered_json j;
        j["samples"] = samples;
        j["value_at_n_max"] = num_value(final_ratio);
        if (geometric) {
            Rational limit(base - 2, base);
            j["limit"] = num_value(limit);
            j["deviation_at_n_max"] =
                num_value(final_ratio - limit < 0 ? limit - final_ratio : final_ratio - limit);
            j["positive_liminf"] = limit > 0;
        }
        report["lower_density_ratio"] = std::move(j);
    }

    report["pass"] = true;
    return report;
}

}  // namespace shiftlab
