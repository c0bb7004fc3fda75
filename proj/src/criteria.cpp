#include "shiftlab/criteria.hpp"

#include "shiftlab/constructions.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/kernels.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/series.hpp"
#include "shiftlab/specfile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shiftlab {

std::string status_string(Status s) {
    switch (s) {
        case Status::CertifiedTrue: return "certified-true";
        case Status::CertifiedFalse: return "certified-false";
        case Status::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

nlohmann::ordered_json Verdict::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["criterion"] = criterion;
    j["status"] = status_string(status);
    j["parameters"] = parameters;
    j["horizons"] = horizons;
    j["evidence"] = evidence;
    j["warnings"] = warnings;
    return j;
}

int Verdict::exit_code() const {
    switch (status) {
        case Status::CertifiedTrue: return 0;
        case Status::CertifiedFalse: return 3;
        case Status::Inconclusive: return 4;
    }
    return 4;
}

namespace {

constexpr double kCmpMargin = 1e-12;

long long ceil_div_ll(long long a, long long b) { return (a + b - 1) / b; }

Verdict base_verdict(std::string criterion, const PrefixTable& table) {
    Verdict v;
    v.criterion = std::move(criterion);
    v.parameters["spec"] = table.spec().descriptor();
    v.horizons["table"] = table.horizon();
    return v;
}

// Compensated partial sums of 2^{-p * log2P(k)} over k = 1..horizon with
// evenly spaced checkpoints; exact rational prefix over a small window in
// exact mode with integer p.
struct SeriesScan {
    double total = 0.0;
    double last_term = 0.0;
    nlohmann::ordered_json checkpoints;
    std::optional<Rational> exact_prefix;
    long long exact_prefix_upto = 0;
};

SeriesScan scan_series(const PrefixTable& table, double p, long long horizon) {
    SeriesScan scan;
    std::vector<double> lp(static_cast<size_t>(horizon) + 1);
    table.fill_prefix_log2(0, horizon + 1, lp.data());

    scan.checkpoints = nlohmann::ordered_json::array();
    const long long step = std::max<long long>(1, horizon / 8);
    double sum = 0.0, comp = 0.0;
    for (long long k = 1; k <= horizon; ++k) {
        double term = std::exp2(-p * lp[static_cast<size_t>(k)]);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        scan.last_term = term;
        if (k % step == 0 || k == horizon) {
            if (scan.checkpoints.empty() || scan.checkpoints.back()["k"] != k)
                scan.checkpoints.push_back({{"k", k}, {"partial_sum", decimal_string(sum)}});
        }
    }
    scan.total = sum;

    if (table.exact_mode() && is_integer(p)) {
        auto pi = static_cast<long long>(p);
        long long upto = std::min<long long>(horizon, 2048);
        std::vector<long long> e(static_cast<size_t>(upto) + 1);
        table.fill_prefix_exponents(0, upto + 1, e.data());
        Rational exact(0);
        for (long long k = 1; k <= upto; ++k)
            exact += pow_rational(Rational(1, 2), pi * e[static_cast<size_t>(k)]);
        scan.exact_prefix = exact;
        scan.exact_prefix_upto = upto;
    }
    return scan;
}

struct FloorCheck {
    bool ok = false;
    long long first_violation = -1;
};

// log2 P(k) >= ceil(k * num / den) + beta on [from, horizon]. Exact in exact
// mode; in approximate mode anything within the tracked error fails the check.
FloorCheck validate_exponent_floor(const PrefixTable& table, const ExponentFloor& floor,
                                   long long horizon) {
    FloorCheck check;
    long long from = std::max<long long>(1, floor.from);
    if (table.exact_mode()) {
        std::vector<long long> e(static_cast<size_t>(horizon) + 1);
        table.fill_prefix_exponents(0, horizon + 1, e.data());
        for (long long k = from; k <= horizon; ++k) {
            long long bound = ceil_div_ll(k * floor.alpha_num, floor.alpha_den) + floor.beta;
            if (e[static_cast<size_t>(k)] < bound) {
                check.first_violation = k;
                return check;
            }
        }
    } else {
        std::vector<double> lp(static_cast<size_t>(horizon) + 1);
        table.fill_prefix_log2(0, horizon + 1, lp.data());
        double err = table.prefix(horizon).log2_error() + 1e-12;
        for (long long k = from; k <= horizon; ++k) {
            double bound = std::ceil(static_cast<double>(k) * floor.alpha_num / floor.alpha_den) +
                           static_cast<double>(floor.beta);
            if (!(lp[static_cast<size_t>(k)] - err >= bound)) {
                check.first_violation = k;
                return check;
            }
        }
    }
    check.ok = true;
    return check;
}

nlohmann::ordered_json floor_json(const ExponentFloor& floor, long long validated_upto) {
    nlohmann::ordered_json j;
    j["type"] = "exponent-floor";
    j["alpha"] = std::to_string(floor.alpha_num) + "/" + std::to_string(floor.alpha_den);
    j["beta"] = floor.beta;
    j["from"] = floor.from;
    j["validated_upto"] = validated_upto;
    return j;
}

// Block data within the horizon for a BlockBound: all blocks [start(n), start(n+1))
// with start(n+1) - 1 <= horizon.
struct BlockScan {
    long long last_full = -1;   // block id M
    long long covered_upto = 0; // start(M+1) - 1
    bool floors_ok = true;
    long long floor_violation_block = -1;
    bool sums_dominated = true;      // count_n 2^{-p g(n)} <= coef ratio^n
    std::vector<double> block_sums;  // double trend, first..last_full
};

BlockScan scan_blocks(const PrefixTable& table, const BlockBound& bb, double p, long long horizon) {
    BlockScan scan;
    std::vector<double> lp(static_cast<size_t>(horizon) + 1);
    table.fill_prefix_log2(0, horizon + 1, lp.data());
    std::vector<long long> e;
    if (table.exact_mode()) {
        e.resize(static_cast<size_t>(horizon) + 1);
        table.fill_prefix_exponents(0, horizon + 1, e.data());
    }

    const bool p_int = is_integer(p);
    auto coef = bb.coefficient(p);
    auto ratio = bb.ratio(p);

    for (long long n = bb.first;; ++n) {
        Int start_big = bb.start(n);
        Int next_big = bb.start(n + 1);
        if (next_big - 1 > horizon) break;
        long long start = start_big.convert_to<long long>();
        long long next = next_big.convert_to<long long>();
        long long g = bb.exp_floor(n);
        double bsum = 0.0;
        for (long long k = start; k < next; ++k) {
            bsum += std::exp2(-p * lp[static_cast<size_t>(k)]);
            if (table.exact_mode()) {
                if (e[static_cast<size_t>(k)] < g) {
                    scan.floors_ok = false;
                    scan.floor_violation_block = n;
                }
            } else if (!(lp[static_cast<size_t>(k)] - table.prefix(horizon).log2_error() - 1e-12 >= g)) {
                scan.floors_ok = false;
                scan.floor_violation_block = n;
            }
        }
        scan.block_sums.push_back(bsum);
        // declared domination of the block-count bound
        if (p_int && coef.exact && ratio.exact) {
            Rational lhs = Rational(next - start) * pow_rational(Rational(1, 2),
                                                                 static_cast<long long>(p) * g);
            Rational rhs = *coef.exact * pow_rational(*ratio.exact, n);
            if (lhs > rhs) scan.sums_dominated = false;
        } else {
            double lhs = static_cast<double>(next - start) * std::exp2(-p * static_cast<double>(g));
            double rhs = coef.upper * std::pow(ratio.upper, static_cast<double>(n));
            if (!(lhs <= rhs * (1.0 + kCmpMargin))) scan.sums_dominated = false;
        }
        scan.last_full = n;
        scan.covered_upto = next - 1;
    }
    return scan;
}

}  // namespace

// --- frequent hypercyclicity -------------------------------------------------

Verdict check_frequent_hypercyclicity(const PrefixTable& table, double p, long long horizon) {
    if (!(p >= 1)) throw DomainError("p must be >= 1");
    if (horizon < 1) throw DomainError("horizon must be >= 1");
    if (horizon > table.horizon()) throw HorizonError("check horizon beyond table horizon");

    Verdict v = base_verdict("fhc", table);
    v.parameters["p"] = decimal_string(p);
    v.horizons["series"] = horizon;

    const auto& facts = table.spec().facts();
    const bool p_int = is_integer(p);

    SeriesScan scan = scan_series(table, p, horizon);
    v.evidence["series"]["partial_sum"] = num_value(scan.total);
    v.evidence["series"]["checkpoints"] = scan.checkpoints;
    if (scan.exact_prefix) {
        v.evidence["series"]["exact_prefix_upto"] = scan.exact_prefix_upto;
        v.evidence["series"]["exact_prefix"] = num_value(*scan.exact_prefix);
    }

    // Divergence: an eventually-constant tail of value <= 1 keeps terms from
    // vanishing.
    if (facts.eventual_value && facts.eventual_value->first <= 1 &&
        facts.eventual_value->second <= horizon) {
        const auto& [value, from] = *facts.eventual_value;
        Rational p_before = table.window_product(0, from - 1);
        Rational first_tail_term_base = p_before * value;  // P(from)
        auto floor_bound = series::rational_power(Rational(1) / first_tail_term_base, p);
        v.status = Status::CertifiedFalse;
        v.evidence["witness"] = {{"type", "eventually-constant-tail"},
                                 {"value", rational_string(value)},
                                 {"from", from},
                                 {"term_floor", num_value(floor_bound)}};
        return v;
    }

    // Divergence: block sums grow when the declared ratio is >= 1.
    if (facts.block_bound && facts.block_bound->sums_grow_when_ratio_ge_1) {
        auto ratio = facts.block_bound->ratio(p);
        bool ratio_ge_1 = ratio.exact ? (*ratio.exact >= 1) : (ratio.upper >= 1.0 - kCmpMargin);
        if (ratio_ge_1) {
            BlockScan bs = scan_blocks(table, *facts.block_bound, p, horizon);
            bool nondecreasing = bs.block_sums.size() >= 2;
            for (size_t i = 1; i < bs.block_sums.size(); ++i)
                if (bs.block_sums[i] < bs.block_sums[i - 1] * (1.0 - 1e-9)) nondecreasing = false;
            if (nondecreasing && bs.floors_ok && bs.block_sums.front() > 0) {
                v.status = Status::CertifiedFalse;
                v.evidence["witness"] = {{"type", "non-vanishing-block-sums"},
                                         {"ratio", num_value(ratio)},
                                         {"blocks_validated", bs.last_full},
                                         {"first_block_sum", num_value(bs.block_sums.front())}};
                return v;
            }
        }
    }

    // Convergence: linear exponent floor, validated on the whole range, with
    // an exact grouped-geometric tail.
    if (facts.exponent_floor) {
        const auto& fl = *facts.exponent_floor;
        FloorCheck check = validate_exponent_floor(table, fl, horizon);
        if (check.ok) {
            long long m0 = ceil_div_ll((horizon + 1) * fl.alpha_num, fl.alpha_den) + fl.beta;
            long long mult = ceil_div_ll(fl.alpha_den, fl.alpha_num);
            auto tail = series::pow2_tail(p, m0, mult);
            v.status = Status::CertifiedTrue;
            v.evidence["certificate"] = floor_json(fl, horizon);
            v.evidence["certificate"]["tail_bound"] = num_value(tail);
            if (scan.exact_prefix && tail.exact)
                v.evidence["certificate"]["note"] = "sum lies in [partial_sum, partial_sum + tail_bound]";
            return v;
        }
        v.warnings.push_back("declared exponent floor failed validation at k=" +
                             std::to_string(check.first_violation));
    }

    // Convergence: eventually-constant tail of value > 1, exact geometric tail.
    if (facts.eventual_value && facts.eventual_value->first > 1 &&
        facts.eventual_value->second <= horizon) {
        const auto& [value, from] = *facts.eventual_value;
        Rational p_before = table.window_product(0, from - 1);
        series::Bound tail;
        if (p_int) {
            Rational q = pow_rational(Rational(1) / value, static_cast<long long>(p));
            Rational scale = pow_rational(Rational(1) / p_before, static_cast<long long>(p));
            tail = series::Bound::from_exact(scale * series::geometric_tail(q, horizon - from + 2));
        } else {
            double lq = -p * log2_approx(value);
            double scale = std::exp2(-p * log2_approx(p_before));
            tail = series::Bound::from_double(scale * std::exp2(lq * static_cast<double>(horizon - from + 2)) /
                                              (1.0 - std::exp2(lq)));
        }
        v.status = Status::CertifiedTrue;
        v.evidence["certificate"] = {{"type", "eventually-constant-tail"},
                                     {"value", rational_string(value)},
                                     {"from", from},
                                     {"tail_bound", num_value(tail)}};
        return v;
    }

    // Convergence: block-aggregated geometric domination.
    if (facts.block_bound) {
        const auto& bb = *facts.block_bound;
        auto ratio = bb.ratio(p);
        bool ratio_lt_1 = ratio.exact ? (*ratio.exact < 1) : (ratio.upper < 1.0 - kCmpMargin);
        if (ratio_lt_1) {
            BlockScan bs = scan_blocks(table, bb, p, horizon);
            if (bs.last_full >= bb.first && bs.floors_ok && bs.sums_dominated) {
                auto coef = bb.coefficient(p);
                series::Bound tail;
                if (coef.exact && ratio.exact)
                    tail = series::Bound::from_exact(*coef.exact *
                                                     series::geometric_tail(*ratio.exact, bs.last_full + 1));
                else
                    tail = series::Bound::from_double(coef.upper *
                                                      std::pow(ratio.upper, static_cast<double>(bs.last_full + 1)) /
                                                      (1.0 - ratio.upper));
                v.status = Status::CertifiedTrue;
                v.evidence["certificate"] = {{"type", "block-geometric"},
                                             {"blocks_validated", bs.last_full},
                                             {"covered_upto", bs.covered_upto},
                                             {"ratio", num_value(ratio)},
                                             {"coefficient", num_value(coef)},
                                             {"tail_bound", num_value(tail)}};
                return v;
            }
            if (!bs.floors_ok)
                v.warnings.push_back("block exponent floor failed validation in block " +
                                     std::to_string(bs.floor_violation_block));
            if (!bs.sums_dominated) v.warnings.push_back("declared block-sum domination failed validation");
        }
    }

    v.status = Status::Inconclusive;
    v.evidence["note"] = "no validated convergence or divergence certificate; partial sums reported";
    v.evidence["last_term"] = num_value(scan.last_term);
    return v;
}

// --- hypercyclic subspace ----------------------------------------------------

Verdict check_hypercyclic_subspace(const PrefixTable& table, long long horizon_n, long long horizon_k) {
    if (horizon_n < 1 || horizon_k < 1) throw DomainError("horizons must be >= 1");
    if (horizon_k + horizon_n > table.horizon())
        throw HorizonError("hc-subspace horizons exceed table horizon");

    Verdict v = base_verdict("hc-subspace", table);
    v.horizons["n"] = horizon_n;
    v.horizons["k"] = horizon_k;

    const auto& facts = table.spec().facts();
    const auto& spec = table.spec();

    // Unbounded runs of ones: for every n some window of length n has product 1.
    if (facts.unit_runs) {
        std::vector<long long> probes;
        for (long long n = 1; n <= horizon_n; n *= 2) probes.push_back(n);
        if (probes.empty() || probes.back() != horizon_n) probes.push_back(horizon_n);
        nlohmann::ordered_json validated = nlohmann::ordered_json::array();
        long long declared_only = 0;
        bool violated = false;
        for (long long n : probes) {
            Int start_big = facts.unit_runs->start_of_run(n);
            if (start_big + n - 1 > table.horizon()) {
                ++declared_only;
                continue;
            }
            long long start = start_big.convert_to<long long>();
            for (long long k = start; k < start + n; ++k) {
                if (spec.weight_at(k) != 1) {
                    violated = true;
                    break;
                }
            }
            if (violated) break;
            validated.push_back({{"length", n}, {"at", start}});
        }
        if (!violated && !validated.empty()) {
            v.status = Status::CertifiedTrue;
            v.evidence["certificate"] = {{"type", "unbounded-unit-runs"},
                                         {"validated_runs", validated},
                                         {"declared_beyond_horizon", declared_only}};
            v.evidence["note"] = "inf_k of every length-n window product is <= 1 at the witnessed runs";
            return v;
        }
        if (violated) v.warnings.push_back("declared unit-run witness failed validation");
    }

    // Certified failure needs inf over all k, which an eventually-constant
    // tail makes finite-dimensional: windows inside the tail are value^n.
    if (facts.eventual_value && facts.eventual_value->first > 1) {
        const auto& [value, from] = *facts.eventual_value;
        long long n_cap = std::min<long long>(horizon_n, 64);
        for (long long n = 1; n <= n_cap; ++n) {
            if (from + n > table.horizon()) break;
            Rational inf_window = pow_rational(value, n);  // every k >= from-1
            for (long long k = 0; k + 1 < from; ++k) {
                Rational w = table.window_product(k, n);
                if (w < inf_window) inf_window = w;
            }
            if (inf_window > 1) {
                v.status = Status::CertifiedFalse;
                v.evidence["witness"] = {{"n", n},
                                         {"inf_window_product", num_value(inf_window)},
                                         {"tail_value", rational_string(value)},
                                         {"tail_from", from}};
                return v;
            }
        }
    }

    // Finite-horizon matrix max_{n <= N} min_{k <= K}; trend only.
    v.status = Status::Inconclusive;
    nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
    std::vector<double> lp(static_cast<size_t>(horizon_k + horizon_n) + 1);
    table.fill_prefix_log2(0, horizon_k + horizon_n + 1, lp.data());
    double sup_min = -std::numeric_limits<double>::infinity();
    for (long long n = 1; n <= horizon_n; n *= 2) {
        double min_log = std::numeric_limits<double>::infinity();
        for (long long k = 0; k <= horizon_k; ++k)
            min_log = std::min(min_log, lp[static_cast<size_t>(k + n)] - lp[static_cast<size_t>(k)]);
        sup_min = std::max(sup_min, min_log);
        matrix.push_back({{"n", n}, {"min_log2_window", decimal_string(min_log)}});
    }
    v.evidence["finite_matrix"] = matrix;
    v.evidence["sup_min_log2"] = decimal_string(sup_min);
    v.evidence["note"] = "no structural witness; finite horizons cannot decide the sup/inf";
    return v;
}

// --- non-existence of FHC subspaces -----------------------------------------

Verdict check_no_fhc_subspace(const PrefixTable& table, const CRule& rule, double p, long long horizon,
                              double delta) {
    if (!(p >= 1)) throw DomainError("p must be >= 1");
    if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
    if (horizon > table.horizon()) throw HorizonError("check horizon beyond table horizon");
    if (rule.k_min > horizon) throw DomainError("horizon below the C-rule's first index");

    Verdict v = base_verdict("no-fhc-subspace", table);
    v.parameters["p"] = decimal_string(p);
    v.parameters["delta"] = decimal_string(delta);
    v.parameters["crule"] = rule.descriptor;
    v.horizons["k"] = horizon;

    const bool p_int = is_integer(p);

    // Hypothesis (i): sum (1/C_l)^p with a declared closed-form tail.
    bool hyp1 = false;
    {
        double sum = 0.0;
        Rational exact(0);
        long long exact_upto = std::min<long long>(horizon, 4096);
        for (long long l = rule.k_min; l <= horizon; ++l) {
            Rational c = rule.value(l);
            if (c <= 0) throw DomainError("C-rule produced a non-positive value");
            if (p_int && l <= exact_upto)
                exact += pow_rational(Rational(1) / c, static_cast<long long>(p));
            sum += std::exp2(-p * log2_approx(c));
        }
        std::optional<Rational> tail = rule.tail_from ? rule.tail_from(horizon + 1, p) : std::nullopt;
        bool tail_consistent = false;
        if (tail && p_int) {
            // the closed form must telescope exactly across computed terms
            tail_consistent = true;
            for (long long l : {rule.k_min, rule.k_min + 1, (rule.k_min + horizon) / 2, horizon}) {
                auto t0 = rule.tail_from(l, p);
                auto t1 = rule.tail_from(l + 1, p);
                if (!t0 || !t1 ||
                    *t0 != *t1 + pow_rational(Rational(1) / rule.value(l), static_cast<long long>(p))) {
                    tail_consistent = false;
                    break;
                }
            }
        }
        hyp1 = tail.has_value() && tail_consistent;
        v.evidence["c_series"]["partial_sum"] = num_value(sum);
        if (p_int) {
            v.evidence["c_series"]["exact_prefix_upto"] = exact_upto;
            v.evidence["c_series"]["exact_prefix"] = num_value(exact);
        }
        if (tail) v.evidence["c_series"]["tail_bound"] = num_value(*tail);
        v.evidence["c_series"]["tail_telescopes"] = tail_consistent;
    }

    // Hypothesis (ii): exact counts and their ratio trend.
    bool hyp2 = false;
    {
        long long borderline = 0;
        std::vector<long long> counts = kernels::threshold_counts(
            table, rule.value, rule.k_min, horizon + 1, kernels::Exec::Parallel, &borderline);
        if (borderline > 0)
            v.warnings.push_back("borderline norm comparisons excluded from counts: " +
                                 std::to_string(borderline));

        bool floors_ok = static_cast<bool>(rule.count_floor);
        long long floor_violation = -1;
        Rational min_window_ratio(1);
        long long window_lo = std::max(rule.k_min, horizon - std::max<long long>(1, horizon / 10));
        for (long long l = rule.k_min; l <= horizon; ++l) {
            long long count = counts[static_cast<size_t>(l - rule.k_min)];
            if (floors_ok) {
                auto fl = rule.count_floor(l);
                if (fl && Rational(count) < *fl) {
                    floors_ok = false;
                    floor_violation = l;
                }
            }
            if (l >= window_lo) {
                Rational r(count, l + 1);
                if (r < min_window_ratio) min_window_ratio = r;
            }
        }
        bool window_ok = min_window_ratio >= Rational(1) - Rational(delta);
        bool limit_declared = rule.ratio_floor_limit && *rule.ratio_floor_limit == 1;
        hyp2 = floors_ok && window_ok && limit_declared;

        v.evidence["counts"]["window"] = {{"from", window_lo}, {"to", horizon}};
        v.evidence["counts"]["min_window_ratio"] = num_value(min_window_ratio);
        v.evidence["counts"]["count_floor_validated"] = floors_ok;
        if (floor_violation >= 0) v.evidence["counts"]["floor_violation_at"] = floor_violation;
        v.evidence["counts"]["declared_ratio_limit_one"] = limit_declared;
        nlohmann::ordered_json samples = nlohmann::ordered_json::array();
        long long step = std::max<long long>(1, (horizon - rule.k_min) / 8);
        for (long long l = rule.k_min; l <= horizon; l += step) {
            long long count = counts[static_cast<size_t>(l - rule.k_min)];
            samples.push_back({{"l", l}, {"count", count}, {"ratio", num_value(Rational(count, l + 1))}});
        }
        v.evidence["counts"]["samples"] = samples;
    }

    v.status = (hyp1 && hyp2) ? Status::CertifiedTrue : Status::Inconclusive;
    if (v.status == Status::Inconclusive)
        v.evidence["note"] = "one-directional criterion: never certified-false; hypotheses not both certified";
    return v;
}

// --- existence of FHC subspaces ----------------------------------------------

Verdict check_fhc_subspace(const PrefixTable& table, const KSequence& kseq, const Rational& C, double p,
                           long long horizon, const Rational& rho) {
    if (!(p >= 1)) throw DomainError("p must be >= 1");
    if (C <= 0) throw DomainError("threshold C must be positive");
    if (rho <= 0) throw DomainError("density threshold rho must be positive");
    if (horizon < 1 || horizon > table.horizon()) throw HorizonError("check horizon beyond table horizon");
    if (!kseq.at) throw DomainError("k-sequence required (at least one index)");

    Verdict v = base_verdict("fhc-subspace", table);
    v.parameters["p"] = decimal_string(p);
    v.parameters["C"] = rational_string(C);
    v.parameters["rho"] = rational_string(rho);
    v.parameters["kseq"] = kseq.descriptor;
    v.horizons["k"] = horizon;

    std::vector<long long> ks;
    for (long long l = kseq.min_l; l < kseq.min_l + (1 << 20); ++l) {
        long long k;
        try {
            k = kseq.at(l);
        } catch (const DomainError&) {
            break;
        }
        if (k > horizon) break;
        ks.push_back(k);
    }
    if (ks.empty()) throw DomainError("k-sequence has no indices within the horizon");
    long long L = static_cast<long long>(ks.size());

    // Recorded precondition: the shift must be frequently hypercyclic.
    Verdict pre = check_frequent_hypercyclicity(table, p, horizon);
    v.evidence["precondition_fhc"] = {{"status", status_string(pre.status)}};
    if (pre.status != Status::CertifiedTrue) {
        v.status = Status::Inconclusive;
        v.warnings.push_back("frequent hypercyclicity precondition not certified");
        return v;
    }

    long long borderline = 0;
    IntSet intersection = intersect_g_sets(table, ks, C, BorderlinePolicy::Exclude, &borderline);
    if (borderline > 0)
        v.warnings.push_back("borderline comparisons excluded from G-sets: " + std::to_string(borderline));

    bool closed_form_ok = false;
    if (kseq.closed_form && kseq.closed_form_threshold && *kseq.closed_form_threshold == C) {
        IntSet declared = kseq.closed_form(L);
        closed_form_ok = declared == intersection;
        v.evidence["closed_form_match"] = closed_form_ok;
    } else {
        v.evidence["closed_form_match"] = false;
    }

    long long stable = kseq.stable_upto ? std::min(horizon, kseq.stable_upto(L)) : horizon;
    stable = std::max<long long>(stable, 1);
    DensityProfile profile = density_profile(intersection, stable, default_checkpoints(stable));
    v.horizons["density"] = stable;
    v.evidence["markers"] = {{"count", L}, {"first", ks.front()}, {"last", ks.back()}};
    v.evidence["intersection"] = intersection.to_json();
    v.evidence["density"] = profile.to_json();

    bool dense_enough = profile.min_ratio >= rho;
    if (closed_form_ok && dense_enough && borderline == 0) {
        v.status = Status::CertifiedTrue;
        v.evidence["certificate"] = {
            {"type", "closed-form-intersection"},
            {"note", "finite intersection equals the declared closed form; additional indices leave "
                     "[0, stable_upto] unchanged"},
            {"stable_upto", stable}};
    } else {
        v.status = Status::Inconclusive;
        v.warnings.push_back(
            "finite intersection only over-approximates the infinite one; no closed form certified");
    }
    return v;
}

// --- hypercyclicity helper ----------------------------------------------------

Verdict check_hypercyclic(const PrefixTable& table, long long horizon) {
    if (horizon < 1 || horizon > table.horizon())
        throw HorizonError("check horizon beyond table horizon");
    Verdict v = base_verdict("hypercyclic", table);
    v.horizons["k"] = horizon;

    const auto& facts = table.spec().facts();
    if (facts.growth) {
        nlohmann::ordered_json validated = nlohmann::ordered_json::array();
        bool ok = true;
        long long max_e = std::numeric_limits<long long>::min();
        for (long long i = 1;; ++i) {
            auto [idx_big, e_claim] = facts.growth->marker_exponent(i);
            if (idx_big > horizon) break;
            long long idx = idx_big.convert_to<long long>();
            double actual = 0.0;
            if (table.exact_mode()) actual = static_cast<double>(table.prefix_exponent(idx));
            else actual = table.prefix(idx).log2() - table.prefix(idx).log2_error();
            if (!(actual >= static_cast<double>(e_claim))) {
                ok = false;
                break;
            }
            max_e = std::max(max_e, e_claim);
            if (validated.size() < 8) validated.push_back({{"k", idx}, {"log2_floor", e_claim}});
        }
        if (ok && !validated.empty()) {
            v.status = Status::CertifiedTrue;
            v.evidence["certificate"] = {{"type", "unbounded-prefix-growth"},
                                         {"validated_markers", validated},
                                         {"max_validated_log2", max_e}};
            return v;
        }
        if (!ok) v.warnings.push_back("declared growth witness failed validation");
    }
    if (facts.exponent_floor && facts.exponent_floor->alpha_num > 0) {
        FloorCheck check = validate_exponent_floor(table, *facts.exponent_floor, horizon);
        if (check.ok) {
            v.status = Status::CertifiedTrue;
            v.evidence["certificate"] = floor_json(*facts.exponent_floor, horizon);
            return v;
        }
    }
    v.status = Status::Inconclusive;
    std::vector<double> lp(static_cast<size_t>(horizon) + 1);
    table.fill_prefix_log2(0, horizon + 1, lp.data());
    double sup = *std::max_element(lp.begin(), lp.end());
    v.evidence["sup_log2_prefix"] = decimal_string(sup);
    v.evidence["note"] = "no structural growth witness; bounded observations cannot certify";
    return v;
}

// --- builtin rules ------------------------------------------------------------

CRule menet_c_rule() {
    MarkerSequence a = MarkerSequence::menet();
    CRule rule;
    rule.name = "menet";
    rule.k_min = 2;  // a_1
    rule.value = [](long long l) {
        if (l < 2) throw DomainError("menet C-rule defined for l >= 2");
        long long n = isqrt64(l - 1) - 1;  // a_{2n+1} <= l < a_{2n+3}
        return pow_rational(Rational(2), n + 1);
    };
    rule.tail_from = [](long long l0, double p) -> std::optional<Rational> {
        if (!is_integer(p)) return std::nullopt;
        if (l0 < 2) throw DomainError("menet C-rule defined for l >= 2");
        auto pi = static_cast<long long>(p);
        long long n0 = isqrt64(l0 - 1) - 1;
        Rational q = pow_rational(Rational(1, 2), pi);
        // remainder of block n0, then sum_{n>n0} (2n+3) q^{n+1}
        long long block_end = 1 + (n0 + 2) * (n0 + 2);  // a_{2n0+3}
        Rational rest = Rational(block_end - l0) * pow_rational(q, n0 + 1);
        Rational beyond = series::arith_geometric_tail(q, 2, 3, n0 + 1) * q;
        return rest + beyond;
    };
    rule.count_floor = [a](long long l) -> std::optional<Rational> {
        if (l < 2) return std::nullopt;
        long long n = isqrt64(l - 1) - 1;
        return Rational(a.at(2 * n));
    };
    rule.ratio_floor_limit = Rational(1);
    rule.descriptor = {{"name", "menet"}};
    return rule;
}

KSequence block4_marker_kseq(const MarkerSequence& a) {
    KSequence ks;
    ks.name = "block4-markers";
    ks.min_l = 1;
    ks.at = [a](long long l) {
        Int k = block4_marker_position(a, l + 1) - 1;  // sum_{j<=l} a_j + l
        if (k > std::numeric_limits<long long>::max()) throw DomainError("marker index overflows");
        return k.convert_to<long long>();
    };
    ks.closed_form_threshold = Rational(1);
    ks.closed_form = [a](long long L) {
        std::vector<IntSet::Interval> intervals;
        intervals.emplace_back(0, a.at_int64(1));
        for (long long n = 1; n < L; ++n) {
            Int start = block4_marker_position(a, n + 1);
            Int end = a.at(n + 1);
            if (start <= end) intervals.emplace_back(start.convert_to<long long>(), end.convert_to<long long>());
        }
        Int tail = block4_marker_position(a, L + 1);
        return IntSet::from_intervals(std::move(intervals), tail.convert_to<long long>());
    };
    ks.stable_upto = [a](long long L) {
        Int v = a.at(L);
        if (v > std::numeric_limits<long long>::max()) return std::numeric_limits<long long>::max();
        return v.convert_to<long long>();
    };
    ks.descriptor = {{"name", "block4-markers"}, {"marker_rule", a.name()}};
    return ks;
}

// --- replay --------------------------------------------------------------------

Verdict replay_verdict(const nlohmann::json& serialized) {
    const std::string criterion = serialized.at("criterion").get<std::string>();
    const auto& params = serialized.at("parameters");
    const auto& horizons = serialized.at("horizons");

    WeightSpec spec = weight_spec_from_json(params.at("spec"));
    PrefixTable table(spec, horizons.at("table").get<long long>());

    auto get_p = [&]() { return std::strtod(params.at("p").get<std::string>().c_str(), nullptr); };

    if (criterion == "fhc")
        return check_frequent_hypercyclicity(table, get_p(), horizons.at("series").get<long long>());
    if (criterion == "hc-subspace")
        return check_hypercyclic_subspace(table, horizons.at("n").get<long long>(),
                                          horizons.at("k").get<long long>());
    if (criterion == "hypercyclic") return check_hypercyclic(table, horizons.at("k").get<long long>());
    if (criterion == "no-fhc-subspace") {
        if (params.at("crule").at("name").get<std::string>() != "menet")
            throw DomainError("only the builtin menet C-rule can be replayed");
        double delta = std::strtod(params.at("delta").get<std::string>().c_str(), nullptr);
        return check_no_fhc_subspace(table, menet_c_rule(), get_p(), horizons.at("k").get<long long>(),
                                     delta);
    }
    if (criterion == "fhc-subspace") {
        const auto& kd = params.at("kseq");
        if (kd.at("name").get<std::string>() != "block4-markers")
            throw DomainError("only the builtin block4 marker sequence can be replayed");
        std::string rule_name = kd.at("marker_rule").get<std::string>();
        if (rule_name.rfind("geometric-", 0) != 0)
            throw DomainError("only geometric marker rules can be replayed");
        MarkerSequence a = MarkerSequence::geometric(std::stoll(rule_name.substr(10)));
        Rational C = parse_rational(params.at("C").get<std::string>());
        Rational rho = parse_rational(params.at("rho").get<std::string>());
        return check_fhc_subspace(table, block4_marker_kseq(a), C, get_p(),
                                  horizons.at("k").get<long long>(), rho);
    }
    throw DomainError("unknown criterion in serialized verdict: " + criterion);
}

}  // namespace shiftlab
