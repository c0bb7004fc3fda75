#pragma once

#include "shiftlab/rational.hpp"
#include "shiftlab/series.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

// Maximal run of equal weight values covering index k; [start, end), 1-based,
// end absent for an eventually-constant tail.
struct RunView {
    Rational value;
    long long start = 1;
    std::optional<long long> end;
};

// Structural facts a weight rule declares about itself. Checkers never take
// them on faith: every fact is re-validated on the computed range before it
// contributes to a certified verdict.

// log2 P(k) >= ceil(k * alpha_num / alpha_den) + beta for all k >= from.
struct ExponentFloor {
    long long alpha_num = 1;
    long long alpha_den = 1;
    long long beta = 0;
    long long from = 0;
};

// Index blocks [start(n), start(n+1)) for n >= first, with log2 P >= exp_floor(n)
// inside block n, and block sums of P^{-p} dominated by coefficient(p) * ratio(p)^n.
// When ratio(p) >= 1 and sums_grow is set, the rule instead witnesses divergence.
struct BlockBound {
    long long first = 1;
    std::function<Int(long long)> start;
    std::function<long long(long long)> exp_floor;
    std::function<series::Bound(double)> coefficient;
    std::function<series::Bound(double)> ratio;
    bool sums_grow_when_ratio_ge_1 = false;
};

// Start index of a run of weight 1 of length >= n.
struct UnitRunWitness {
    std::function<Int(long long)> start_of_run;
};

// Indices k_i with log2 P(k_i) >= e_i and e_i unbounded.
struct GrowthWitness {
    std::function<std::pair<Int, long long>(long long)> marker_exponent;
};

struct StructuralFacts {
    std::optional<ExponentFloor> exponent_floor;
    std::optional<BlockBound> block_bound;
    std::optional<std::pair<Rational, long long>> eventual_value;  // (value, from-index)
    std::optional<UnitRunWitness> unit_runs;
    std::optional<GrowthWitness> growth;
};

// A positive bounded weight sequence (w_k)_{k>=1}, either explicit runs or a
// deterministic rule. Immutable and cheap to copy; queries are thread-safe.
class WeightSpec {
  public:
    struct Run {
        Rational value;
        std::optional<long long> length;  // absent = infinite tail (final run only)
    };

    WeightSpec() = default;

    // Explicit runs; the final run must be an infinite tail so every k >= 1
    // is covered. Throws SpecParseError naming the offending run.
    static WeightSpec from_runs(std::vector<Run> runs, std::string label = "blocks");
    static WeightSpec constant(Rational value);

    static WeightSpec from_rule(std::string label, nlohmann::ordered_json descriptor, Rational bound,
                                bool power_of_two, Rational min_value,
                                std::function<Rational(long long)> value_at,
                                std::function<RunView(long long)> run_at, StructuralFacts facts);

    Rational weight_at(long long k) const;  // k >= 1, else DomainError
    RunView run_containing(long long k) const;

    const Rational& bound() const;
    const Rational& min_value() const;
    bool power_of_two() const;
    const StructuralFacts& facts() const;
    const nlohmann::ordered_json& descriptor() const;
    const std::string& label() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace shiftlab
