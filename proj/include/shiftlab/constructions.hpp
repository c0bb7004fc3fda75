#pragma once

#include "shiftlab/intset.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/weights.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <string>

namespace shiftlab {

// Strictly increasing integer markers delimiting runs of equal weight values.
// Evaluation is exact arbitrary-precision: geometric rules overflow fixed
// width integers near n = 40.
class MarkerSequence {
  public:
    // a_{2n} = 1 + n(n+1), a_{2n+1} = 1 + (n+1)^2, indexed from 0.
    static MarkerSequence menet();
    // a_n = base^(n-1), indexed from 1; base >= 2.
    static MarkerSequence geometric(long long base);
    static MarkerSequence from_rule(std::string name, long long min_index,
                                    std::function<Int(long long)> rule);

    Int at(long long n) const;
    long long at_int64(long long n) const;  // DomainError when the value overflows
    long long min_index() const;
    const std::string& name() const;

    // Scans [min_index, n_hi]; throws ConstructionError on a violation.
    void require_strictly_increasing(long long n_hi) const;

  private:
    MarkerSequence() = default;
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// w_k = 2 on [a_{2n}, a_{2n+1}), 1 otherwise, for the menet marker family.
WeightSpec menet_weights();

// w = (4, 1^{a_1}, 4, 1^{a_2}, 4, ...): value 4 exactly at the positions
// m_n = sum_{k<n} a_k + n, 1 elsewhere. Validates that `a` is increasing.
WeightSpec block4_weights(const MarkerSequence& a);

// The marker positions m_n themselves (1-based n).
Int block4_marker_position(const MarkerSequence& a, long long n);

// Closed-form A = [0, a_1] ∪ ⋃_{n>=1} [sum_{k<=n} a_k + (n+1), a_{n+1}],
// truncated at the horizon. A partially visible last interval is truncated
// and flagged.
struct ExampleASet {
    IntSet set;
    bool truncated = false;
};
ExampleASet example_a_set(const MarkerSequence& a, long long horizon);

// Reports re-deriving every displayed identity of the two constructions;
// exact rationals carried throughout, decimals only in the rendering.
nlohmann::ordered_json verify_menet_identities(long long n_max, double p);
nlohmann::ordered_json verify_example8_conditions(const MarkerSequence& a, double p, long long n_max);

}  // namespace shiftlab
