#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace shiftlab {

// Set of non-negative integers: sorted, disjoint, non-adjacent closed
// intervals [a, b] plus an optional cofinite ray [tail, inf). Canonical and
// immutable; membership and counting are exact.
class IntSet {
  public:
    using Interval = std::pair<long long, long long>;

    IntSet() = default;  // empty
    static IntSet everything() { return ray(0); }
    static IntSet ray(long long t);
    static IntSet single(long long a, long long b);  // [a, b]
    static IntSet from_intervals(std::vector<Interval> intervals, std::optional<long long> tail = {});
    static IntSet from_sorted_members(std::span<const long long> members);

    bool empty() const { return intervals_.empty() && !tail_; }
    bool contains(long long n) const;
    long long count_upto(long long N) const;  // #(A ∩ [0, N])

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::optional<long long>& tail() const { return tail_; }

    IntSet clipped(long long N) const;  // A ∩ [0, N]
    std::vector<long long> members_upto(long long N) const;

    bool operator==(const IntSet& rhs) const = default;

    nlohmann::ordered_json to_json() const;
    static IntSet from_json(const nlohmann::json& j);

    friend IntSet set_union(const IntSet& a, const IntSet& b);
    friend IntSet set_intersect(const IntSet& a, const IntSet& b);
    friend IntSet set_complement(const IntSet& a);  // relative to Z+

  private:
    // Internal edit form: intervals with b == kInf meaning a ray.
    static IntSet canonicalize(std::vector<Interval> raw);
    std::vector<Interval> to_raw() const;

    std::vector<Interval> intervals_;
    std::optional<long long> tail_;
    std::vector<long long> cum_;  // cumulative member counts per interval
};

}  // namespace shiftlab
