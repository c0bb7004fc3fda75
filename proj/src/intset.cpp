#include "shiftlab/intset.hpp"

#include "shiftlab/errors.hpp"

#include <algorithm>
#include <limits>

namespace shiftlab {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max();
}

IntSet IntSet::ray(long long t) {
    if (t < 0) t = 0;
    IntSet s;
    s.tail_ = t;
    return s;
}

IntSet IntSet::single(long long a, long long b) {
    return from_intervals({{a, b}});
}

IntSet IntSet::canonicalize(std::vector<Interval> raw) {
    for (const auto& [a, b] : raw) {
        if (a < 0 || b < a) throw DomainError("bad interval in integer set");
    }
    std::sort(raw.begin(), raw.end());
    std::vector<Interval> merged;
    for (const auto& iv : raw) {
        if (!merged.empty() && (merged.back().second == kInf ||
                                iv.first <= merged.back().second + 1)) {
            merged.back().second = std::max(merged.back().second, iv.second);
        } else {
            merged.push_back(iv);
        }
    }
    IntSet s;
    for (const auto& iv : merged) {
        if (iv.second == kInf) {
            s.tail_ = iv.first;
            break;  // sorted: nothing after a ray
        }
        s.intervals_.push_back(iv);
    }
    s.cum_.reserve(s.intervals_.size());
    long long total = 0;
    for (const auto& [a, b] : s.intervals_) {
        total += b - a + 1;
        s.cum_.push_back(total);
    }
    return s;
}

IntSet IntSet::from_intervals(std::vector<Interval> intervals, std::optional<long long> tail) {
    if (tail) {
        if (*tail < 0) throw DomainError("tail start must be >= 0");
        intervals.emplace_back(*tail, kInf);
    }
    return canonicalize(std::move(intervals));
}

IntSet IntSet::from_sorted_members(std::span<const long long> members) {
    std::vector<Interval> raw;
    for (long long m : members) {
        if (!raw.empty() && m <= raw.back().second + 1) {
            if (m > raw.back().second) raw.back().second = m;
        } else {
            raw.emplace_back(m, m);
        }
    }
    return canonicalize(std::move(raw));
}

std::vector<IntSet::Interval> IntSet::to_raw() const {
    std::vector<Interval> raw = intervals_;
    if (tail_) raw.emplace_back(*tail_, kInf);
    return raw;
}

bool IntSet::contains(long long n) const {
    if (n < 0) return false;
    if (tail_ && n >= *tail_) return true;
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), n,
                               [](long long v, const Interval& iv) { return v < iv.first; });
    if (it == intervals_.begin()) return false;
    --it;
    return n <= it->second;
}

long long IntSet::count_upto(long long N) const {
    if (N < 0) return 0;
    long long count = 0;
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), N,
                               [](long long v, const Interval& iv) { return v < iv.first; });
    size_t idx = static_cast<size_t>(it - intervals_.begin());
    if (idx > 0) {
        count = cum_[idx - 1];
        const auto& last = intervals_[idx - 1];
        if (N < last.second) count -= last.second - N;  // partial last interval
    }
    if (tail_ && N >= *tail_) count += N - *tail_ + 1;
    return count;
}

IntSet IntSet::clipped(long long N) const {
    if (N < 0) return IntSet();
    std::vector<Interval> raw;
    for (const auto& [a, b] : intervals_) {
        if (a > N) break;
        raw.emplace_back(a, std::min(b, N));
    }
    if (tail_ && *tail_ <= N) raw.emplace_back(*tail_, N);
    return canonicalize(std::move(raw));
}

std::vector<long long> IntSet::members_upto(long long N) const {
    std::vector<long long> out;
    IntSet c = clipped(N);
    for (const auto& [a, b] : c.intervals_)
        for (long long m = a; m <= b; ++m) out.push_back(m);
    return out;
}

nlohmann::ordered_json IntSet::to_json() const {
    nlohmann::ordered_json j;
    auto& iv = j["intervals"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : intervals_) iv.push_back({a, b});
    if (tail_) j["tail"] = *tail_;
    return j;
}

IntSet IntSet::from_json(const nlohmann::json& j) {
    std::vector<Interval> intervals;
    for (const auto& iv : j.at("intervals"))
        intervals.emplace_back(iv.at(0).get<long long>(), iv.at(1).get<long long>());
    std::optional<long long> tail;
    if (j.contains("tail")) tail = j.at("tail").get<long long>();
    return from_intervals(std::move(intervals), tail);
}

IntSet set_union(const IntSet& a, const IntSet& b) {
    std::vector<IntSet::Interval> raw = a.to_raw();
    auto rb = b.to_raw();
    raw.insert(raw.end(), rb.begin(), rb.end());
    return IntSet::canonicalize(std::move(raw));
}

IntSet set_intersect(const IntSet& a, const IntSet& b) {
    auto ra = a.to_raw();
    auto rb = b.to_raw();
    std::vector<IntSet::Interval> out;
    size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
        long long lo = std::max(ra[i].first, rb[j].first);
        long long hi = std::min(ra[i].second, rb[j].second);
        if (lo <= hi) out.emplace_back(lo, hi);
        if (ra[i].second < rb[j].second) ++i;
        else ++j;
    }
    return IntSet::canonicalize(std::move(out));
}

IntSet set_complement(const IntSet& a) {
    std::vector<IntSet::Interval> out;
    long long next = 0;
    for (const auto& [lo, hi] : a.to_raw()) {
        if (lo > next) out.emplace_back(next, lo - 1);
        if (hi == kInf) return IntSet::canonicalize(std::move(out));
        next = hi + 1;
    }
    out.emplace_back(next, kInf);
    return IntSet::canonicalize(std::move(out));
}

}  // namespace shiftlab
