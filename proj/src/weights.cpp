#include "shiftlab/weights.hpp"

#include "shiftlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shiftlab {

struct WeightSpec::Impl {
    std::string label;
    nlohmann::ordered_json descriptor;
    Rational bound;
    Rational min_value;
    bool power_of_two = false;
    StructuralFacts facts;

    // explicit-runs storage
    std::vector<Run> runs;
    std::vector<long long> run_starts;  // start index of each run, 1-based

    // rule storage
    std::function<Rational(long long)> value_at;
    std::function<RunView(long long)> run_at;
};

namespace {

void check_index(long long k) {
    if (k < 1) throw DomainError("weight index must be >= 1, got " + std::to_string(k));
}

}  // namespace

WeightSpec WeightSpec::from_runs(std::vector<Run> runs, std::string label) {
    if (runs.empty()) throw SpecParseError("weight spec needs at least one run");
    auto impl = std::make_shared<Impl>();
    impl->label = std::move(label);
    impl->run_starts.reserve(runs.size());
    long long next_start = 1;
    bool pow2 = true;
    for (size_t i = 0; i < runs.size(); ++i) {
        const Run& r = runs[i];
        if (r.value <= 0)
            throw SpecParseError("run " + std::to_string(i) + ": weight value must be positive");
        if (r.length) {
            if (*r.length < 1)
                throw SpecParseError("run " + std::to_string(i) + ": length must be >= 1");
            if (i + 1 == runs.size())
                throw SpecParseError("final run must have infinite length so every index is covered");
        } else if (i + 1 != runs.size()) {
            throw SpecParseError("run " + std::to_string(i) + ": infinite length only allowed in final position");
        }
        impl->run_starts.push_back(next_start);
        if (r.length) next_start += *r.length;
        if (impl->bound == 0 || r.value > impl->bound) impl->bound = r.value;
        if (impl->min_value == 0 || r.value < impl->min_value) impl->min_value = r.value;
        if (!exact_pow2_exponent(r.value)) pow2 = false;
    }
    impl->power_of_two = pow2;
    impl->runs = std::move(runs);

    const Run& tail = impl->runs.back();
    long long tail_start = impl->run_starts.back();
    impl->facts.eventual_value = {tail.value, tail_start};
    if (tail.value == 1) {
        long long start = tail_start;
        impl->facts.unit_runs = UnitRunWitness{[start](long long) { return Int(start); }};
    }
    if (tail.value > 1) {
        // log2 P(tail_start - 1 + i) = log2 P(tail_start - 1) + i * log2 v; the
        // claimed floor leaves 2 bits of slack for the double arithmetic here.
        double prefix_log2 = 0.0;
        for (size_t i = 0; i + 1 < impl->runs.size(); ++i)
            prefix_log2 += static_cast<double>(*impl->runs[i].length) * log2_approx(impl->runs[i].value);
        double per = log2_approx(tail.value);
        impl->facts.growth = GrowthWitness{[per, prefix_log2, tail_start](long long i) {
            long long e = static_cast<long long>(std::floor(prefix_log2 + per * static_cast<double>(i))) - 2;
            return std::pair<Int, long long>(Int(tail_start - 1 + i), e);
        }};
    }

    nlohmann::ordered_json desc;
    desc["kind"] = "blocks";
    auto& jr = desc["runs"] = nlohmann::ordered_json::array();
    for (const Run& r : impl->runs) {
        nlohmann::ordered_json e = nlohmann::ordered_json::array();
        e.push_back(rational_string(r.value));
        if (r.length) e.push_back(*r.length);
        else e.push_back("inf");
        jr.push_back(std::move(e));
    }
    impl->descriptor = std::move(desc);

    WeightSpec spec;
    spec.impl_ = std::move(impl);
    return spec;
}

WeightSpec WeightSpec::constant(Rational value) {
    std::vector<Run> runs;
    runs.push_back(Run{std::move(value), std::nullopt});
    return from_runs(std::move(runs), "constant");
}

WeightSpec WeightSpec::from_rule(std::string label, nlohmann::ordered_json descriptor, Rational bound,
                                 bool power_of_two, Rational min_value,
                                 std::function<Rational(long long)> value_at,
                                 std::function<RunView(long long)> run_at, StructuralFacts facts) {
    auto impl = std::make_shared<Impl>();
    impl->label = std::move(label);
    impl->descriptor = std::move(descriptor);
    impl->bound = std::move(bound);
    impl->min_value = std::move(min_value);
    impl->power_of_two = power_of_two;
    impl->value_at = std::move(value_at);
    impl->run_at = std::move(run_at);
    impl->facts = std::move(facts);
    WeightSpec spec;
    spec.impl_ = std::move(impl);
    return spec;
}

Rational WeightSpec::weight_at(long long k) const {
    check_index(k);
    if (impl_->value_at) return impl_->value_at(k);
    return run_containing(k).value;
}

RunView WeightSpec::run_containing(long long k) const {
    check_index(k);
    if (impl_->run_at) return impl_->run_at(k);
    const auto& starts = impl_->run_starts;
    auto it = std::upper_bound(starts.begin(), starts.end(), k);
    size_t idx = static_cast<size_t>(it - starts.begin()) - 1;
    RunView view;
    view.value = impl_->runs[idx].value;
    view.start = starts[idx];
    if (impl_->runs[idx].length) view.end = starts[idx] + *impl_->runs[idx].length;
    return view;
}

const Rational& WeightSpec::bound() const { return impl_->bound; }
const Rational& WeightSpec::min_value() const { return impl_->min_value; }
bool WeightSpec::power_of_two() const { return impl_->power_of_two; }
const StructuralFacts& WeightSpec::facts() const { return impl_->facts; }
const nlohmann::ordered_json& WeightSpec::descriptor() const { return impl_->descriptor; }
const std::string& WeightSpec::label() const { return impl_->label; }

}  // namespace shiftlab
