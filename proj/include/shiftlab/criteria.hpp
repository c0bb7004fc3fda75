#pragma once

#include "shiftlab/density.hpp"
#include "shiftlab/prefix_table.hpp"
#include "shiftlab/rational.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shiftlab {

class MarkerSequence;

// Checker outcome. One-directional theorems never yield CertifiedFalse; a
// certified status always carries evidence sufficient to replay the run.
enum class Status { CertifiedTrue, CertifiedFalse, Inconclusive };

std::string status_string(Status s);

struct Verdict {
    std::string criterion;
    Status status = Status::Inconclusive;
    nlohmann::ordered_json parameters;  // spec descriptor + thresholds, replayable
    nlohmann::ordered_json horizons;
    nlohmann::ordered_json evidence;
    std::vector<std::string> warnings;

    nlohmann::ordered_json to_json() const;
    int exit_code() const;  // 0 certified-true, 3 certified-false, 4 inconclusive
};

// Threshold rule (C_k) for the non-existence criterion, with an optional
// exact closed-form tail for sum (1/C_k)^p and a declared per-index count
// floor whose ratio tends to 1. Every declared piece is re-validated on the
// computed range before it can certify anything.
struct CRule {
    std::string name;
    long long k_min = 0;
    std::function<Rational(long long)> value;
    std::function<std::optional<Rational>(long long, double)> tail_from;  // sum_{l >= l0} C_l^{-p}
    std::function<std::optional<Rational>(long long)> count_floor;
    std::optional<Rational> ratio_floor_limit;
    nlohmann::ordered_json descriptor;
};

// Index rule (k_l) for the existence criterion. A rule may declare the exact
// closed form of the finite intersection of its G-sets at one threshold,
// plus the range [0, stable_upto(L)] on which adding further indices cannot
// change the intersection.
struct KSequence {
    std::string name;
    long long min_l = 1;
    std::function<long long(long long)> at;
    std::optional<Rational> closed_form_threshold;
    std::function<IntSet(long long)> closed_form;      // finite-L closed form, exact
    std::function<long long(long long)> stable_upto;
    nlohmann::ordered_json descriptor;
};

// Builtin rules for the two constructions.
CRule menet_c_rule();
KSequence block4_marker_kseq(const MarkerSequence& a);

// sum_k prod_{v<=k} |w_v|^{-p} < inf  iff  B_w is frequently hypercyclic.
Verdict check_frequent_hypercyclicity(const PrefixTable& table, double p, long long horizon);

// sup_n inf_k prod_{v=1}^{n} w_{k+v} <= 1 characterizes hypercyclic subspaces
// for hypercyclic shifts. Certification is structural (unbounded unit runs /
// eventually-constant tails); finite horizons alone stay inconclusive.
Verdict check_hypercyclic_subspace(const PrefixTable& table, long long horizon_n, long long horizon_k);

// Non-existence of frequently hypercyclic subspaces: sum (1/C_k)^p < inf and
// #{n : ||B^n e_k|| >= C_k}/(k+1) -> 1. One-directional: never CertifiedFalse.
Verdict check_no_fhc_subspace(const PrefixTable& table, const CRule& rule, double p, long long horizon,
                              double delta);

// Existence via the intersection of G(k_l, C) having positive lower density.
Verdict check_fhc_subspace(const PrefixTable& table, const KSequence& kseq, const Rational& C, double p,
                           long long horizon, const Rational& rho);

// Plumbing helper: unbounded prefix products as the hypercyclicity surrogate.
Verdict check_hypercyclic(const PrefixTable& table, long long horizon);

// Re-runs a serialized certified verdict from its own parameters; the caller
// compares the serialized bytes.
Verdict replay_verdict(const nlohmann::json& serialized);

}  // namespace shiftlab
