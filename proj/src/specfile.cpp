#include "shiftlab/specfile.hpp"

#include "shiftlab/constructions.hpp"
#include "shiftlab/errors.hpp"

#include <fstream>
#include <set>

namespace shiftlab {

namespace {

void reject_unknown_fields(const nlohmann::json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw SpecParseError("unknown field '" + it.key() + "' in " + where);
    }
}

Rational parse_value(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw SpecParseError(where + ": weight values must be decimal strings or integers");
}

WeightSpec blocks_from_json(const nlohmann::json& j) {
    reject_unknown_fields(j, {"kind", "runs"}, "weight spec");
    if (!j.contains("runs") || !j.at("runs").is_array() || j.at("runs").empty())
        throw SpecParseError("blocks spec requires a non-empty 'runs' array");
    std::vector<WeightSpec::Run> runs;
    size_t i = 0;
    for (const auto& rj : j.at("runs")) {
        std::string where = "run " + std::to_string(i);
        if (!rj.is_array() || rj.size() != 2)
            throw SpecParseError(where + ": expected [value, length]");
        WeightSpec::Run run;
        run.value = parse_value(rj.at(0), where);
        if (run.value <= 0) throw SpecParseError(where + ": weight value must be positive");
        const auto& len = rj.at(1);
        if (len.is_string()) {
            if (len.get<std::string>() != "inf")
                throw SpecParseError(where + ": length must be a positive integer or \"inf\"");
        } else if (len.is_number_integer()) {
            long long n = len.get<long long>();
            if (n < 1) throw SpecParseError(where + ": length must be >= 1");
            run.length = n;
        } else {
            throw SpecParseError(where + ": length must be a positive integer or \"inf\"");
        }
        runs.push_back(std::move(run));
        ++i;
    }
    return WeightSpec::from_runs(std::move(runs));
}

WeightSpec builtin_from_json(const nlohmann::json& j) {
    reject_unknown_fields(j, {"kind", "name", "params"}, "weight spec");
    if (!j.contains("name")) throw SpecParseError("builtin spec requires 'name'");
    std::string name = j.at("name").get<std::string>();
    if (name == "menet") {
        if (j.contains("params") && !j.at("params").empty())
            throw SpecParseError("builtin menet takes no params");
        return menet_weights();
    }
    if (name == "block4-geometric") {
        long long base = 3;
        if (j.contains("params")) {
            reject_unknown_fields(j.at("params"), {"base"}, "builtin params");
            if (j.at("params").contains("base")) base = j.at("params").at("base").get<long long>();
        }
        if (base < 2) throw SpecParseError("block4-geometric base must be >= 2");
        return block4_weights(MarkerSequence::geometric(base));
    }
    throw SpecParseError("unknown builtin weight spec '" + name + "'");
}

}  // namespace

WeightSpec weight_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw SpecParseError("weight spec must be an object with a 'kind' field");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "blocks") return blocks_from_json(j);
    if (kind == "builtin") return builtin_from_json(j);
    throw SpecParseError("weight spec kind must be 'blocks' or 'builtin', got '" + kind + "'");
}

WeightSpec load_weight_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open weight spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SpecParseError("invalid JSON in " + path + ": " + e.what());
    }
    return weight_spec_from_json(j);
}

}  // namespace shiftlab
