#include "shiftlab/report.hpp"

namespace shiftlab {

nlohmann::ordered_json num_value(const Rational& value) {
    nlohmann::ordered_json j;
    j["decimal"] = decimal_string(value, kDecimalDigits);
    j["digits"] = kDecimalDigits;
    j["rational"] = rational_string(value);
    return j;
}

nlohmann::ordered_json num_value(double value) {
    nlohmann::ordered_json j;
    j["decimal"] = decimal_string(value);
    j["digits"] = kDecimalDigits;
    return j;
}

nlohmann::ordered_json num_value(const series::Bound& bound) {
    if (bound.exact) return num_value(*bound.exact);
    return num_value(bound.upper);
}

}  // namespace shiftlab
