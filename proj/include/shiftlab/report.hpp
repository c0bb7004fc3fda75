#pragma once

#include "shiftlab/rational.hpp"
#include "shiftlab/series.hpp"

#include <nlohmann/json.hpp>

namespace shiftlab {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kDecimalDigits = 17;

// Report values carry a decimal string with an explicit precision marker and,
// when the value is exact, the rational string alongside.
nlohmann::ordered_json num_value(const Rational& value);
nlohmann::ordered_json num_value(double value);
nlohmann::ordered_json num_value(const series::Bound& bound);

}  // namespace shiftlab
