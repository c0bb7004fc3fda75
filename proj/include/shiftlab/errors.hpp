#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

// Argument outside the operation's domain (index 0 weight query, p < 1, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Query beyond a table's construction horizon; caller may rebuild larger.
struct HorizonError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Weight-spec file or run-config rejected, with a field/run diagnostic.
struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Infeasible construction parameters or detected term interference.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace shiftlab
