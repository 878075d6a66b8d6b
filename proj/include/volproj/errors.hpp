#pragma once

#include <stdexcept>

namespace volproj {

// Input whose relevant subsets all span zero volume (or a requested fixed
// subset that does). Distinguished from plain invalid input so callers can
// report it separately.
struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Threshold search exhausted its bracket without certifying the union bound.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed point-set file.
struct CsvParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace volproj
