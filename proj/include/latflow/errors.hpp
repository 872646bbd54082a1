#pragma once

#include <stdexcept>
#include <string>

namespace latflow {

// Runtime numerical failure (non-convergence, overflow risk, infeasible
// enumeration), as opposed to std::invalid_argument for bad input.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace latflow
