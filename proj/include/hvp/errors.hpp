#pragma once

#include <stdexcept>
#include <string>

namespace hvp {

// invalid_argument covers bad parameters/config. These two mark the other
// failure classes the CLI maps to distinct exit codes.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hvp
