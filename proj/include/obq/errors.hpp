#pragma once

#include <stdexcept>
#include <string>

namespace obq {

// Raised when an adaptive numerical procedure fails its own accuracy check
// (quadrature node-doubling disagreement, extrapolation mismatch, mass
// deficit in a discretization). Distinct from std::domain_error, which
// signals bad arguments.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace obq
