#pragma once

#include <string>
#include <vector>

#include "fourcur/coeff_oracle.hpp"

namespace fourcur {

/// Built-in test functions on [-pi,pi]^2:
///   f1: kink function  ((5^{3/4} * 15 / (4 sqrt(3)))^2 *
///       prod_i max{0, 1/5 - (x_i - 1/2)^2}
///   f2: (1 - x1^2 - x2^2) * exp(x1 * cos(x2))
///   f3: 1/(0.1 + x1^2 + x2^2) + 1/(0.01 + (x1-0.5)^2 + (x2-0.5)^2)
/// They are used exactly as restrictions to the square; no periodization.

/// Evaluate a registered function. Throws std::invalid_argument for an
/// unknown name.
double test_function(const std::string& name, double x1, double x2);

/// Look up a function by name. Besides registered names, "const:<value>"
/// resolves to the constant function.
BivariateFn resolve_function(const std::string& name);

/// Add (or replace) a named function in the registry.
void register_function(const std::string& name, BivariateFn fn);

std::vector<std::string> registered_functions();

}  // namespace fourcur
