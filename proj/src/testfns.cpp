#include "fourcur/testfns.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace fourcur {

namespace {

double f1_kink(double x1, double x2) {
  // (5^{3/4} * 15 / (4 sqrt(3)))^2 * prod_i max{0, 1/5 - (x_i - 1/2)^2}
  static const double scale = [] {
    const double c = std::pow(5.0, 0.75) * 15.0 / (4.0 * std::sqrt(3.0));
    return c * c;
  }();
  const double p1 = std::max(0.0, 0.2 - (x1 - 0.5) * (x1 - 0.5));
  const double p2 = std::max(0.0, 0.2 - (x2 - 0.5) * (x2 - 0.5));
  return scale * p1 * p2;
}

double f2_smooth(double x1, double x2) {
  return (1.0 - x1 * x1 - x2 * x2) * std::exp(x1 * std::cos(x2));
}

double f3_peaks(double x1, double x2) {
  return 1.0 / (0.1 + x1 * x1 + x2 * x2) +
         1.0 / (0.01 + (x1 - 0.5) * (x1 - 0.5) + (x2 - 0.5) * (x2 - 0.5));
}

std::map<std::string, BivariateFn>& registry() {
  static std::map<std::string, BivariateFn> reg = {
      {"f1", f1_kink}, {"f2", f2_smooth}, {"f3", f3_peaks}};
  return reg;
}

}  // namespace

double test_function(const std::string& name, double x1, double x2) {
  return resolve_function(name)(x1, x2);
}

BivariateFn resolve_function(const std::string& name) {
  if (name.rfind("const:", 0) == 0) {
    const double c = std::stod(name.substr(6));
    return [c](double, double) { return c; };
  }
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) {
    throw std::invalid_argument("unknown function: " + name);
  }
  return it->second;
}

void register_function(const std::string& name, BivariateFn fn) {
  registry()[name] = std::move(fn);
}

std::vector<std::string> registered_functions() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

}  // namespace fourcur
