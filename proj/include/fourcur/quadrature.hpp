#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <string_view>

namespace fourcur {

enum class QuadKind { CC, GL, NC };

const char* to_string(QuadKind kind);
QuadKind quad_kind_from_string(std::string_view name);

/// One-dimensional positive-weight quadrature rule on [-pi, pi].
/// Nodes are strictly increasing; weights are strictly positive and sum to 2*pi.
/// Immutable after construction.
struct Quad1D {
  QuadKind kind;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Build an M-point rule of the given kind.
///
/// CC and GL are the standard rules on [-1,1] rescaled to [-pi,pi]
/// (nodes * pi, weights * pi). NC is the equispaced periodic trapezoid rule
/// x_m = -pi + 2*pi*(m-1)/M with uniform weights 2*pi/M.
Quad1D make_rule(QuadKind kind, int M);

using Integrand2D = std::function<std::complex<double>(double, double)>;

/// Tensor-product double sum  sum_{i1,i2} w1_i1 * w2_i2 * g(x1_i1, x2_i2),
/// accumulated row-major over (i1, i2). Pure; safe to call concurrently.
/// Throws NumericDomainError if g evaluates to a non-finite value.
std::complex<double> integrate2d(const Quad1D& r1, const Quad1D& r2,
                                 const Integrand2D& g);

}  // namespace fourcur
