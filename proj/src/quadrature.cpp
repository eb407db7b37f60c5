#include "fourcur/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fourcur/errors.hpp"

namespace fourcur {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_M.
// Converges to ~1e-15 on the roots; nodes come out ascending.
void gauss_legendre(int M, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(M);
  w.resize(M);
  const int half = (M + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double z = std::cos(kPi * (i - 0.25) / (M + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= M; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = M * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i - 1] = -z;
    x[M - i] = z;
    w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[M - i] = w[i - 1];
  }
  if (M == 1) {  // z = 0; the loop above already handles it, keep it exact
    x[0] = 0.0;
    w[0] = 2.0;
  }
}

// Clenshaw-Curtis on [-1,1] with M points x_j = -cos(j*pi/(M-1)) (ascending).
// Weights from the cosine-series form of the interpolatory rule; the array
// is symmetric, so it pairs with the ascending node order unchanged.
void clenshaw_curtis(int M, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(M);
  w.resize(M);
  if (M == 1) {
    x[0] = 0.0;
    w[0] = 2.0;
    return;
  }
  const int n = M - 1;
  for (int j = 0; j <= n; ++j) {
    const double theta = j * kPi / n;
    x[j] = -std::cos(theta);
    double sum = 0.0;
    for (int m = 0; m <= n / 2; ++m) {
      const double eta = (m == 0 || 2 * m == n) ? 0.5 : 1.0;
      sum += eta * (2.0 / (1.0 - 4.0 * static_cast<double>(m) * m)) *
             std::cos(2.0 * m * theta);
    }
    const double cj = (j == 0 || j == n) ? 0.5 : 1.0;
    w[j] = (2.0 / n) * cj * sum;
  }
  // endpoints of the ascending node list can pick up -0.0 / rounding dust
  x[0] = -1.0;
  x[n] = 1.0;
}

}  // namespace

const char* to_string(QuadKind kind) {
  switch (kind) {
    case QuadKind::CC: return "CC";
    case QuadKind::GL: return "GL";
    case QuadKind::NC: return "NC";
  }
  return "?";
}

QuadKind quad_kind_from_string(std::string_view name) {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "CC") return QuadKind::CC;
  if (s == "GL") return QuadKind::GL;
  if (s == "NC") return QuadKind::NC;
  throw std::invalid_argument("unknown quadrature kind: " + std::string(name));
}

Quad1D make_rule(QuadKind kind, int M) {
  if (M < 1) throw std::invalid_argument("quadrature size M must be >= 1");
  Quad1D rule;
  rule.kind = kind;
  switch (kind) {
    case QuadKind::NC: {
      rule.nodes.resize(M);
      rule.weights.setConstant(M, 2.0 * kPi / M);
      for (int m = 0; m < M; ++m) rule.nodes[m] = -kPi + 2.0 * kPi * m / M;
      break;
    }
    case QuadKind::GL: {
      gauss_legendre(M, rule.nodes, rule.weights);
      rule.nodes *= kPi;
      rule.weights *= kPi;
      break;
    }
    case QuadKind::CC: {
      clenshaw_curtis(M, rule.nodes, rule.weights);
      rule.nodes *= kPi;
      rule.weights *= kPi;
      break;
    }
  }
  return rule;
}

std::complex<double> integrate2d(const Quad1D& r1, const Quad1D& r2,
                                 const Integrand2D& g) {
  std::complex<double> acc(0.0, 0.0);
  for (int i1 = 0; i1 < r1.size(); ++i1) {
    const double x1 = r1.nodes[i1];
    const double w1 = r1.weights[i1];
    for (int i2 = 0; i2 < r2.size(); ++i2) {
      const double x2 = r2.nodes[i2];
      const std::complex<double> v = g(x1, x2);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NumericDomainError("integrand non-finite at node (" +
                                     std::to_string(x1) + ", " +
                                     std::to_string(x2) + ")",
                                 x1, x2);
      }
      acc += w1 * r2.weights[i2] * v;
    }
  }
  return acc;
}

}  // namespace fourcur
