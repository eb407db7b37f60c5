#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fourcur/errors.hpp"
#include "fourcur/quadrature.hpp"

using namespace fourcur;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

double integrate1d(const Quad1D& r, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (int i = 0; i < r.size(); ++i) acc += r.weights[i] * f(r.nodes[i]);
  return acc;
}

cd integrate1d_c(const Quad1D& r, const std::function<cd(double)>& f) {
  cd acc(0.0, 0.0);
  for (int i = 0; i < r.size(); ++i) acc += r.weights[i] * f(r.nodes[i]);
  return acc;
}

}  // namespace

TEST_CASE("make_rule: NC equispaced periodic trapezoid") {
  const Quad1D r = make_rule(QuadKind::NC, 4);
  REQUIRE(r.size() == 4);
  CHECK(r.nodes[0] == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(r.nodes[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.nodes[3] == doctest::Approx(kPi / 2).epsilon(1e-15));
  for (int i = 0; i < 4; ++i) {
    CHECK(r.weights[i] == doctest::Approx(kPi / 2).epsilon(1e-15));
  }
}

TEST_CASE("make_rule: one-point Gauss rule") {
  const Quad1D r = make_rule(QuadKind::GL, 1);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r.nodes[0]) < 1e-15);
  CHECK(r.weights[0] == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}

TEST_CASE("make_rule: two-point Clenshaw-Curtis") {
  // CC-2 weights on [-1,1] are {1,1}; rescaling multiplies by pi
  const Quad1D r = make_rule(QuadKind::CC, 2);
  REQUIRE(r.size() == 2);
  CHECK(r.nodes[0] == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(r.weights[1] == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("make_rule: M = 0 rejected") {
  CHECK_THROWS_AS(make_rule(QuadKind::NC, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_rule(QuadKind::GL, -3), std::invalid_argument);
}

TEST_CASE("rule invariants: positive weights, ascending nodes, total 2*pi") {
  for (QuadKind kind : {QuadKind::CC, QuadKind::GL, QuadKind::NC}) {
    for (int M : {1, 2, 3, 4, 5, 8, 16, 33, 64, 501}) {
      CAPTURE(to_string(kind));
      CAPTURE(M);
      const Quad1D r = make_rule(kind, M);
      REQUIRE(r.size() == M);
      double total = 0.0;
      for (int i = 0; i < M; ++i) {
        CHECK(r.weights[i] > 0.0);
        CHECK(r.nodes[i] >= -kPi);
        CHECK(r.nodes[i] <= kPi);
        if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
        total += r.weights[i];
      }
      CHECK(std::abs(total - 2.0 * kPi) < 1e-12);
    }
  }
}

TEST_CASE("exactness ladders") {
  // monomials are taken in the normalized variable (x/pi)^d so the exact
  // values stay O(1) and an absolute 1e-12 comparison is meaningful
  auto mono_exact = [](int d) {
    return (d % 2 == 1) ? 0.0 : 2.0 * kPi / (d + 1);
  };
  SUBCASE("GL exact to degree 2M-1") {
    for (int M : {1, 2, 4, 8, 16, 64}) {
      const Quad1D r = make_rule(QuadKind::GL, M);
      for (int d = 0; d <= 2 * M - 1; ++d) {
        const double got =
            integrate1d(r, [d](double x) { return std::pow(x / kPi, d); });
        CHECK(std::abs(got - mono_exact(d)) < 1e-12);
      }
    }
  }
  SUBCASE("CC exact to degree M-1") {
    for (int M : {1, 2, 4, 8, 16, 64}) {
      const Quad1D r = make_rule(QuadKind::CC, M);
      for (int d = 0; d <= M - 1; ++d) {
        const double got =
            integrate1d(r, [d](double x) { return std::pow(x / kPi, d); });
        CHECK(std::abs(got - mono_exact(d)) < 1e-12);
      }
    }
  }
  SUBCASE("NC exact on harmonics |l| <= M-1") {
    for (int M : {1, 2, 4, 8, 16, 64}) {
      const Quad1D r = make_rule(QuadKind::NC, M);
      for (int l = -(M - 1); l <= M - 1; ++l) {
        const cd got = integrate1d_c(r, [l](double x) {
          return cd(std::cos(l * x), std::sin(l * x));
        });
        const cd expect = (l == 0) ? cd(2.0 * kPi, 0.0) : cd(0.0, 0.0);
        CHECK(std::abs(got - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("integrate2d: weight normalization") {
  const Quad1D r1 = make_rule(QuadKind::CC, 9);
  const Quad1D r2 = make_rule(QuadKind::GL, 7);
  const cd got = integrate2d(r1, r2, [](double, double) { return cd(1.0, 0.0); });
  CHECK(std::abs(got - cd(4.0 * kPi * kPi, 0.0)) < 1e-12);
}

TEST_CASE("integrate2d: factorized analytic integral") {
  // int cos(x) e^{-ix} dx = pi per dimension
  const Quad1D r = make_rule(QuadKind::NC, 16);
  const cd got = integrate2d(r, r, [](double x1, double x2) {
    const double a = -(x1 + x2);
    return std::cos(x1) * std::cos(x2) * cd(std::cos(a), std::sin(a));
  });
  CHECK(std::abs(got - cd(kPi * kPi, 0.0)) < 1e-12);
}

TEST_CASE("integrate2d: pure harmonic integrates to zero") {
  const Quad1D r = make_rule(QuadKind::NC, 8);
  const cd got = integrate2d(r, r, [](double x1, double) {
    return cd(std::cos(x1), std::sin(x1));
  });
  CHECK(std::abs(got) < 1e-12);
}

TEST_CASE("integrate2d: bilinear in weights") {
  const Quad1D r1 = make_rule(QuadKind::GL, 6);
  const Quad1D r2 = make_rule(QuadKind::CC, 5);
  Quad1D doubled = r1;
  doubled.weights *= 2.0;
  auto g = [](double x1, double x2) {
    return cd(std::exp(0.3 * x1) * x2, std::sin(x1 + x2));
  };
  const cd base = integrate2d(r1, r2, g);
  const cd twice = integrate2d(doubled, r2, g);
  CHECK(std::abs(twice - 2.0 * base) <= 1e-15 * std::abs(2.0 * base));
}

TEST_CASE("integrate2d: non-finite integrand reports the node") {
  const Quad1D r = make_rule(QuadKind::NC, 4);
  auto bad = [&](double x1, double x2) {
    if (x1 == r.nodes[2] && x2 == r.nodes[1]) {
      return cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    }
    return cd(1.0, 0.0);
  };
  CHECK_THROWS_AS(integrate2d(r, r, bad), NumericDomainError);
  try {
    integrate2d(r, r, bad);
  } catch (const NumericDomainError& e) {
    CHECK(e.x1 == r.nodes[2]);
    CHECK(e.x2 == r.nodes[1]);
  }
}
