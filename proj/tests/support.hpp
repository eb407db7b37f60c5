// Test-only oracles, independent of the library's computation paths.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fourcur/coeff_oracle.hpp"
#include "fourcur/cur.hpp"
#include "fourcur/linalg.hpp"
#include "fourcur/quadrature.hpp"

namespace testsupport {

using fourcur::CMatrix;
using cd = std::complex<double>;

inline CMatrix random_complex(int rows, int cols, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix A(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) A(i, j) = cd(n(rng), n(rng));
  return A;
}

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations;
// deliberately not the SVD route the library uses. The off-diagonal phase is
// absorbed into the rotation so the 2x2 problem reduces to the real case.
inline std::vector<double> hermitian_eigenvalues(CMatrix H) {
  const int n = static_cast<int>(H.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(H(p, q));
    if (off < 1e-30 * std::max(1.0, H.squaredNorm())) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cd b = H(p, q);
        const double beta = std::abs(b);
        if (beta == 0.0) continue;
        const cd phase = b / beta;
        const double a = H(p, p).real();
        const double d = H(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * beta, a - d);
        // J = diag(phase, 1) * [[c, -s], [s, c]]; update H <- J^* H J
        const cd J11 = phase * std::cos(theta);
        const cd J12 = -phase * std::sin(theta);
        const double J21 = std::sin(theta);
        const double J22 = std::cos(theta);
        for (int k = 0; k < n; ++k) {
          const cd hkp = H(k, p);
          const cd hkq = H(k, q);
          H(k, p) = hkp * J11 + hkq * J21;
          H(k, q) = hkp * J12 + hkq * J22;
        }
        for (int k = 0; k < n; ++k) {
          const cd hpk = H(p, k);
          const cd hqk = H(q, k);
          H(p, k) = std::conj(J11) * hpk + J21 * hqk;
          H(q, k) = std::conj(J12) * hpk + J22 * hqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = H(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// Singular values of A from the eigenvalues of A^* A (descending).
inline std::vector<double> singular_values_oracle(const CMatrix& A) {
  const CMatrix H = A.adjoint() * A;
  std::vector<double> ev = hermitian_eigenvalues(H);
  for (double& v : ev) v = std::sqrt(std::max(0.0, v));
  return ev;
}

// |det| by Gaussian elimination with partial pivoting.
inline double abs_determinant(CMatrix A) {
  const int n = static_cast<int>(A.rows());
  double logmag = 0.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
    }
    if (std::abs(A(piv, k)) == 0.0) return 0.0;
    if (piv != k) A.row(piv).swap(A.row(k));
    logmag += std::log(std::abs(A(k, k)));
    for (int i = k + 1; i < n; ++i) {
      const cd factor = A(i, k) / A(k, k);
      for (int j = k; j < n; ++j) A(i, j) -= factor * A(k, j);
    }
  }
  return std::exp(logmag);
}

// Largest residual of the four Penrose conditions for P ~ pinv(A).
inline double penrose_residual(const CMatrix& A, const CMatrix& P) {
  const double r1 = (A * P * A - A).cwiseAbs().maxCoeff();
  const double r2 = (P * A * P - P).cwiseAbs().maxCoeff();
  const CMatrix AP = A * P;
  const CMatrix PA = P * A;
  const double r3 = (AP - AP.adjoint()).cwiseAbs().maxCoeff();
  const double r4 = (PA - PA.adjoint()).cwiseAbs().maxCoeff();
  return std::max(std::max(r1, r2), std::max(r3, r4));
}

// Plain double-sum quadrature coefficient, no staging, no caching.
inline cd naive_coeff(const fourcur::Quad1D& r1, const fourcur::Quad1D& r2,
                      const std::function<double(double, double)>& f, int k1,
                      int k2) {
  cd acc(0.0, 0.0);
  for (int i = 0; i < r1.size(); ++i) {
    for (int j = 0; j < r2.size(); ++j) {
      const double a = -(k1 * r1.nodes[i] + k2 * r2.nodes[j]);
      acc += r1.weights[i] * r2.weights[j] * f(r1.nodes[i], r2.nodes[j]) *
             cd(std::cos(a), std::sin(a));
    }
  }
  const double pi = std::numbers::pi;
  return acc / (4.0 * pi * pi);
}

// CUR model assembled directly from an explicit matrix (frequencies in
// [-I, I] map to row/col t + I).
inline fourcur::CurModel cur_from_matrix(const CMatrix& A, int I1, int I2,
                                         const fourcur::IndexSet& T1,
                                         const fourcur::IndexSet& T2) {
  fourcur::CurModel m;
  m.T1 = T1;
  m.T2 = T2;
  m.C.resize(A.rows(), static_cast<Eigen::Index>(T2.size()));
  for (size_t s = 0; s < T2.size(); ++s) {
    m.C.col(static_cast<Eigen::Index>(s)) = A.col(T2[s] + I2);
  }
  m.R.resize(static_cast<Eigen::Index>(T1.size()), A.cols());
  for (size_t s = 0; s < T1.size(); ++s) {
    m.R.row(static_cast<Eigen::Index>(s)) = A.row(T1[s] + I1);
  }
  m.G.resize(static_cast<Eigen::Index>(T1.size()),
             static_cast<Eigen::Index>(T2.size()));
  for (size_t i = 0; i < T1.size(); ++i) {
    for (size_t j = 0; j < T2.size(); ++j) {
      m.G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          A(T1[i] + I1, T2[j] + I2);
    }
  }
  m.U = fourcur::pinv(m.G);
  return m;
}

// Random real trigonometric polynomial of degree <= deg per variable.
struct TrigPoly {
  int deg;
  std::vector<double> ac, as, bc, bs;  // per-term factor coefficients
  std::vector<int> k1s, k2s;

  static TrigPoly random(int deg, int terms, uint64_t seed) {
    TrigPoly p;
    p.deg = deg;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> ki(0, deg);
    for (int t = 0; t < terms; ++t) {
      p.k1s.push_back(ki(rng));
      p.k2s.push_back(ki(rng));
      p.ac.push_back(u(rng));
      p.as.push_back(u(rng));
      p.bc.push_back(u(rng));
      p.bs.push_back(u(rng));
    }
    return p;
  }

  double operator()(double x1, double x2) const {
    double v = 0.0;
    for (size_t t = 0; t < k1s.size(); ++t) {
      const double g1 = ac[t] * std::cos(k1s[t] * x1) + as[t] * std::sin(k1s[t] * x1);
      const double g2 = bc[t] * std::cos(k2s[t] * x2) + bs[t] * std::sin(k2s[t] * x2);
      v += g1 * g2;
    }
    return v;
  }
};

}  // namespace testsupport
