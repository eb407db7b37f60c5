#include "fourcur/approximant.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fourcur {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(const EvalGrid& grid) {
  for (double x : grid.x1s) {
    if (!(x >= -kPi - 1e-12 && x <= kPi + 1e-12)) {
      throw std::invalid_argument("grid point outside [-pi, pi]");
    }
  }
  for (double x : grid.x2s) {
    if (!(x >= -kPi - 1e-12 && x <= kPi + 1e-12)) {
      throw std::invalid_argument("grid point outside [-pi, pi]");
    }
  }
}

// E(p, i) = e^{i * (i - I) * x_p}, the row-factor of the batched evaluation.
CMatrix phase_rows(const std::vector<double>& xs, int I) {
  CMatrix E(static_cast<Eigen::Index>(xs.size()), 2 * I + 1);
  for (size_t p = 0; p < xs.size(); ++p) {
    for (int k = -I; k <= I; ++k) {
      const double a = k * xs[p];
      E(static_cast<Eigen::Index>(p), k + I) =
          std::complex<double>(std::cos(a), std::sin(a));
    }
  }
  return E;
}

}  // namespace

EvalGrid linspace_grid(int n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  EvalGrid g;
  g.x1s.resize(n);
  for (int i = 0; i < n; ++i) {
    g.x1s[i] = -kPi + 2.0 * kPi * i / (n - 1);
  }
  g.x1s.back() = kPi;
  g.x2s = g.x1s;
  return g;
}

CMatrix eval_truncated(const CMatrix& A, int I1, int I2, const EvalGrid& grid) {
  if (A.rows() != 2 * I1 + 1 || A.cols() != 2 * I2 + 1) {
    throw std::invalid_argument("coefficient matrix shape does not match orders");
  }
  check_grid(grid);
  const CMatrix E1 = phase_rows(grid.x1s, I1);
  const CMatrix E2 = phase_rows(grid.x2s, I2);
  return E1 * A * E2.transpose();
}

CMatrix eval_cur(const CurModel& m, const EvalGrid& grid) {
  if (m.C.rows() % 2 != 1 || m.R.cols() % 2 != 1) {
    throw std::invalid_argument("CUR factors have even leading dimension");
  }
  check_grid(grid);
  const int I1 = static_cast<int>((m.C.rows() - 1) / 2);
  const int I2 = static_cast<int>((m.R.cols() - 1) / 2);
  const CMatrix E1 = phase_rows(grid.x1s, I1);
  const CMatrix E2 = phase_rows(grid.x2s, I2);
  // (E1*C) * U * (R*E2^T): never materializes C*U*R
  return ((E1 * m.C) * m.U) * (m.R * E2.transpose());
}

double l2_gap(const CMatrix& A, const CurModel& m) {
  if (A.rows() != m.C.rows() || A.cols() != m.R.cols()) {
    throw std::invalid_argument("l2_gap: shape mismatch");
  }
  return (A - m.C * m.U * m.R).norm();
}

ErrorReport error_grid(const std::function<double(double, double)>& f,
                       const GridEvaluator& g_eval, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  const auto t0 = std::chrono::steady_clock::now();

  ErrorReport rep;
  rep.grid = linspace_grid(grid_n);
  const int n1 = static_cast<int>(rep.grid.x1s.size());
  const int n2 = static_cast<int>(rep.grid.x2s.size());

  rep.f_vals.resize(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      rep.f_vals(i, j) = f(rep.grid.x1s[i], rep.grid.x2s[j]);
    }
  }

  const CMatrix g = g_eval(rep.grid);
  if (g.rows() != n1 || g.cols() != n2) {
    throw std::invalid_argument("grid evaluator returned wrong shape");
  }
  rep.g_vals = g.real();
  rep.g_imag = g.imag();
  rep.err = (rep.f_vals - rep.g_vals).cwiseAbs();
  rep.max_err = rep.err.maxCoeff();
  rep.max_imag_residue = rep.g_imag.cwiseAbs().maxCoeff();
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace fourcur
