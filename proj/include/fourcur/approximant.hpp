#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fourcur/cur.hpp"
#include "fourcur/linalg.hpp"

namespace fourcur {

/// Cartesian evaluation grid; values are stored row-major over x1s x x2s.
struct EvalGrid {
  std::vector<double> x1s;
  std::vector<double> x2s;
};

/// n equally spaced points from -pi to pi inclusive, both dimensions.
EvalGrid linspace_grid(int n);

/// Evaluate the truncated series with coefficient matrix A
/// ((2*I1+1) x (2*I2+1)) at all grid points:
///   F(x1,x2) = sum_{k1,k2} A(k1+I1, k2+I2) e^{i k1 x1} e^{i k2 x2},
/// batched as E1 * A * E2 over the grid. Returns a |x1s| x |x2s| matrix.
CMatrix eval_truncated(const CMatrix& A, int I1, int I2, const EvalGrid& grid);

/// Evaluate the CUR approximant in factored form (E1*C) * U * (R*E2)
/// without materializing C*U*R.
CMatrix eval_cur(const CurModel& m, const EvalGrid& grid);

/// || A - C*U*R ||_F, which by Parseval equals the L2 norm of the gap
/// between the two trigonometric polynomials under the (1/2pi)^2-normalized
/// inner product.
double l2_gap(const CMatrix& A, const CurModel& m);

struct ErrorReport {
  EvalGrid grid;
  Eigen::MatrixXd f_vals;
  Eigen::MatrixXd g_vals;  // real part of the approximant
  Eigen::MatrixXd g_imag;  // imaginary residue of the approximant
  Eigen::MatrixXd err;     // |f_vals - g_vals|
  double max_err = 0.0;
  double max_imag_residue = 0.0;
  std::optional<double> l2_gap;
  double elapsed_seconds = 0.0;
  long long n_integrals = 0;
};

using GridEvaluator = std::function<CMatrix(const EvalGrid&)>;

/// Evaluate f and an approximant on the grid_n x grid_n linspace grid and
/// tabulate pointwise errors against the approximant's real part. The
/// largest |imaginary part| is recorded, never silently dropped.
ErrorReport error_grid(const std::function<double(double, double)>& f,
                       const GridEvaluator& g_eval, int grid_n);

}  // namespace fourcur
