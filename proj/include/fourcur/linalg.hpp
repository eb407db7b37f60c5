#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace fourcur {

using CMatrix = Eigen::MatrixXcd;

/// Thin SVD A = U * diag(S) * V^*, with S descending and
/// U (rows x r), V (cols x r) having orthonormal columns, r = min(rows, cols).
struct SvdResult {
  CMatrix U;
  Eigen::VectorXd S;
  CMatrix V;
};

/// Throws NumericFailure if the decomposition does not converge.
SvdResult svd(const CMatrix& A);

/// Moore-Penrose pseudoinverse via SVD truncation: singular values
/// sigma_i <= rtol * sigma_1 are treated as zero. rtol < 0 selects the
/// default max(rows, cols) * machine epsilon.
CMatrix pinv(const CMatrix& A, double rtol = -1.0);

/// Smallest singular value (the min(rows, cols)-th one).
double sigma_min(const CMatrix& A);

enum class NormKind { Max, Fro, Spectral };
double norm(const CMatrix& A, NormKind kind);

/// Product of all min(rows, cols) singular values.
double volume(const CMatrix& A);

/// Exhaustive search for the S1 x S2 submatrix of maximal volume.
/// Returns 0-based (row, column) index lists; ties broken by the
/// lexicographically smallest pair. Desk scale only: throws CapacityError
/// when binom(rows,S1) * binom(cols,S2) exceeds 1e6.
std::pair<std::vector<int>, std::vector<int>> maxvol_bruteforce(
    const CMatrix& A, int S1, int S2);

}  // namespace fourcur
