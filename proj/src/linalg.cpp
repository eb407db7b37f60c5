#include "fourcur/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fourcur/errors.hpp"

namespace fourcur {

SvdResult svd(const CMatrix& A) {
  Eigen::JacobiSVD<CMatrix> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw NumericFailure("SVD did not converge");
  }
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

CMatrix pinv(const CMatrix& A, double rtol) {
  if (rtol < 0.0) {
    rtol = static_cast<double>(std::max(A.rows(), A.cols())) *
           std::numeric_limits<double>::epsilon();
  }
  const SvdResult s = svd(A);
  const double cut = (s.S.size() > 0) ? rtol * s.S[0] : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.S.size());
  for (Eigen::Index i = 0; i < s.S.size(); ++i) {
    if (s.S[i] > cut && s.S[i] > 0.0) inv[i] = 1.0 / s.S[i];
  }
  return s.V * inv.asDiagonal() * s.U.adjoint();
}

double sigma_min(const CMatrix& A) {
  if (A.size() == 0) throw std::invalid_argument("sigma_min of empty matrix");
  Eigen::JacobiSVD<CMatrix> dec(A);
  if (dec.info() != Eigen::Success) {
    throw NumericFailure("SVD did not converge");
  }
  return dec.singularValues()[dec.singularValues().size() - 1];
}

double norm(const CMatrix& A, NormKind kind) {
  switch (kind) {
    case NormKind::Max: {
      double m = 0.0;
      for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
          m = std::max(m, std::abs(A(i, j)));
      return m;
    }
    case NormKind::Fro:
      return A.norm();
    case NormKind::Spectral: {
      if (A.size() == 0) return 0.0;
      Eigen::JacobiSVD<CMatrix> dec(A);
      return dec.singularValues()[0];
    }
  }
  return 0.0;
}

double volume(const CMatrix& A) {
  Eigen::JacobiSVD<CMatrix> dec(A);
  double v = 1.0;
  for (Eigen::Index i = 0; i < dec.singularValues().size(); ++i)
    v *= dec.singularValues()[i];
  return v;
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= static_cast<double>(n - i) / (i + 1);
  return b;
}

// Lexicographic combination enumeration over {0..n-1} choose k.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - (k - i)) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> maxvol_bruteforce(
    const CMatrix& A, int S1, int S2) {
  const int rows = static_cast<int>(A.rows());
  const int cols = static_cast<int>(A.cols());
  if (S1 < 1 || S2 < 1 || S1 > rows || S2 > cols) {
    throw std::invalid_argument("maxvol_bruteforce: invalid submatrix shape");
  }
  if (binomial(rows, S1) * binomial(cols, S2) > 1e6) {
    throw CapacityError("maxvol_bruteforce: combinatorial budget exceeded");
  }

  std::vector<int> rsel(S1), csel(S2);
  std::vector<int> best_r, best_c;
  double best_v = -1.0;
  for (int i = 0; i < S1; ++i) rsel[i] = i;
  do {
    for (int j = 0; j < S2; ++j) csel[j] = j;
    do {
      CMatrix sub(S1, S2);
      for (int i = 0; i < S1; ++i)
        for (int j = 0; j < S2; ++j) sub(i, j) = A(rsel[i], csel[j]);
      const double v = volume(sub);
      if (v > best_v) {  // strict: first (lexicographically smallest) wins ties
        best_v = v;
        best_r = rsel;
        best_c = csel;
      }
    } while (next_combination(csel, cols));
  } while (next_combination(rsel, rows));

  return {best_r, best_c};
}

}  // namespace fourcur
