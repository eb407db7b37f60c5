#pragma once

#include <complex>
#include <functional>
#include <unordered_map>
#include <vector>

#include "fourcur/linalg.hpp"
#include "fourcur/quadrature.hpp"

namespace fourcur {

using BivariateFn = std::function<double(double, double)>;

/// Ordered list of distinct frequencies, strictly increasing.
using IndexSet = std::vector<int>;

/// Throws std::invalid_argument unless T is strictly increasing with every
/// entry in [-bound, bound].
void validate_index_set(const IndexSet& T, int bound);

/// Lazily computes Fourier coefficients
///
///   a(k1,k2) = (1/2pi)^2 sum_{i,j} w1_i w2_j f(x1_i, x2_j) e^{-i(k1 x1_i + k2 x2_j)}
///
/// of a real-valued f on [-pi,pi]^2 via tensor-product quadrature, for
/// frequencies |k1| <= I1, |k2| <= I2. f is sampled once on the full
/// M1 x M2 node grid at construction. Every coefficient is computed at most
/// once; integral_count() reports the number of distinct (k1,k2) pairs ever
/// materialized, i.e. the number of unique double integrals.
///
/// Coefficients are evaluated with a two-stage separable summation: for a
/// fixed k2 the inner sum h_{k2}(i1) = sum_j w2_j f(i1,j) e^{-i k2 x2_j} is
/// formed once (and memoized), after which each k1 costs one length-M1
/// weighted sum. row_coeffs mirrors this with the roles of the dimensions
/// swapped. Whichever path materializes a coefficient first wins; later
/// requests are cache hits, so all views of one coefficient are bit-identical.
///
/// Sums use plain accumulation in a fixed order; `compensated` switches the
/// stage sums to Kahan accumulation (counts and caching are unaffected).
///
/// Not thread-safe: exclusive access per oracle instance.
class CoeffOracle {
public:
  /// Samples f on the full node grid (throws NumericDomainError with the
  /// offending node if a sample is non-finite).
  CoeffOracle(BivariateFn f, int I1, int I2, Quad1D r1, Quad1D r2,
              bool compensated = false);

  /// Single coefficient; cache miss computes via the column-stage path.
  std::complex<double> coeff(int k1, int k2);

  /// Coefficients a(k1, k2) for the listed k1s at fixed k2 (column path).
  Eigen::VectorXcd col_coeffs(int k2, const std::vector<int>& k1s);

  /// Coefficients a(k1, k2) for the listed k2s at fixed k1 (row path).
  Eigen::VectorXcd row_coeffs(int k1, const std::vector<int>& k2s);

  /// (2*I1+1) x |T2| block: entry (i1, s2) = coeff(i1 - I1, T2[s2]) with
  /// 0-based i1.
  CMatrix column_block(const IndexSet& T2);

  /// |T1| x (2*I2+1) block, mirror of column_block.
  CMatrix row_block(const IndexSet& T1);

  /// |T1| x |T2| block of the intersection: entry (s1, s2) = coeff(T1[s1], T2[s2]).
  CMatrix core_block(const IndexSet& T1, const IndexSet& T2);

  /// The full (2*I1+1) x (2*I2+1) coefficient matrix, row i1 holding
  /// frequency i1 - I1. Costs one double integral per uncached entry;
  /// intended for desk-scale orders only.
  CMatrix full_matrix();

  /// Number of unique coefficients computed so far.
  long long integral_count() const { return n_integrals_; }

  int I1() const { return I1_; }
  int I2() const { return I2_; }
  const Quad1D& rule1() const { return r1_; }
  const Quad1D& rule2() const { return r2_; }
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>&
  fgrid() const {
    return fgrid_;
  }

private:
  std::complex<double> ensure_col(int k1, int k2);
  std::complex<double> ensure_row(int k1, int k2);
  const Eigen::VectorXcd& col_stage(int k2);
  const Eigen::VectorXcd& row_stage(int k1);
  void check_bounds(int k1, int k2) const;

  static uint64_t key(int k1, int k2) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(k1)) << 32) |
           static_cast<uint32_t>(k2);
  }

  int I1_;
  int I2_;
  Quad1D r1_;
  Quad1D r2_;
  bool compensated_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> fgrid_;
  std::unordered_map<uint64_t, std::complex<double>> cache_;
  std::unordered_map<int, Eigen::VectorXcd> col_stages_;  // k2 -> h vector
  std::unordered_map<int, Eigen::VectorXcd> row_stages_;  // k1 -> g vector
  long long n_integrals_ = 0;
};

}  // namespace fourcur
