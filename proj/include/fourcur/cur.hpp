#pragma once

#include <string_view>
#include <vector>

#include "fourcur/coeff_oracle.hpp"
#include "fourcur/linalg.hpp"

namespace fourcur {

enum class StopReason { Tolerance, MaxIterations, IndexBounds };
const char* to_string(StopReason r);

struct RunStats {
  int iterations = 0;
  std::vector<double> tol_trace;    // aggregated tolerance per iteration
  std::vector<double> tol_trace_c;  // per-factor ratios (column factor)
  std::vector<double> tol_trace_r;  // per-factor ratios (row factor)
  long long n_integrals = 0;        // oracle counter delta for this run
  double elapsed_seconds = 0.0;
  StopReason stop_reason = StopReason::Tolerance;
};

/// CUR model of the coefficient matrix A:
///   A ~ C * U * R,  C = A(:, T2 cols), R = A(T1 rows, :),
///   G = A(T1 rows, T2 cols) (S1 x S2), U = pseudoinverse coupling (S2 x S1).
/// T1 and T2 are stored ascending; C, R and G are ordered accordingly and
/// share the oracle cache, so G equals the T1-rows slice of C and the
/// T2-columns slice of R entry-for-entry. Immutable once returned.
struct CurModel {
  IndexSet T1;
  IndexSet T2;
  CMatrix C;  // (2*I1+1) x S2
  CMatrix R;  // S1 x (2*I2+1)
  CMatrix G;  // S1 x S2
  CMatrix U;  // S2 x S1
  RunStats stats;

  int S1() const { return static_cast<int>(T1.size()); }
  int S2() const { return static_cast<int>(T2.size()); }
};

struct OrderEstimate {
  int I1 = 0;
  int I2 = 0;
  int alpha = 0;
  double eps = 0.0;
  double C_const = 0.0;
  double seminorm = 0.0;
};

/// I_n = ceil((C_const * seminorm / eps)^(1/alpha)), identical per dimension.
/// Requires integer alpha >= 1, 0 < eps < 1, C_const > 0, seminorm > 0.
OrderEstimate estimate_orders(int alpha, double eps, double C_const,
                              double seminorm);

/// The 2b frequencies {-kb..-(k-1)b-1} u {(k-1)b+1..kb}, ascending.
IndexSet index_band(int k, int b);

enum class CurMode { Cross, TwoSidedId, Best };
CurMode cur_mode_from_string(std::string_view name);

inline constexpr long long kFullMatrixBudget = 4'000'000;  // entries

/// CUR model on fixed index sets.
///   Cross:      U = pinv(G)
///   TwoSidedId: U = pinv(C(T1 rows,:)) * G * pinv(R(:,T2 cols))
///   Best:       U = pinv(C) * A * pinv(R)   (forms the full A; desk scale,
///               throws CapacityError beyond full_budget entries)
CurModel cur_fixed(CoeffOracle& oracle, const IndexSet& T1, const IndexSet& T2,
                   CurMode mode, long long full_budget = kFullMatrixBudget);

/// Adaptive factor-growing algorithm. Starts from T1 = T2 = {0} with the
/// full first column/row of A, then appends the symmetric band
/// index_band(k, b_n) per iteration (clipped to [-I_n, I_n]); stops when
/// min(sigma(C)/sqrt(nF_C), sigma(R)/sqrt(nF_R)) <= tau, after K iterations,
/// or when both clipped bands are empty. nF accumulates squared Frobenius
/// norms of the appended blocks; sigma is the trailing singular value at the
/// pseudoinverse rank cutoff, so exact rank deficiency inside the current
/// window (zero or duplicate coefficient lines) does not fake convergence.
/// A zero accumulator yields a +inf ratio (continue); a band whose mass is
/// machine noise relative to the total also terminates; the tolerance is
/// only tested from k = 1 on.
CurModel algorithm1(CoeffOracle& oracle, int b1, int b2, double tau, int K);

/// Adaptive core-growing algorithm: grows only G by bordering blocks
/// (old rows x new cols, new rows x old cols, new x new), tolerance
/// sigma_min(G)/sqrt(nF_G); C and R are filled in from the oracle after
/// termination.
CurModel algorithm2(CoeffOracle& oracle, int b1, int b2, double tau, int K);

/// Variant of algorithm2 with the bordering blocks replaced by exact zero
/// blocks: G is block-diagonal (1x1 then one 2*b1 x 2*b2 block per
/// iteration). The core slices of C and R are spliced from the stored G
/// rather than recomputed, so off-band core coefficients are never
/// integrated and the integral count is strictly below algorithm2's.
CurModel algorithm_c1(CoeffOracle& oracle, int b1, int b2, double tau, int K);

}  // namespace fourcur
