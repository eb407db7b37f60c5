#include "fourcur/cur.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fourcur/errors.hpp"

namespace fourcur {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Trailing singular value of a growing factor, taken at the same relative
// rank cutoff the pseudoinverse uses. Exact rank deficiency inside the
// current window (zero or duplicated coefficient columns) says nothing about
// the unseen bands, so those below-cutoff values must not fake convergence;
// a window with no significant singular value at all carries no signal yet.
double trailing_sigma(const CMatrix& X) {
  Eigen::JacobiSVD<CMatrix> dec(X);
  const auto& s = dec.singularValues();
  if (s.size() == 0 || s[0] <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double cut = static_cast<double>(std::max(X.rows(), X.cols())) *
                     std::numeric_limits<double>::epsilon() * s[0];
  double smallest = s[0];
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cut) smallest = s[i];
  }
  return smallest;
}

// trailing_sigma / sqrt(nF); an all-zero accumulator means "no signal yet".
double tol_ratio(double sigma, double nf) {
  if (nf <= 0.0) return std::numeric_limits<double>::infinity();
  return sigma / std::sqrt(nf);
}

// An appended band whose squared mass is at machine-noise level relative to
// the accumulated total contributes nothing representable: the expansion has
// converged at working precision.
bool is_dust(double added, double total) {
  constexpr double kRel = 1e-13;
  return added <= kRel * kRel * total;
}

// Drop band entries outside [-bound, bound].
IndexSet clip_band(const IndexSet& band, int bound) {
  IndexSet out;
  out.reserve(band.size());
  for (int v : band) {
    if (v >= -bound && v <= bound) out.push_back(v);
  }
  return out;
}

IndexSet sorted_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Core entries for arbitrarily ordered row/column frequency lists,
// one oracle column at a time.
CMatrix gather_core(CoeffOracle& o, const std::vector<int>& row_freqs,
                    const std::vector<int>& col_freqs) {
  CMatrix G(static_cast<Eigen::Index>(row_freqs.size()),
            static_cast<Eigen::Index>(col_freqs.size()));
  for (size_t j = 0; j < col_freqs.size(); ++j) {
    G.col(static_cast<Eigen::Index>(j)) = o.col_coeffs(col_freqs[j], row_freqs);
  }
  return G;
}

}  // namespace

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Tolerance: return "tolerance";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::IndexBounds: return "index_bounds";
  }
  return "?";
}

OrderEstimate estimate_orders(int alpha, double eps, double C_const,
                              double seminorm) {
  if (alpha < 1) throw std::invalid_argument("alpha must be an integer >= 1");
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  if (!(C_const > 0.0)) throw std::invalid_argument("C_const must be > 0");
  if (!(seminorm > 0.0)) throw std::invalid_argument("seminorm must be > 0");

  const double r = std::pow(C_const * seminorm / eps, 1.0 / alpha);
  if (!(r < 2.0e9)) throw std::invalid_argument("estimated order overflows");
  // ceil in exact arithmetic: treat values within 1e-9 of an integer as exact
  const double nearest = std::round(r);
  const double I =
      (std::abs(r - nearest) <= 1e-9 * std::max(1.0, nearest)) ? nearest
                                                               : std::ceil(r);
  OrderEstimate est;
  est.I1 = est.I2 = static_cast<int>(I);
  est.alpha = alpha;
  est.eps = eps;
  est.C_const = C_const;
  est.seminorm = seminorm;
  return est;
}

IndexSet index_band(int k, int b) {
  if (k < 1 || b < 1) throw std::invalid_argument("index_band: k, b >= 1");
  IndexSet out;
  out.reserve(2 * static_cast<size_t>(b));
  for (int v = -k * b; v <= -(k - 1) * b - 1; ++v) out.push_back(v);
  for (int v = (k - 1) * b + 1; v <= k * b; ++v) out.push_back(v);
  return out;
}

CurMode cur_mode_from_string(std::string_view name) {
  if (name == "cross") return CurMode::Cross;
  if (name == "two_sided_id") return CurMode::TwoSidedId;
  if (name == "best") return CurMode::Best;
  throw std::invalid_argument("unknown CUR mode: " + std::string(name));
}

CurModel cur_fixed(CoeffOracle& o, const IndexSet& T1, const IndexSet& T2,
                   CurMode mode, long long full_budget) {
  validate_index_set(T1, o.I1());
  validate_index_set(T2, o.I2());
  const long long count0 = o.integral_count();
  const auto t0 = Clock::now();

  CurModel m;
  m.T1 = T1;
  m.T2 = T2;
  m.C = o.column_block(T2);
  m.R = o.row_block(T1);
  m.G = o.core_block(T1, T2);
  switch (mode) {
    case CurMode::Cross:
      m.U = pinv(m.G);
      break;
    case CurMode::TwoSidedId: {
      CMatrix C_rows(m.T1.size(), m.C.cols());
      for (size_t s = 0; s < T1.size(); ++s) {
        C_rows.row(static_cast<Eigen::Index>(s)) = m.C.row(T1[s] + o.I1());
      }
      CMatrix R_cols(m.R.rows(), m.T2.size());
      for (size_t s = 0; s < T2.size(); ++s) {
        R_cols.col(static_cast<Eigen::Index>(s)) = m.R.col(T2[s] + o.I2());
      }
      m.U = pinv(C_rows) * m.G * pinv(R_cols);
      break;
    }
    case CurMode::Best: {
      const long long entries = static_cast<long long>(2 * o.I1() + 1) *
                                static_cast<long long>(2 * o.I2() + 1);
      if (entries > full_budget) {
        throw CapacityError("cur_fixed(best): full matrix of " +
                            std::to_string(entries) +
                            " entries exceeds the desk-scale budget");
      }
      const CMatrix A = o.full_matrix();
      m.U = pinv(m.C) * A * pinv(m.R);
      break;
    }
  }
  m.stats.iterations = 0;
  m.stats.stop_reason = StopReason::Tolerance;
  m.stats.n_integrals = o.integral_count() - count0;
  m.stats.elapsed_seconds = seconds_since(t0);
  return m;
}

CurModel algorithm1(CoeffOracle& o, int b1, int b2, double tau, int K) {
  if (b1 < 1 || b2 < 1) throw std::invalid_argument("block sizes must be >= 1");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (!(tau > 0.0) || !(tau < 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1)");
  }
  const long long count0 = o.integral_count();
  const auto t0 = Clock::now();

  IndexSet T1{0}, T2{0};
  CMatrix C = o.column_block(T2);
  CMatrix R = o.row_block(T1);
  double nFc = C.squaredNorm();
  double nFr = R.squaredNorm();

  RunStats stats;
  stats.stop_reason = StopReason::MaxIterations;
  for (int k = 1; k <= K; ++k) {
    const IndexSet band1 = clip_band(index_band(k, b1), o.I1());
    const IndexSet band2 = clip_band(index_band(k, b2), o.I2());
    if (band1.empty() && band2.empty()) {
      stats.stop_reason = StopReason::IndexBounds;
      break;
    }
    double added = 0.0;
    if (!band2.empty()) {
      const CMatrix Ck = o.column_block(band2);
      added += Ck.squaredNorm();
      nFc += Ck.squaredNorm();
      CMatrix grownC(C.rows(), C.cols() + Ck.cols());
      grownC << C, Ck;
      C = std::move(grownC);
      T2 = sorted_union(T2, band2);
    }
    if (!band1.empty()) {
      const CMatrix Rk = o.row_block(band1);
      added += Rk.squaredNorm();
      nFr += Rk.squaredNorm();
      CMatrix grown(R.rows() + Rk.rows(), R.cols());
      grown << R, Rk;
      R = std::move(grown);
      T1 = sorted_union(T1, band1);
    }
    const double rc = tol_ratio(trailing_sigma(C), nFc);
    const double rr = tol_ratio(trailing_sigma(R), nFr);
    const double tol = std::min(rc, rr);
    stats.tol_trace_c.push_back(rc);
    stats.tol_trace_r.push_back(rr);
    stats.tol_trace.push_back(tol);
    stats.iterations = k;
    if (tol <= tau || is_dust(added, nFc + nFr)) {
      stats.stop_reason = StopReason::Tolerance;
      break;
    }
  }

  // Final assembly in ascending frequency order; every entry is already
  // cached, so this adds no integrals.
  CurModel m;
  m.T1 = T1;
  m.T2 = T2;
  m.C = o.column_block(T2);
  m.R = o.row_block(T1);
  m.G = o.core_block(T1, T2);
  m.U = pinv(m.G);
  m.stats = std::move(stats);
  m.stats.n_integrals = o.integral_count() - count0;
  m.stats.elapsed_seconds = seconds_since(t0);
  return m;
}

CurModel algorithm2(CoeffOracle& o, int b1, int b2, double tau, int K) {
  if (b1 < 1 || b2 < 1) throw std::invalid_argument("block sizes must be >= 1");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (!(tau > 0.0) || !(tau < 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1)");
  }
  const long long count0 = o.integral_count();
  const auto t0 = Clock::now();

  // Insertion-ordered index lists; the core is grown by bordering, and the
  // singular values are unaffected by the ordering.
  std::vector<int> rows{0}, cols{0};
  CMatrix G = gather_core(o, rows, cols);
  double nFg = G.squaredNorm();

  RunStats stats;
  stats.stop_reason = StopReason::MaxIterations;
  for (int k = 1; k <= K; ++k) {
    const IndexSet band1 = clip_band(index_band(k, b1), o.I1());
    const IndexSet band2 = clip_band(index_band(k, b2), o.I2());
    if (band1.empty() && band2.empty()) {
      stats.stop_reason = StopReason::IndexBounds;
      break;
    }
    const CMatrix G1k = band2.empty() ? CMatrix(G.rows(), 0)
                                      : gather_core(o, rows, band2);
    const CMatrix G2k = band1.empty() ? CMatrix(0, G.cols())
                                      : gather_core(o, band1, cols);
    const CMatrix G3k = (band1.empty() || band2.empty())
                            ? CMatrix(band1.size(), band2.size())
                            : gather_core(o, band1, band2);
    const double added =
        G1k.squaredNorm() + G2k.squaredNorm() + G3k.squaredNorm();
    nFg += added;

    CMatrix grown(G.rows() + G2k.rows(), G.cols() + G1k.cols());
    grown.topLeftCorner(G.rows(), G.cols()) = G;
    grown.topRightCorner(G1k.rows(), G1k.cols()) = G1k;
    grown.bottomLeftCorner(G2k.rows(), G2k.cols()) = G2k;
    grown.bottomRightCorner(G3k.rows(), G3k.cols()) = G3k;
    G = std::move(grown);
    rows.insert(rows.end(), band1.begin(), band1.end());
    cols.insert(cols.end(), band2.begin(), band2.end());

    const double tol = tol_ratio(trailing_sigma(G), nFg);
    stats.tol_trace.push_back(tol);
    stats.iterations = k;
    if (tol <= tau || is_dust(added, nFg)) {
      stats.stop_reason = StopReason::Tolerance;
      break;
    }
  }

  CurModel m;
  m.T1 = rows;
  std::sort(m.T1.begin(), m.T1.end());
  m.T2 = cols;
  std::sort(m.T2.begin(), m.T2.end());
  m.C = o.column_block(m.T2);
  m.R = o.row_block(m.T1);
  m.G = o.core_block(m.T1, m.T2);  // cache hits only
  m.U = pinv(m.G);
  m.stats = std::move(stats);
  m.stats.n_integrals = o.integral_count() - count0;
  m.stats.elapsed_seconds = seconds_since(t0);
  return m;
}

CurModel algorithm_c1(CoeffOracle& o, int b1, int b2, double tau, int K) {
  if (b1 < 1 || b2 < 1) throw std::invalid_argument("block sizes must be >= 1");
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (!(tau > 0.0) || !(tau < 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1)");
  }
  const long long count0 = o.integral_count();
  const auto t0 = Clock::now();

  std::vector<int> rows{0}, cols{0};
  CMatrix G = gather_core(o, rows, cols);
  double nFg = G.squaredNorm();

  RunStats stats;
  stats.stop_reason = StopReason::MaxIterations;
  for (int k = 1; k <= K; ++k) {
    const IndexSet band1 = clip_band(index_band(k, b1), o.I1());
    const IndexSet band2 = clip_band(index_band(k, b2), o.I2());
    if (band1.empty() && band2.empty()) {
      stats.stop_reason = StopReason::IndexBounds;
      break;
    }
    const CMatrix Gk = (band1.empty() || band2.empty())
                           ? CMatrix(band1.size(), band2.size())
                           : gather_core(o, band1, band2);
    const double added = Gk.squaredNorm();
    nFg += added;

    // bordering blocks are exact zeros
    CMatrix grown = CMatrix::Zero(G.rows() + static_cast<Eigen::Index>(band1.size()),
                                  G.cols() + static_cast<Eigen::Index>(band2.size()));
    grown.topLeftCorner(G.rows(), G.cols()) = G;
    grown.bottomRightCorner(Gk.rows(), Gk.cols()) = Gk;
    G = std::move(grown);
    rows.insert(rows.end(), band1.begin(), band1.end());
    cols.insert(cols.end(), band2.begin(), band2.end());

    const double tol = tol_ratio(trailing_sigma(G), nFg);
    stats.tol_trace.push_back(tol);
    stats.iterations = k;
    if (tol <= tau || is_dust(added, nFg)) {
      stats.stop_reason = StopReason::Tolerance;
      break;
    }
  }

  CurModel m;
  m.T1 = rows;
  std::sort(m.T1.begin(), m.T1.end());
  m.T2 = cols;
  std::sort(m.T2.begin(), m.T2.end());
  const int S1 = m.S1();
  const int S2 = m.S2();

  // Permute the block-diagonal core to ascending frequency order.
  auto position = [](const IndexSet& T, int v) {
    return static_cast<int>(std::lower_bound(T.begin(), T.end(), v) - T.begin());
  };
  CMatrix G_asc(S1, S2);
  for (int i = 0; i < S1; ++i) {
    for (int j = 0; j < S2; ++j) {
      G_asc(position(m.T1, rows[i]), position(m.T2, cols[j])) = G(i, j);
    }
  }
  m.G = std::move(G_asc);
  m.U = pinv(m.G);

  // C and R are spliced: core slices come from the stored G (zeros off the
  // block diagonal included), only the non-core coefficients are integrated.
  m.C.resize(2 * o.I1() + 1, S2);
  std::vector<int> noncore_rows;
  noncore_rows.reserve(2 * o.I1() + 1 - S1);
  for (int q = -o.I1(); q <= o.I1(); ++q) {
    if (!std::binary_search(m.T1.begin(), m.T1.end(), q)) noncore_rows.push_back(q);
  }
  for (int s2 = 0; s2 < S2; ++s2) {
    const Eigen::VectorXcd vals = o.col_coeffs(m.T2[s2], noncore_rows);
    for (size_t t = 0; t < noncore_rows.size(); ++t) {
      m.C(noncore_rows[t] + o.I1(), s2) = vals[static_cast<Eigen::Index>(t)];
    }
    for (int s1 = 0; s1 < S1; ++s1) {
      m.C(m.T1[s1] + o.I1(), s2) = m.G(s1, s2);
    }
  }
  m.R.resize(S1, 2 * o.I2() + 1);
  std::vector<int> noncore_cols;
  noncore_cols.reserve(2 * o.I2() + 1 - S2);
  for (int q = -o.I2(); q <= o.I2(); ++q) {
    if (!std::binary_search(m.T2.begin(), m.T2.end(), q)) noncore_cols.push_back(q);
  }
  for (int s1 = 0; s1 < S1; ++s1) {
    const Eigen::VectorXcd vals = o.row_coeffs(m.T1[s1], noncore_cols);
    for (size_t t = 0; t < noncore_cols.size(); ++t) {
      m.R(s1, noncore_cols[t] + o.I2()) = vals[static_cast<Eigen::Index>(t)];
    }
    for (int s2 = 0; s2 < S2; ++s2) {
      m.R(s1, m.T2[s2] + o.I2()) = m.G(s1, s2);
    }
  }

  m.stats = std::move(stats);
  m.stats.n_integrals = o.integral_count() - count0;
  m.stats.elapsed_seconds = seconds_since(t0);
  return m;
}

}  // namespace fourcur
