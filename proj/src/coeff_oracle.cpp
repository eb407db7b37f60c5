#include "fourcur/coeff_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fourcur/errors.hpp"

namespace fourcur {

namespace {

constexpr double kPi = std::numbers::pi;

// Kahan-compensated complex accumulator; same summation order as the plain
// path.
struct KahanSum {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> carry{0.0, 0.0};

  void add(std::complex<double> v) {
    const std::complex<double> y = v - carry;
    const std::complex<double> t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

void validate_index_set(const IndexSet& T, int bound) {
  if (T.empty()) throw std::invalid_argument("index set must be non-empty");
  int prev = 0;
  for (size_t s = 0; s < T.size(); ++s) {
    if (T[s] < -bound || T[s] > bound) {
      throw std::invalid_argument("index " + std::to_string(T[s]) +
                                  " outside [-" + std::to_string(bound) + ", " +
                                  std::to_string(bound) + "]");
    }
    if (s > 0 && T[s] <= prev) {
      throw std::invalid_argument("index set must be strictly increasing");
    }
    prev = T[s];
  }
}

CoeffOracle::CoeffOracle(BivariateFn f, int I1, int I2, Quad1D r1, Quad1D r2,
                         bool compensated)
    : I1_(I1),
      I2_(I2),
      r1_(std::move(r1)),
      r2_(std::move(r2)),
      compensated_(compensated) {
  if (I1 < 0 || I2 < 0) {
    throw std::invalid_argument("truncation orders must be nonnegative");
  }
  const int M1 = r1_.size();
  const int M2 = r2_.size();
  fgrid_.resize(M1, M2);
  for (int i = 0; i < M1; ++i) {
    for (int j = 0; j < M2; ++j) {
      const double v = f(r1_.nodes[i], r2_.nodes[j]);
      if (!std::isfinite(v)) {
        throw NumericDomainError(
            "f non-finite at node (" + std::to_string(r1_.nodes[i]) + ", " +
                std::to_string(r2_.nodes[j]) + ")",
            r1_.nodes[i], r2_.nodes[j]);
      }
      fgrid_(i, j) = v;
    }
  }
}

void CoeffOracle::check_bounds(int k1, int k2) const {
  if (k1 < -I1_ || k1 > I1_ || k2 < -I2_ || k2 > I2_) {
    throw std::invalid_argument("frequency (" + std::to_string(k1) + ", " +
                                std::to_string(k2) + ") outside truncation");
  }
}

const Eigen::VectorXcd& CoeffOracle::col_stage(int k2) {
  auto it = col_stages_.find(k2);
  if (it != col_stages_.end()) return it->second;
  const int M1 = r1_.size();
  const int M2 = r2_.size();
  Eigen::VectorXcd phase(M2);
  for (int j = 0; j < M2; ++j) {
    const double a = -static_cast<double>(k2) * r2_.nodes[j];
    phase[j] = r2_.weights[j] * std::complex<double>(std::cos(a), std::sin(a));
  }
  Eigen::VectorXcd h(M1);
  for (int i = 0; i < M1; ++i) {
    const double* row = fgrid_.data() + static_cast<ptrdiff_t>(i) * M2;
    if (compensated_) {
      KahanSum acc;
      for (int j = 0; j < M2; ++j) acc.add(row[j] * phase[j]);
      h[i] = acc.sum;
    } else {
      std::complex<double> acc(0.0, 0.0);
      for (int j = 0; j < M2; ++j) acc += row[j] * phase[j];
      h[i] = acc;
    }
  }
  return col_stages_.emplace(k2, std::move(h)).first->second;
}

const Eigen::VectorXcd& CoeffOracle::row_stage(int k1) {
  auto it = row_stages_.find(k1);
  if (it != row_stages_.end()) return it->second;
  const int M1 = r1_.size();
  const int M2 = r2_.size();
  Eigen::VectorXcd phase(M1);
  for (int i = 0; i < M1; ++i) {
    const double a = -static_cast<double>(k1) * r1_.nodes[i];
    phase[i] = r1_.weights[i] * std::complex<double>(std::cos(a), std::sin(a));
  }
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(M2);
  if (compensated_) {
    std::vector<KahanSum> acc(M2);
    for (int i = 0; i < M1; ++i) {
      const double* row = fgrid_.data() + static_cast<ptrdiff_t>(i) * M2;
      for (int j = 0; j < M2; ++j) acc[j].add(phase[i] * row[j]);
    }
    for (int j = 0; j < M2; ++j) g[j] = acc[j].sum;
  } else {
    for (int i = 0; i < M1; ++i) {
      const double* row = fgrid_.data() + static_cast<ptrdiff_t>(i) * M2;
      for (int j = 0; j < M2; ++j) g[j] += phase[i] * row[j];
    }
  }
  return row_stages_.emplace(k1, std::move(g)).first->second;
}

std::complex<double> CoeffOracle::ensure_col(int k1, int k2) {
  const uint64_t k = key(k1, k2);
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  const Eigen::VectorXcd& h = col_stage(k2);
  const int M1 = r1_.size();
  std::complex<double> acc(0.0, 0.0);
  if (compensated_) {
    KahanSum ks;
    for (int i = 0; i < M1; ++i) {
      const double a = -static_cast<double>(k1) * r1_.nodes[i];
      ks.add(r1_.weights[i] * std::complex<double>(std::cos(a), std::sin(a)) *
             h[i]);
    }
    acc = ks.sum;
  } else {
    for (int i = 0; i < M1; ++i) {
      const double a = -static_cast<double>(k1) * r1_.nodes[i];
      acc +=
          r1_.weights[i] * std::complex<double>(std::cos(a), std::sin(a)) * h[i];
    }
  }
  acc *= 1.0 / (4.0 * kPi * kPi);
  cache_.emplace(k, acc);
  ++n_integrals_;
  return acc;
}

std::complex<double> CoeffOracle::ensure_row(int k1, int k2) {
  const uint64_t k = key(k1, k2);
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  const Eigen::VectorXcd& g = row_stage(k1);
  const int M2 = r2_.size();
  std::complex<double> acc(0.0, 0.0);
  if (compensated_) {
    KahanSum ks;
    for (int j = 0; j < M2; ++j) {
      const double a = -static_cast<double>(k2) * r2_.nodes[j];
      ks.add(r2_.weights[j] * std::complex<double>(std::cos(a), std::sin(a)) *
             g[j]);
    }
    acc = ks.sum;
  } else {
    for (int j = 0; j < M2; ++j) {
      const double a = -static_cast<double>(k2) * r2_.nodes[j];
      acc +=
          r2_.weights[j] * std::complex<double>(std::cos(a), std::sin(a)) * g[j];
    }
  }
  acc *= 1.0 / (4.0 * kPi * kPi);
  cache_.emplace(k, acc);
  ++n_integrals_;
  return acc;
}

std::complex<double> CoeffOracle::coeff(int k1, int k2) {
  check_bounds(k1, k2);
  return ensure_col(k1, k2);
}

Eigen::VectorXcd CoeffOracle::col_coeffs(int k2, const std::vector<int>& k1s) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(k1s.size()));
  for (size_t s = 0; s < k1s.size(); ++s) {
    check_bounds(k1s[s], k2);
    out[static_cast<Eigen::Index>(s)] = ensure_col(k1s[s], k2);
  }
  return out;
}

Eigen::VectorXcd CoeffOracle::row_coeffs(int k1, const std::vector<int>& k2s) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(k2s.size()));
  for (size_t s = 0; s < k2s.size(); ++s) {
    check_bounds(k1, k2s[s]);
    out[static_cast<Eigen::Index>(s)] = ensure_row(k1, k2s[s]);
  }
  return out;
}

CMatrix CoeffOracle::column_block(const IndexSet& T2) {
  validate_index_set(T2, I2_);
  const int rows = 2 * I1_ + 1;
  CMatrix C(rows, static_cast<Eigen::Index>(T2.size()));
  for (size_t s = 0; s < T2.size(); ++s) {
    for (int i = 0; i < rows; ++i) {
      C(i, static_cast<Eigen::Index>(s)) = ensure_col(i - I1_, T2[s]);
    }
  }
  return C;
}

CMatrix CoeffOracle::row_block(const IndexSet& T1) {
  validate_index_set(T1, I1_);
  const int cols = 2 * I2_ + 1;
  CMatrix R(static_cast<Eigen::Index>(T1.size()), cols);
  for (size_t s = 0; s < T1.size(); ++s) {
    for (int j = 0; j < cols; ++j) {
      R(static_cast<Eigen::Index>(s), j) = ensure_row(T1[s], j - I2_);
    }
  }
  return R;
}

CMatrix CoeffOracle::core_block(const IndexSet& T1, const IndexSet& T2) {
  validate_index_set(T1, I1_);
  validate_index_set(T2, I2_);
  CMatrix G(static_cast<Eigen::Index>(T1.size()),
            static_cast<Eigen::Index>(T2.size()));
  for (size_t s2 = 0; s2 < T2.size(); ++s2) {
    for (size_t s1 = 0; s1 < T1.size(); ++s1) {
      G(static_cast<Eigen::Index>(s1), static_cast<Eigen::Index>(s2)) =
          ensure_col(T1[s1], T2[s2]);
    }
  }
  return G;
}

CMatrix CoeffOracle::full_matrix() {
  const int rows = 2 * I1_ + 1;
  const int cols = 2 * I2_ + 1;
  CMatrix A(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      A(i, j) = ensure_col(i - I1_, j - I2_);
    }
  }
  return A;
}

}  // namespace fourcur
