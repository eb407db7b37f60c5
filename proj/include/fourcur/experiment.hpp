#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fourcur/approximant.hpp"
#include "fourcur/cur.hpp"
#include "fourcur/quadrature.hpp"

namespace fourcur {

/// Experiment configuration. Loaded from a flat key=value file and/or CLI
/// flags with the same names; flags override file values.
struct ExperimentConfig {
  std::string function = "f2";
  QuadKind quad = QuadKind::NC;
  int M1 = 5001;  // desk runs should override to ~501
  int M2 = 5001;
  std::optional<int> I1;  // explicit orders, or (alpha, eps, ...) below
  std::optional<int> I2;
  std::optional<int> alpha;
  std::optional<double> eps;
  double C_const = 1.0;
  double seminorm = 1.0;
  int b1 = 1;
  int b2 = 1;
  double tau = 1e-5;
  int K = 100;
  int grid_n = 60;
  int repeats = 1;
  std::string algorithm = "alg2";  // alg1 | alg2 | algc1 | truncated | fixed
  std::string output_dir = ".";
  long long budget = 10'000'000;  // max double integrals for full truncation
  bool l2_gap = false;            // also compute ||A - CUR||_F (costs full A)
  std::vector<QuadKind> quads = {QuadKind::CC, QuadKind::GL,
                                 QuadKind::NC};  // compare only
};

ExperimentConfig load_config(const std::string& path);

/// Apply one key=value override; throws std::invalid_argument on unknown
/// keys or malformed values.
void apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value);

/// Resolve (I1, I2) from explicit orders or the (alpha, eps) estimate.
std::pair<int, int> resolve_orders(const ExperimentConfig& cfg);

struct RunSummary {
  std::string algorithm;
  std::string function;
  QuadKind quad = QuadKind::NC;
  double max_err = 0.0;
  std::optional<double> l2_gap;
  int S1 = 0;
  int S2 = 0;
  int iterations = 0;
  long long n_integrals = 0;
  double elapsed_seconds = 0.0;
  std::optional<StopReason> stop_reason;  // absent for truncated runs
  double max_imag_residue = 0.0;
};

/// Run one approximation and write errors.csv + summary.json into
/// cfg.output_dir (which must exist). Timing is the mean over cfg.repeats
/// independent runs.
RunSummary run_approx(const ExperimentConfig& cfg);

inline const std::vector<std::pair<int, int>> kDefaultBlockPairs = {
    {2, 2},   {4, 4},   {6, 6},   {8, 8},   {10, 10},
    {12, 12}, {14, 14}, {16, 16}, {18, 18}, {20, 20}};

inline const std::vector<double> kDefaultTaus = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5,
                                                 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};

/// One adaptive run per (b1, b2) pair; writes table.csv
/// (b1,b2,elapsed,max_err,S1,S2,n_integrals).
std::vector<RunSummary> sweep_blocks(
    const ExperimentConfig& cfg,
    const std::vector<std::pair<int, int>>& pairs = kDefaultBlockPairs);

/// One adaptive run per tau; writes table.csv
/// (tau,elapsed,max_err,S1,S2,n_integrals).
std::vector<RunSummary> sweep_tau(const ExperimentConfig& cfg,
                                  const std::vector<double>& taus = kDefaultTaus);

/// Truncated Fourier vs algorithms 1, 2 and the block-diagonal variant,
/// across cfg.quads. Writes table.csv plus one errors_<method>_<quad>.csv
/// per run (values and pointwise errors for figure regeneration). Requires
/// desk-scale orders (the full truncation must fit cfg.budget).
std::vector<RunSummary> compare(const ExperimentConfig& cfg);

}  // namespace fourcur
