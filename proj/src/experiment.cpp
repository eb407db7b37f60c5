#include "fourcur/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "fourcur/errors.hpp"
#include "fourcur/testfns.hpp"

namespace fourcur {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for " + key + ": '" + v + "'");
  }
}

long long parse_ll(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer for " + key + ": '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("bad boolean for " + key + ": '" + v + "'");
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot open for writing: " + p.string());
  return out;
}

void require_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("output directory does not exist: " + dir);
  }
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.M1 < 1 || cfg.M2 < 1) throw std::invalid_argument("M1, M2 must be >= 1");
  if (cfg.b1 < 1 || cfg.b2 < 1) throw std::invalid_argument("b1, b2 must be >= 1");
  if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1)");
  }
  if (cfg.K < 1) throw std::invalid_argument("K must be >= 1");
  if (cfg.grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  if (cfg.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (cfg.budget < 1) throw std::invalid_argument("budget must be >= 1");
  static const std::vector<std::string> algs = {"alg1", "alg2", "algc1",
                                                "truncated", "fixed"};
  if (std::find(algs.begin(), algs.end(), cfg.algorithm) == algs.end()) {
    throw std::invalid_argument("unknown algorithm: " + cfg.algorithm);
  }
}

void write_errors_csv(const fs::path& path, const ErrorReport& rep) {
  std::ofstream out = open_out(path);
  out << "x1,x2,f,approx_real,approx_imag,err\n";
  const int n1 = static_cast<int>(rep.grid.x1s.size());
  const int n2 = static_cast<int>(rep.grid.x2s.size());
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      out << fmt17(rep.grid.x1s[i]) << ',' << fmt17(rep.grid.x2s[j]) << ','
          << fmt17(rep.f_vals(i, j)) << ',' << fmt17(rep.g_vals(i, j)) << ','
          << fmt17(rep.g_imag(i, j)) << ',' << fmt17(rep.err(i, j)) << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path.string());
}

json summary_to_json(const RunSummary& s, const ExperimentConfig& cfg, int I1,
                     int I2) {
  json j;
  j["algorithm"] = s.algorithm;
  j["function"] = s.function;
  j["quad"] = to_string(s.quad);
  j["I1"] = I1;
  j["I2"] = I2;
  j["M1"] = cfg.M1;
  j["M2"] = cfg.M2;
  j["b1"] = cfg.b1;
  j["b2"] = cfg.b2;
  j["tau"] = cfg.tau;
  j["K"] = cfg.K;
  j["grid_n"] = cfg.grid_n;
  j["max_err"] = s.max_err;
  if (s.l2_gap) j["l2_gap"] = *s.l2_gap;
  j["S1"] = s.S1;
  j["S2"] = s.S2;
  j["iterations"] = s.iterations;
  j["n_integrals"] = s.n_integrals;
  j["elapsed_seconds"] = s.elapsed_seconds;
  if (s.stop_reason) j["stop_reason"] = to_string(*s.stop_reason);
  j["max_imag_residue"] = s.max_imag_residue;
  return j;
}

// Banded index set {0} u band(1) u ... u band(K), clipped to [-bound, bound].
IndexSet banded_set(int b, int K, int bound) {
  IndexSet T{0};
  for (int k = 1; k <= K; ++k) {
    for (int v : index_band(k, b)) {
      if (v >= -bound && v <= bound) T.push_back(v);
    }
  }
  std::sort(T.begin(), T.end());
  return T;
}

struct SingleRun {
  RunSummary summary;
  ErrorReport report;
};

// One full construction + grid evaluation. `algorithm`, quad and (b1,b2,tau)
// are taken as parameters so the sweeps can vary them; timing covers
// sampling + coefficient work, averaged over cfg.repeats.
// When `gap_reference` is non-null the CUR gap ||A - CUR||_F is computed
// against it. A truncated run stores its coefficient matrix in *keep_full
// when requested.
SingleRun run_single(const ExperimentConfig& cfg, const std::string& algorithm,
                     QuadKind quad, int b1, int b2, double tau,
                     const CMatrix* gap_reference = nullptr,
                     CMatrix* keep_full = nullptr) {
  const BivariateFn f = resolve_function(cfg.function);
  const auto [I1, I2] = resolve_orders(cfg);

  RunSummary s;
  s.algorithm = algorithm;
  s.function = cfg.function;
  s.quad = quad;

  const bool truncated = (algorithm == "truncated");
  if (truncated) {
    const long long entries =
        static_cast<long long>(2 * I1 + 1) * (2 * I2 + 1);
    if (entries > cfg.budget) {
      throw CapacityError("full truncation needs " + std::to_string(entries) +
                          " integrals, over the budget of " +
                          std::to_string(cfg.budget));
    }
  } else if (algorithm == "fixed") {
    const long long S1 = static_cast<long long>(banded_set(b1, cfg.K, I1).size());
    const long long S2 = static_cast<long long>(banded_set(b2, cfg.K, I2).size());
    const long long cost =
        (2 * I1 + 1) * S2 + (2 * I2 + 1) * S1 - S1 * S2;
    if (cost > cfg.budget) {
      throw CapacityError("fixed index sets need " + std::to_string(cost) +
                          " integrals, over the budget of " +
                          std::to_string(cfg.budget));
    }
  }

  CMatrix A_full;          // truncated runs only
  CurModel model;
  double elapsed_sum = 0.0;
  for (int rep = 0; rep < cfg.repeats; ++rep) {
    const auto t0 = Clock::now();
    CoeffOracle oracle(f, I1, I2, make_rule(quad, cfg.M1),
                       make_rule(quad, cfg.M2));
    if (truncated) {
      A_full = oracle.full_matrix();
      s.n_integrals = oracle.integral_count();
      s.S1 = 2 * I1 + 1;
      s.S2 = 2 * I2 + 1;
      s.iterations = 0;
    } else {
      if (algorithm == "alg1") {
        model = algorithm1(oracle, b1, b2, tau, cfg.K);
      } else if (algorithm == "alg2") {
        model = algorithm2(oracle, b1, b2, tau, cfg.K);
      } else if (algorithm == "algc1") {
        model = algorithm_c1(oracle, b1, b2, tau, cfg.K);
      } else {  // fixed
        model = cur_fixed(oracle, banded_set(b1, cfg.K, I1),
                          banded_set(b2, cfg.K, I2), CurMode::Cross,
                          cfg.budget);
      }
      s.n_integrals = model.stats.n_integrals;
      s.S1 = model.S1();
      s.S2 = model.S2();
      s.iterations = model.stats.iterations;
      s.stop_reason = model.stats.stop_reason;
    }
    elapsed_sum += std::chrono::duration<double>(Clock::now() - t0).count();
  }
  s.elapsed_seconds = elapsed_sum / cfg.repeats;

  GridEvaluator evaluator;
  if (truncated) {
    evaluator = [&](const EvalGrid& g) { return eval_truncated(A_full, I1, I2, g); };
  } else {
    evaluator = [&](const EvalGrid& g) { return eval_cur(model, g); };
  }
  SingleRun run;
  run.report = error_grid(f, evaluator, cfg.grid_n);
  s.max_err = run.report.max_err;
  s.max_imag_residue = run.report.max_imag_residue;

  if (!truncated) {
    if (gap_reference != nullptr) {
      s.l2_gap = l2_gap(*gap_reference, model);
    } else if (cfg.l2_gap) {
      const long long entries =
          static_cast<long long>(2 * I1 + 1) * (2 * I2 + 1);
      if (entries > cfg.budget) {
        throw CapacityError("l2_gap needs the full matrix (" +
                            std::to_string(entries) +
                            " integrals), over the budget");
      }
      CoeffOracle ref(f, I1, I2, make_rule(quad, cfg.M1),
                      make_rule(quad, cfg.M2));
      s.l2_gap = l2_gap(ref.full_matrix(), model);
    }
  }
  if (truncated && keep_full != nullptr) *keep_full = A_full;
  run.summary = s;
  run.report.l2_gap = s.l2_gap;
  run.report.n_integrals = s.n_integrals;
  return run;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    }
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value) {
  if (key == "function") cfg.function = value;
  else if (key == "quad") cfg.quad = quad_kind_from_string(value);
  else if (key == "M1") cfg.M1 = parse_int(key, value);
  else if (key == "M2") cfg.M2 = parse_int(key, value);
  else if (key == "I1") cfg.I1 = parse_int(key, value);
  else if (key == "I2") cfg.I2 = parse_int(key, value);
  else if (key == "alpha") cfg.alpha = parse_int(key, value);
  else if (key == "eps") cfg.eps = parse_double(key, value);
  else if (key == "C_const") cfg.C_const = parse_double(key, value);
  else if (key == "seminorm") cfg.seminorm = parse_double(key, value);
  else if (key == "b1") cfg.b1 = parse_int(key, value);
  else if (key == "b2") cfg.b2 = parse_int(key, value);
  else if (key == "tau") cfg.tau = parse_double(key, value);
  else if (key == "K") cfg.K = parse_int(key, value);
  else if (key == "grid_n") cfg.grid_n = parse_int(key, value);
  else if (key == "repeats") cfg.repeats = parse_int(key, value);
  else if (key == "algorithm") cfg.algorithm = value;
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "budget") cfg.budget = parse_ll(key, value);
  else if (key == "l2_gap") cfg.l2_gap = parse_bool(key, value);
  else if (key == "quads") {
    cfg.quads.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      cfg.quads.push_back(quad_kind_from_string(trim(item)));
    }
    if (cfg.quads.empty()) throw std::invalid_argument("quads list is empty");
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

std::pair<int, int> resolve_orders(const ExperimentConfig& cfg) {
  if (cfg.I1 && cfg.I2) return {*cfg.I1, *cfg.I2};
  if (cfg.I1 || cfg.I2) {
    throw std::invalid_argument("set both I1 and I2, or neither");
  }
  if (cfg.alpha && cfg.eps) {
    const OrderEstimate est =
        estimate_orders(*cfg.alpha, *cfg.eps, cfg.C_const, cfg.seminorm);
    return {est.I1, est.I2};
  }
  throw std::invalid_argument(
      "truncation orders unspecified: set (I1, I2) or (alpha, eps)");
}

RunSummary run_approx(const ExperimentConfig& cfg) {
  validate(cfg);
  require_dir(cfg.output_dir);
  const SingleRun run =
      run_single(cfg, cfg.algorithm, cfg.quad, cfg.b1, cfg.b2, cfg.tau);

  write_errors_csv(fs::path(cfg.output_dir) / "errors.csv", run.report);
  const auto [I1, I2] = resolve_orders(cfg);
  std::ofstream out = open_out(fs::path(cfg.output_dir) / "summary.json");
  out << summary_to_json(run.summary, cfg, I1, I2).dump(2) << '\n';
  if (!out) throw IoError("write failed: summary.json");
  return run.summary;
}

std::vector<RunSummary> sweep_blocks(
    const ExperimentConfig& cfg, const std::vector<std::pair<int, int>>& pairs) {
  validate(cfg);
  require_dir(cfg.output_dir);
  if (pairs.empty()) throw std::invalid_argument("empty (b1,b2) pair list");
  if (cfg.algorithm != "alg1" && cfg.algorithm != "alg2" &&
      cfg.algorithm != "algc1") {
    throw std::invalid_argument("sweep-blocks needs an adaptive algorithm");
  }
  std::vector<RunSummary> rows;
  std::ofstream out = open_out(fs::path(cfg.output_dir) / "table.csv");
  out << "b1,b2,elapsed,max_err,S1,S2,n_integrals\n";
  for (const auto& [b1, b2] : pairs) {
    const SingleRun run = run_single(cfg, cfg.algorithm, cfg.quad, b1, b2, cfg.tau);
    out << b1 << ',' << b2 << ',' << fmt17(run.summary.elapsed_seconds) << ','
        << fmt17(run.summary.max_err) << ',' << run.summary.S1 << ','
        << run.summary.S2 << ',' << run.summary.n_integrals << '\n';
    rows.push_back(run.summary);
  }
  if (!out) throw IoError("write failed: table.csv");
  return rows;
}

std::vector<RunSummary> sweep_tau(const ExperimentConfig& cfg,
                                  const std::vector<double>& taus) {
  validate(cfg);
  require_dir(cfg.output_dir);
  if (taus.empty()) throw std::invalid_argument("empty tau list");
  if (cfg.algorithm != "alg1" && cfg.algorithm != "alg2" &&
      cfg.algorithm != "algc1") {
    throw std::invalid_argument("sweep-tau needs an adaptive algorithm");
  }
  std::vector<RunSummary> rows;
  std::ofstream out = open_out(fs::path(cfg.output_dir) / "table.csv");
  out << "tau,elapsed,max_err,S1,S2,n_integrals\n";
  for (double tau : taus) {
    if (!(tau > 0.0 && tau < 1.0)) {
      throw std::invalid_argument("tau must lie in (0, 1)");
    }
    const SingleRun run =
        run_single(cfg, cfg.algorithm, cfg.quad, cfg.b1, cfg.b2, tau);
    out << fmt17(tau) << ',' << fmt17(run.summary.elapsed_seconds) << ','
        << fmt17(run.summary.max_err) << ',' << run.summary.S1 << ','
        << run.summary.S2 << ',' << run.summary.n_integrals << '\n';
    rows.push_back(run.summary);
  }
  if (!out) throw IoError("write failed: table.csv");
  return rows;
}

std::vector<RunSummary> compare(const ExperimentConfig& cfg) {
  validate(cfg);
  require_dir(cfg.output_dir);

  static const std::vector<std::pair<std::string, std::string>> methods = {
      {"truncated", "Truncated Fourier"},
      {"alg1", "Algorithm 1"},
      {"alg2", "Algorithm 2"},
      {"algc1", "Algorithm C.1"}};

  std::vector<RunSummary> rows;
  std::ofstream out = open_out(fs::path(cfg.output_dir) / "table.csv");
  out << "method,quad,function,elapsed,max_err,l2_gap,n_integrals,S1,S2,"
         "iterations,stop_reason\n";
  for (QuadKind quad : cfg.quads) {
    // the truncated run doubles as the gap reference for the adaptive rows
    CMatrix A;
    for (const auto& [alg, label] : methods) {
      SingleRun run;
      if (alg == "truncated") {
        run = run_single(cfg, alg, quad, cfg.b1, cfg.b2, cfg.tau, nullptr, &A);
      } else {
        run = run_single(cfg, alg, quad, cfg.b1, cfg.b2, cfg.tau, &A);
      }
      write_errors_csv(fs::path(cfg.output_dir) /
                           ("errors_" + alg + "_" + to_string(quad) + ".csv"),
                       run.report);
      out << label << ',' << to_string(quad) << ',' << cfg.function << ','
          << fmt17(run.summary.elapsed_seconds) << ','
          << fmt17(run.summary.max_err) << ','
          << (run.summary.l2_gap ? fmt17(*run.summary.l2_gap) : std::string())
          << ',' << run.summary.n_integrals << ',' << run.summary.S1 << ','
          << run.summary.S2 << ',' << run.summary.iterations << ','
          << (run.summary.stop_reason ? to_string(*run.summary.stop_reason)
                                      : "")
          << '\n';
      rows.push_back(run.summary);
    }
  }
  if (!out) throw IoError("write failed: table.csv");
  return rows;
}

}  // namespace fourcur
