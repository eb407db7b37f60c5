#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fourcur/errors.hpp"
#include "fourcur/experiment.hpp"

namespace {

// exit codes: 0 ok, 2 invalid configuration, 3 numeric failure,
//             4 capacity/budget exceeded, 5 I/O failure
constexpr int kOk = 0;
constexpr int kBadConfig = 2;
constexpr int kNumeric = 3;
constexpr int kCapacity = 4;
constexpr int kIo = 5;

struct CliOptions {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::string pairs;  // sweep-blocks: "2,2;4,4;..."
  std::string taus;   // sweep-tau: "1e-1,1e-2,..."
};

// Register --config plus one string flag per config key; collected flags are
// applied over the file values in apply_setting order.
void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "key = value configuration file");
  static const std::vector<std::string> keys = {
      "function", "quad",    "M1",      "M2",     "I1",        "I2",
      "alpha",    "eps",     "C_const", "seminorm", "b1",      "b2",
      "tau",      "K",       "grid_n",  "repeats", "algorithm", "output_dir",
      "budget",   "l2_gap",  "quads"};
  for (const auto& key : keys) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [&opt, key](const std::string& v) { opt.overrides.emplace_back(key, v); },
        "override config key '" + key + "'");
  }
}

fourcur::ExperimentConfig build_config(const CliOptions& opt) {
  fourcur::ExperimentConfig cfg;
  if (!opt.config_path.empty()) cfg = fourcur::load_config(opt.config_path);
  for (const auto& [key, value] : opt.overrides) {
    fourcur::apply_setting(cfg, key, value);
  }
  return cfg;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& s) {
  std::vector<std::pair<int, int>> pairs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("bad pair '" + item + "' (want b1,b2)");
    }
    pairs.emplace_back(std::stoi(item.substr(0, comma)),
                       std::stoi(item.substr(comma + 1)));
  }
  if (pairs.empty()) throw std::invalid_argument("empty pair list");
  return pairs;
}

std::vector<double> parse_taus(const std::string& s) {
  std::vector<double> taus;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) taus.push_back(std::stod(item));
  if (taus.empty()) throw std::invalid_argument("empty tau list");
  return taus;
}

void print_summary(const fourcur::RunSummary& s) {
  std::printf("%-12s %s %s: max_err=%.3e S1=%d S2=%d iters=%d integrals=%lld "
              "elapsed=%.3fs\n",
              s.algorithm.c_str(), fourcur::to_string(s.quad),
              s.function.c_str(), s.max_err, s.S1, s.S2, s.iterations,
              s.n_integrals, s.elapsed_seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank CUR approximation of truncated Fourier series"};
  app.require_subcommand(1);

  CliOptions approx_opt, blocks_opt, tau_opt, compare_opt;
  auto* approx = app.add_subcommand("approx", "run one approximation");
  add_common_flags(approx, approx_opt);
  auto* blocks = app.add_subcommand("sweep-blocks", "sweep (b1,b2) pairs");
  add_common_flags(blocks, blocks_opt);
  blocks->add_option("--pairs", blocks_opt.pairs,
                     "semicolon-separated pairs, e.g. 2,2;4,4");
  auto* taus = app.add_subcommand("sweep-tau", "sweep tolerances");
  add_common_flags(taus, tau_opt);
  taus->add_option("--taus", tau_opt.taus, "comma-separated tau values");
  auto* comp = app.add_subcommand(
      "compare", "truncated Fourier vs the adaptive algorithms");
  add_common_flags(comp, compare_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  try {
    if (approx->parsed()) {
      print_summary(fourcur::run_approx(build_config(approx_opt)));
    } else if (blocks->parsed()) {
      const auto cfg = build_config(blocks_opt);
      const auto rows =
          blocks_opt.pairs.empty()
              ? fourcur::sweep_blocks(cfg)
              : fourcur::sweep_blocks(cfg, parse_pairs(blocks_opt.pairs));
      for (const auto& r : rows) print_summary(r);
    } else if (taus->parsed()) {
      const auto cfg = build_config(tau_opt);
      const auto rows = tau_opt.taus.empty()
                            ? fourcur::sweep_tau(cfg)
                            : fourcur::sweep_tau(cfg, parse_taus(tau_opt.taus));
      for (const auto& r : rows) print_summary(r);
    } else if (comp->parsed()) {
      for (const auto& r : fourcur::compare(build_config(compare_opt))) {
        print_summary(r);
      }
    }
  } catch (const fourcur::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const fourcur::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const fourcur::NumericDomainError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const fourcur::NumericFailure& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
