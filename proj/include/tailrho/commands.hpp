#pragma once

#include "tailrho/copula.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

// Implementations of the tailrho subcommands. Each returns the process exit
// code and writes human-readable output to `out` and diagnostics to `err`.

namespace tailrho::cli {

enum ExitCode : int
{
  ok = 0,
  failure = 1,
  usage = 2,
  data_precondition = 3,
};

struct EstimateOptions
{
  std::filesystem::path input;
  double p = 0.0;
  std::string method = "both";  // both | empirical | bernstein
  std::string degree = "rule";  // rule | positive integer
  bool jitter = false;
  std::uint64_t jitter_seed = 42;
  RankScale rank_scale = RankScale::n;
  std::optional<std::filesystem::path> out;
};

struct SimulateOptions
{
  std::vector<double> thetas;
  std::vector<std::uint64_t> ns;
  std::vector<double> ps;
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  RankScale rank_scale = RankScale::n;
  std::filesystem::path out;
};

struct SweepOptions
{
  double theta = 0.0;
  std::uint64_t n = 0;
  double p = 0.0;
  std::size_t m_max = 0;
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  RankScale rank_scale = RankScale::n;
  std::filesystem::path out;
};

struct AsymptOptions
{
  double theta = 0.0;
  double p = 0.0;
  std::uint64_t n = 0;
  std::size_t sigma_reps = 0; // > 0 adds a Monte Carlo sigma_p^2 estimate
  std::uint64_t seed = 42;
  RankScale rank_scale = RankScale::n;
};

int cmd_estimate(const EstimateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_asympt(const AsymptOptions& opts, std::ostream& out, std::ostream& err);

} // namespace tailrho::cli
