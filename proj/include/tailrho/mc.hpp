#pragma once

#include "tailrho/copula.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace tailrho {

struct RuleOfThumb
{};

struct FixedDegree
{
  std::size_t m;
};

struct DegreeSweep
{
  std::size_t m_min;
  std::size_t m_max;
};

using DegreeRule = std::variant<RuleOfThumb, FixedDegree, DegreeSweep>;

struct ExperimentConfig
{
  std::vector<double> thetas;
  std::vector<std::uint64_t> ns;
  std::vector<double> ps;
  DegreeRule degree_rule = RuleOfThumb{};
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  std::size_t threads = 0; // 0 = hardware concurrency
  RankScale rank_scale = RankScale::n;
};

//! Per-call execution settings. `cell` selects the family of random streams;
//! replicate r of cell c always draws from stream (seed, c, r).
struct RunOptions
{
  std::uint64_t cell = 0;
  std::size_t threads = 0;
  RankScale rank_scale = RankScale::n;
};

//! Monte Carlo summary of both estimators in one (theta, n, p, m) cell.
//! Variances use the K-1 divisor and are NaN when K = 1; MSEs are the mean
//! squared deviation from the true tail rho. mse_reduction_pct is NaN when
//! mse_emp is zero.
struct CellSummary
{
  double theta;
  std::uint64_t n;
  double p;
  std::size_t m;
  std::size_t reps;
  double rho;
  double abs_bias_emp;
  double abs_bias_bern;
  double var_emp;
  double var_bern;
  double mse_emp;
  double mse_bern;
  double mse_reduction_pct;
};

//! Raw per-replicate estimates, in replicate order.
struct Replicates
{
  std::vector<double> empirical;
  std::vector<double> bernstein;
};

//! Raised by run_table when one or more cells fail; what() names each cell.
class CellFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Worker count from TAILRHO_THREADS (unset or 0 means automatic).
std::size_t threads_from_env();

//! Runs body(i) for i in [0, count) on up to `threads` workers. The first
//! exception by index is rethrown after all workers finish.
void parallel_for(std::size_t count,
                  std::size_t threads,
                  const std::function<void(std::size_t)>& body);

//! Both estimators on `reps` FGM samples. Each replicate draws from its own
//! stream, so results do not depend on the worker count.
Replicates simulate_replicates(double theta,
                               std::uint64_t n,
                               double p,
                               std::size_t m,
                               std::size_t reps,
                               std::uint64_t seed,
                               const RunOptions& run = {});

CellSummary summarize(double theta,
                      std::uint64_t n,
                      double p,
                      std::size_t m,
                      double rho,
                      std::span<const double> empirical,
                      std::span<const double> bernstein);

CellSummary run_cell(double theta,
                     std::uint64_t n,
                     double p,
                     std::size_t m,
                     std::size_t reps,
                     std::uint64_t seed,
                     const RunOptions& run = {});

//! One row per (theta, n, p), theta-major, or one row per degree for each
//! cell under a sweep rule.
std::vector<CellSummary> run_table(const ExperimentConfig& config);

//! Rows for m = m_min..m_max, all computed from the same replicate samples.
std::vector<CellSummary> degree_sweep(double theta,
                                      std::uint64_t n,
                                      double p,
                                      std::size_t m_min,
                                      std::size_t m_max,
                                      std::size_t reps,
                                      std::uint64_t seed,
                                      const RunOptions& run = {});

//! n times the sample variance of the empirical estimator over `reps`
//! replicates; a Monte Carlo proxy for sigma_p^2.
double estimate_sigma_p2(double theta,
                         double p,
                         std::uint64_t n,
                         std::size_t reps,
                         std::uint64_t seed,
                         const RunOptions& run = {});

} // namespace tailrho
