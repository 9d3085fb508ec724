#include "tailrho/estimators.hpp"
#include "tailrho/fgm.hpp"
#include "tailrho/mc.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

using namespace tailrho;

namespace {

void expect_same(const CellSummary& a, const CellSummary& b)
{
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.m, b.m);
  EXPECT_EQ(a.reps, b.reps);
  EXPECT_EQ(a.rho, b.rho);
  EXPECT_EQ(a.abs_bias_emp, b.abs_bias_emp);
  EXPECT_EQ(a.abs_bias_bern, b.abs_bias_bern);
  EXPECT_EQ(a.var_emp, b.var_emp);
  EXPECT_EQ(a.var_bern, b.var_bern);
  EXPECT_EQ(a.mse_emp, b.mse_emp);
  EXPECT_EQ(a.mse_bern, b.mse_bern);
  EXPECT_EQ(a.mse_reduction_pct, b.mse_reduction_pct);
}

ExperimentConfig small_config()
{
  ExperimentConfig config;
  config.thetas = { -1.0, 0.5 };
  config.ns = { 20, 45 };
  config.ps = { 0.3, 1.0 };
  config.reps = 300;
  config.seed = 7;
  return config;
}

} // namespace

TEST(ParallelFor, VisitsEveryIndexOnce)
{
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits)
    ASSERT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestFailingIndex)
{
  for (std::size_t threads : { 1, 3, 8 }) {
    try {
      parallel_for(200, threads, [](std::size_t i) {
        if (i == 57 || i == 140)
          throw std::runtime_error("index " + std::to_string(i));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
      EXPECT_EQ(std::string(e.what()), "index 57");
    }
  }
}

TEST(ThreadsFromEnv, ParsesVariable)
{
  ::unsetenv("TAILRHO_THREADS");
  EXPECT_EQ(threads_from_env(), 0u);
  ::setenv("TAILRHO_THREADS", "3", 1);
  EXPECT_EQ(threads_from_env(), 3u);
  ::setenv("TAILRHO_THREADS", "0", 1);
  EXPECT_EQ(threads_from_env(), 0u);
  ::setenv("TAILRHO_THREADS", "lots", 1);
  EXPECT_THROW(threads_from_env(), std::invalid_argument);
  ::setenv("TAILRHO_THREADS", "-2", 1);
  EXPECT_THROW(threads_from_env(), std::invalid_argument);
  ::unsetenv("TAILRHO_THREADS");
}

TEST(Summarize, HandComputedMoments)
{
  const std::vector<double> emp{ 1.0, 2.0, 3.0 };
  const std::vector<double> bern{ 2.0, 2.0, 2.5 };
  const auto s = summarize(0.0, 10, 0.5, 2, 2.0, emp, bern);
  EXPECT_EQ(s.reps, 3u);
  EXPECT_NEAR(s.abs_bias_emp, 0.0, 1e-15);
  EXPECT_NEAR(s.var_emp, 1.0, 1e-15);
  EXPECT_NEAR(s.mse_emp, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.abs_bias_bern, 0.5 / 3.0, 1e-15);
  EXPECT_NEAR(s.var_bern, 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(s.mse_bern, 0.25 / 3.0, 1e-15);
  EXPECT_NEAR(s.mse_reduction_pct, 87.5, 1e-12);
}

TEST(Summarize, SingleReplicateHasUndefinedVariance)
{
  const std::vector<double> one{ 0.3 };
  const auto s = summarize(0.5, 10, 0.5, 2, 0.1, one, one);
  EXPECT_TRUE(std::isnan(s.var_emp));
  EXPECT_TRUE(std::isnan(s.var_bern));
  EXPECT_NEAR(s.mse_emp, 0.04, 1e-15);
  EXPECT_EQ(s.mse_reduction_pct, 0.0);
}

TEST(Summarize, ReductionUndefinedWhenEmpiricalMseVanishes)
{
  const std::vector<double> exact{ 0.2, 0.2 };
  const std::vector<double> off{ 0.1, 0.3 };
  EXPECT_TRUE(std::isnan(summarize(0.5, 10, 0.5, 2, 0.2, exact, off).mse_reduction_pct));
  EXPECT_THROW(summarize(0.5, 10, 0.5, 2, 0.2, exact, std::vector<double>{ 0.1 }), std::invalid_argument);
}

TEST(RunCell, SingleReplicateHasNanVariance)
{
  const auto s = run_cell(0.5, 30, 0.5, 9, 1, 3);
  EXPECT_TRUE(std::isnan(s.var_emp));
  EXPECT_TRUE(std::isfinite(s.mse_emp));
  EXPECT_TRUE(std::isfinite(s.mse_bern));
}

TEST(RunCell, DecompositionIdentity)
{
  for (double theta : { -1.0, 0.0, 1.0 }) {
    for (double p : { 0.1, 1.0 }) {
      const auto s = run_cell(theta, 40, p, 11, 500, 11);
      const double k = static_cast<double>(s.reps);
      EXPECT_NEAR(s.mse_emp, s.var_emp * (k - 1) / k + s.abs_bias_emp * s.abs_bias_emp, 1e-12);
      EXPECT_NEAR(s.mse_bern, s.var_bern * (k - 1) / k + s.abs_bias_bern * s.abs_bias_bern, 1e-12);
      EXPECT_EQ(s.rho, FgmModel(theta).rho_tail_analytic(p));
    }
  }
}

TEST(RunCell, ValidatesInputs)
{
  EXPECT_THROW(run_cell(1.5, 40, 0.5, 5, 10, 1), std::domain_error);
  EXPECT_THROW(run_cell(0.5, 0, 0.5, 5, 10, 1), std::domain_error);
  EXPECT_THROW(run_cell(0.5, 40, 0.0, 5, 10, 1), std::domain_error);
  EXPECT_THROW(run_cell(0.5, 40, 0.5, 5, 0, 1), std::domain_error);
  EXPECT_THROW(run_cell(0.5, 40, 0.5, 0, 10, 1), std::domain_error);
}

TEST(RunCell, RankScaleChangesEstimates)
{
  const auto by_n = simulate_replicates(0.5, 30, 1.0, 9, 5, 1);
  const auto by_n1 = simulate_replicates(0.5, 30, 1.0, 9, 5, 1, { .rank_scale = RankScale::n_plus_one });
  for (std::size_t r = 0; r < 5; ++r)
    EXPECT_NE(by_n.empirical[r], by_n1.empirical[r]);
}

TEST(RunTable, DeterministicAcrossThreadCounts)
{
  auto config = small_config();
  config.threads = 1;
  const auto serial = run_table(config);
  config.threads = 8;
  const auto parallel = run_table(config);
  ASSERT_EQ(serial.size(), 8u);
  ASSERT_EQ(parallel.size(), serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i)
    expect_same(serial[i], parallel[i]);
}

TEST(RunTable, GridOrderAndCellStreams)
{
  const auto config = small_config();
  const auto rows = run_table(config);
  std::size_t i = 0;
  for (double theta : config.thetas) {
    for (auto n : config.ns) {
      for (double p : config.ps) {
        ASSERT_EQ(rows[i].theta, theta);
        ASSERT_EQ(rows[i].n, n);
        ASSERT_EQ(rows[i].p, p);
        ASSERT_EQ(rows[i].m, rule_of_thumb_degree(n));
        expect_same(rows[i], run_cell(theta, n, p, rows[i].m, config.reps, config.seed,
                                      { .cell = i }));
        ++i;
      }
    }
  }
}

TEST(RunTable, SingletonEqualsRunCell)
{
  ExperimentConfig config;
  config.thetas = { 0.5 };
  config.ns = { 60 };
  config.ps = { 0.5 };
  config.degree_rule = FixedDegree{ 9 };
  config.reps = 400;
  config.seed = 99;
  const auto rows = run_table(config);
  ASSERT_EQ(rows.size(), 1u);
  expect_same(rows[0], run_cell(0.5, 60, 0.5, 9, 400, 99));
}

TEST(RunTable, SweepRuleExpandsRows)
{
  auto config = small_config();
  config.thetas = { 0.0 };
  config.ns = { 30 };
  config.degree_rule = DegreeSweep{ 2, 6 };
  const auto rows = run_table(config);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i)
    EXPECT_EQ(rows[i].m, 2 + i % 5);
}

TEST(RunTable, AggregatesCellFailures)
{
  auto config = small_config();
  config.thetas = { 0.5, 2.0, -3.0 };
  config.ns = { 20 };
  config.ps = { 0.5 };
  try {
    run_table(config);
    FAIL() << "expected CellFailure";
  } catch (const CellFailure& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2 cell(s) failed"), std::string::npos) << what;
    EXPECT_NE(what.find("theta=2"), std::string::npos) << what;
    EXPECT_NE(what.find("theta=-3"), std::string::npos) << what;
    EXPECT_EQ(what.find("theta=0.5"), std::string::npos) << what;
  }
  config.thetas.clear();
  EXPECT_THROW(run_table(config), std::invalid_argument);
}

TEST(DegreeSweep, UShapedMse)
{
  const auto rows = degree_sweep(-1.0, 50, 0.5, 1, 60, 2000, 42);
  ASSERT_EQ(rows.size(), 60u);
  const auto best = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.mse_bern < b.mse_bern;
  });
  EXPECT_GT(best->m, 1u);
  EXPECT_LT(best->m, 60u);
  EXPECT_LE(best->mse_bern, 0.8 * best->mse_emp);
  EXPECT_GT(rows[0].mse_bern, rows[12].mse_bern);
  EXPECT_GT(rows[59].mse_bern, best->mse_bern);
  for (const auto& r : rows) {
    EXPECT_EQ(r.mse_emp, rows[0].mse_emp);
    EXPECT_EQ(r.var_emp, rows[0].var_emp);
    EXPECT_EQ(r.abs_bias_emp, rows[0].abs_bias_emp);
  }
}

TEST(DegreeSweep, DegreeOneIsIndependence)
{
  // G(1,1) = 1 and G vanishes on the lower edges, so C_{1,n} = uv for every
  // sample: the degree-1 estimate is exactly 0.
  for (double theta : { 0.0, -1.0 }) {
    const auto rows = degree_sweep(theta, 50, 1.0, 1, 13, 500, 42);
    const double rho = FgmModel(theta).rho_tail_analytic(1.0);
    EXPECT_NEAR(rows[0].abs_bias_bern, std::abs(rho), 1e-14);
    EXPECT_NEAR(rows[0].var_bern, 0.0, 1e-28);
    EXPECT_NEAR(rows[0].mse_bern, rho * rho, 1e-14);
  }
}

TEST(DegreeSweep, RowsMatchRunCellOnSharedStreams)
{
  const auto rows = degree_sweep(-0.5, 40, 0.5, 3, 8, 250, 5);
  for (const auto& r : rows)
    expect_same(r, run_cell(-0.5, 40, 0.5, r.m, 250, 5));
  EXPECT_THROW(degree_sweep(0.0, 40, 0.5, 0, 3, 10, 1), std::domain_error);
  EXPECT_THROW(degree_sweep(0.0, 40, 0.5, 5, 3, 10, 1), std::domain_error);
}

TEST(SigmaP2, StableAcrossSeedsAndSampleSizes)
{
  const double a = estimate_sigma_p2(0.0, 1.0, 4000, 10000, 1);
  const double b = estimate_sigma_p2(0.0, 1.0, 4000, 10000, 2);
  EXPECT_NEAR(a / b, 1.0, 0.05);

  const double small = estimate_sigma_p2(0.0, 1.0, 1000, 10000, 3);
  EXPECT_NEAR(small / a, 1.0, 0.10);

  // first-order variance at n = 50 against a direct Monte Carlo cell
  const auto cell = run_cell(0.0, 50, 1.0, 13, 10000, 4);
  EXPECT_NEAR(a / 50.0 / cell.var_emp, 1.0, 0.15);

  EXPECT_THROW(estimate_sigma_p2(0.0, 1.0, 100, 1, 1), std::domain_error);
}

TEST(Clt, StandardizedBernsteinReplicatesLookGaussian)
{
  constexpr std::uint64_t n = 2000;
  const auto m = rule_of_thumb_degree(n);
  const auto reps = simulate_replicates(0.5, n, 0.5, m, 5000, 42);
  const double rho = FgmModel(0.5).rho_tail_analytic(0.5);
  std::vector<double> z(reps.bernstein.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    z[i] = std::sqrt(static_cast<double>(n)) * (reps.bernstein[i] - rho);
  const auto s = oracle::shape(z);
  EXPECT_LT(std::abs(s.skewness), 0.2);
  EXPECT_LT(std::abs(s.excess_kurtosis), 0.5);
}
