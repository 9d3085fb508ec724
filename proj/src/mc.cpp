#include "tailrho/mc.hpp"

#include "tailrho/copula.hpp"
#include "tailrho/estimators.hpp"
#include "tailrho/fgm.hpp"
#include "tailrho/random.hpp"
#include "tailrho/special.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

namespace tailrho {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Neumaier compensated summation
class CompensatedSum
{
public:
  void add(double x)
  {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct Moments
{
  double abs_bias;
  double var;
  double mse;
};

Moments moments(std::span<const double> xs, double truth)
{
  const auto k = static_cast<double>(xs.size());
  CompensatedSum total;
  for (double x : xs)
    total.add(x);
  const double mean = total.value() / k;

  CompensatedSum centered;
  CompensatedSum deviation;
  for (double x : xs) {
    centered.add((x - mean) * (x - mean));
    deviation.add((x - truth) * (x - truth));
  }
  const double var = xs.size() > 1 ? centered.value() / (k - 1.0) : nan;
  return { std::abs(mean - truth), var, deviation.value() / k };
}

void check_cell(double theta, std::uint64_t n, double p, std::size_t reps)
{
  if (!(theta >= -1.0 && theta <= 1.0))
    throw std::domain_error("theta must lie in [-1,1]");
  if (n < 1)
    throw std::domain_error("sample size must be positive");
  if (!(p > min_threshold && p <= 1.0))
    throw std::domain_error("threshold p must lie in (1e-6, 1]");
  if (reps < 1)
    throw std::domain_error("at least one replicate is required");
}

std::string describe_cell(double theta, std::uint64_t n, double p)
{
  std::ostringstream os;
  os << "cell (theta=" << theta << ", n=" << n << ", p=" << p << ")";
  return os.str();
}

} // namespace

std::size_t threads_from_env()
{
  const char* raw = std::getenv("TAILRHO_THREADS");
  if (raw == nullptr || *raw == '\0')
    return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 0)
    throw std::invalid_argument(std::string("TAILRHO_THREADS must be a nonnegative integer, got '") +
                                raw + "'");
  return static_cast<std::size_t>(value);
}

void parallel_for(std::size_t count,
                  std::size_t threads,
                  const std::function<void(std::size_t)>& body)
{
  if (threads == 0)
    threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }

  std::atomic<std::size_t> next{ 0 };
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  pool.clear();

  if (error)
    std::rethrow_exception(error);
}

Replicates simulate_replicates(double theta,
                               std::uint64_t n,
                               double p,
                               std::size_t m,
                               std::size_t reps,
                               std::uint64_t seed,
                               const RunOptions& run)
{
  check_cell(theta, n, p, reps);
  const FgmModel model(theta);
  const TailWeights weights(p, m);

  Replicates out{ std::vector<double>(reps), std::vector<double>(reps) };
  parallel_for(reps, run.threads, [&](std::size_t r) {
    Engine gen = make_stream(seed, run.cell, r);
    const auto ps = pseudo_observations(model.sample(n, gen), run.rank_scale);
    out.empirical[r] = rho_hat_empirical(ps, p).value;
    out.bernstein[r] = rho_hat_bernstein(ps, weights).value;
  });
  return out;
}

CellSummary summarize(double theta,
                      std::uint64_t n,
                      double p,
                      std::size_t m,
                      double rho,
                      std::span<const double> empirical,
                      std::span<const double> bernstein)
{
  if (empirical.size() != bernstein.size() || empirical.empty())
    throw std::invalid_argument("summarize: replicate vectors must be nonempty and equal in size");
  const auto emp = moments(empirical, rho);
  const auto bern = moments(bernstein, rho);
  const double reduction = emp.mse > 0.0 ? 100.0 * (1.0 - bern.mse / emp.mse) : nan;
  return CellSummary{ .theta = theta,
                      .n = n,
                      .p = p,
                      .m = m,
                      .reps = empirical.size(),
                      .rho = rho,
                      .abs_bias_emp = emp.abs_bias,
                      .abs_bias_bern = bern.abs_bias,
                      .var_emp = emp.var,
                      .var_bern = bern.var,
                      .mse_emp = emp.mse,
                      .mse_bern = bern.mse,
                      .mse_reduction_pct = reduction };
}

CellSummary run_cell(double theta,
                     std::uint64_t n,
                     double p,
                     std::size_t m,
                     std::size_t reps,
                     std::uint64_t seed,
                     const RunOptions& run)
{
  const auto reps_out = simulate_replicates(theta, n, p, m, reps, seed, run);
  const double rho = FgmModel(theta).rho_tail_analytic(p);
  return summarize(theta, n, p, m, rho, reps_out.empirical, reps_out.bernstein);
}

std::vector<CellSummary> degree_sweep(double theta,
                                      std::uint64_t n,
                                      double p,
                                      std::size_t m_min,
                                      std::size_t m_max,
                                      std::size_t reps,
                                      std::uint64_t seed,
                                      const RunOptions& run)
{
  check_cell(theta, n, p, reps);
  if (m_min < 1 || m_min > m_max)
    throw std::domain_error("degree_sweep: need 1 <= m_min <= m_max");

  const FgmModel model(theta);
  const std::size_t count = m_max - m_min + 1;
  std::vector<TailWeights> weights;
  weights.reserve(count);
  for (std::size_t m = m_min; m <= m_max; ++m)
    weights.emplace_back(p, m);

  std::vector<double> empirical(reps);
  std::vector<double> bernstein(count * reps); // degree-major
  parallel_for(reps, run.threads, [&](std::size_t r) {
    Engine gen = make_stream(seed, run.cell, r);
    const auto ps = pseudo_observations(model.sample(n, gen), run.rank_scale);
    empirical[r] = rho_hat_empirical(ps, p).value;
    for (std::size_t j = 0; j < count; ++j)
      bernstein[j * reps + r] = rho_hat_bernstein(ps, weights[j]).value;
  });

  const double rho = model.rho_tail_analytic(p);
  std::vector<CellSummary> rows;
  rows.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    rows.push_back(summarize(theta, n, p, m_min + j, rho, empirical,
                             std::span<const double>(bernstein).subspan(j * reps, reps)));
  }
  return rows;
}

std::vector<CellSummary> run_table(const ExperimentConfig& config)
{
  if (config.thetas.empty() || config.ns.empty() || config.ps.empty())
    throw std::invalid_argument("run_table: theta, n and p lists must be nonempty");

  std::vector<CellSummary> rows;
  std::vector<std::string> failures;
  std::uint64_t cell = 0;
  for (double theta : config.thetas) {
    for (std::uint64_t n : config.ns) {
      for (double p : config.ps) {
        const RunOptions run{ cell, config.threads, config.rank_scale };
        try {
          std::visit(
            [&](const auto& rule) {
              using Rule = std::decay_t<decltype(rule)>;
              if constexpr (std::is_same_v<Rule, DegreeSweep>) {
                auto sweep = degree_sweep(theta, n, p, rule.m_min, rule.m_max, config.reps,
                                          config.seed, run);
                rows.insert(rows.end(), sweep.begin(), sweep.end());
              } else {
                std::size_t m = 0;
                if constexpr (std::is_same_v<Rule, FixedDegree>)
                  m = rule.m;
                else
                  m = rule_of_thumb_degree(n);
                rows.push_back(run_cell(theta, n, p, m, config.reps, config.seed, run));
              }
            },
            config.degree_rule);
        } catch (const std::exception& e) {
          failures.push_back(describe_cell(theta, n, p) + ": " + e.what());
        }
        ++cell;
      }
    }
  }

  if (!failures.empty()) {
    std::string message = std::to_string(failures.size()) + " cell(s) failed";
    for (const auto& f : failures)
      message += "\n  " + f;
    throw CellFailure(message);
  }
  return rows;
}

double estimate_sigma_p2(double theta,
                         double p,
                         std::uint64_t n,
                         std::size_t reps,
                         std::uint64_t seed,
                         const RunOptions& run)
{
  check_cell(theta, n, p, reps);
  if (reps < 2)
    throw std::domain_error("estimate_sigma_p2: at least two replicates are required");
  const FgmModel model(theta);
  std::vector<double> estimates(reps);
  parallel_for(reps, run.threads, [&](std::size_t r) {
    Engine gen = make_stream(seed, run.cell, r);
    estimates[r] = rho_hat_empirical(pseudo_observations(model.sample(n, gen), run.rank_scale), p).value;
  });
  return static_cast<double>(n) * moments(estimates, 0.0).var;
}

} // namespace tailrho
