#include "tailrho/copula.hpp"

#include "tailrho/random.hpp"
#include "tailrho/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tailrho {

namespace {

void check_unit_square(const char* who, double u, double v)
{
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(who) + ": (u,v) must lie in [0,1]^2");
}

std::vector<std::size_t> argsort(std::span<const double> values)
{
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{ 0 });
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  return order;
}

std::vector<std::uint32_t> ranks_of(std::span<const double> values, const char* margin)
{
  const auto order = argsort(values);
  std::vector<std::uint32_t> ranks(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && values[order[r]] == values[order[r - 1]])
      throw TiesError(std::string("tied values in the ") + margin +
                      " margin (value " + std::to_string(values[order[r]]) + ")");
    ranks[order[r]] = static_cast<std::uint32_t>(r + 1);
  }
  return ranks;
}

std::vector<double> jitter_margin(std::span<const double> values, Engine& gen)
{
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  bool tied = false;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double d = sorted[i] - sorted[i - 1];
    if (d == 0.0)
      tied = true;
    else
      gap = std::min(gap, d);
  }

  std::vector<double> out(values.begin(), values.end());
  if (!tied)
    return out;
  // all values equal: any amplitude keeps the (trivial) order
  const double amplitude = std::isfinite(gap) ? 0.5 * gap : 0.5;
  for (double& x : out)
    x += amplitude * (2.0 * uniform01(gen) - 1.0);
  return out;
}

} // namespace

Sample::Sample(std::vector<double> x, std::vector<double> y)
  : x_(std::move(x))
  , y_(std::move(y))
{
  if (x_.size() != y_.size())
    throw std::invalid_argument("Sample: margins have different lengths");
  if (x_.empty())
    throw std::invalid_argument("Sample: at least one observation is required");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
      throw std::invalid_argument("Sample: observation " + std::to_string(i + 1) +
                                  " is not finite");
  }
}

std::string to_string(RankScale scale)
{
  return scale == RankScale::n ? "n" : "n+1";
}

RankScale parse_rank_scale(const std::string& text)
{
  if (text == "n")
    return RankScale::n;
  if (text == "n+1")
    return RankScale::n_plus_one;
  throw std::invalid_argument("rank scale must be 'n' or 'n+1', got '" + text + "'");
}

PseudoSample::PseudoSample(std::vector<std::uint32_t> x_ranks,
                           std::vector<std::uint32_t> y_ranks,
                           RankScale scale)
  : x_ranks_(std::move(x_ranks))
  , y_ranks_(std::move(y_ranks))
  , scale_(scale)
  , d_(static_cast<double>(denominator()))
{
  if (x_ranks_.size() != y_ranks_.size() || x_ranks_.empty())
    throw std::invalid_argument("PseudoSample: rank vectors must be nonempty and equal in length");
  const auto n = x_ranks_.size();
  auto is_permutation = [n](std::span<const std::uint32_t> r) {
    std::vector<bool> seen(n + 1, false);
    for (auto v : r) {
      if (v < 1 || v > n || seen[v])
        return false;
      seen[v] = true;
    }
    return true;
  };
  if (!is_permutation(x_ranks_) || !is_permutation(y_ranks_))
    throw std::invalid_argument("PseudoSample: ranks must be a permutation of 1..n");
}

CopulaGrid::CopulaGrid(std::size_t m, std::vector<double> values)
  : m_(m)
  , values_(std::move(values))
{
  if (m_ < 1)
    throw std::domain_error("CopulaGrid: degree must be at least 1");
  if (values_.size() != (m_ + 1) * (m_ + 1))
    throw std::invalid_argument("CopulaGrid: expected (m+1)^2 values");
}

CopulaGrid CopulaGrid::tabulate(std::size_t m,
                                const std::function<double(double, double)>& f)
{
  std::vector<double> values((m + 1) * (m + 1));
  const auto md = static_cast<double>(m);
  for (std::size_t k = 0; k <= m; ++k)
    for (std::size_t l = 0; l <= m; ++l)
      values[k * (m + 1) + l] = f(static_cast<double>(k) / md, static_cast<double>(l) / md);
  return CopulaGrid(m, std::move(values));
}

PseudoSample pseudo_observations(const Sample& sample, RankScale scale)
{
  if (sample.size() > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("pseudo_observations: sample too large");
  return PseudoSample(ranks_of(sample.x(), "x"), ranks_of(sample.y(), "y"), scale);
}

Sample jitter_ties(const Sample& sample, std::uint64_t seed)
{
  Engine gen(mix64(seed));
  auto x = jitter_margin(sample.x(), gen);
  auto y = jitter_margin(sample.y(), gen);
  return Sample(std::move(x), std::move(y));
}

double empirical_copula(const PseudoSample& ps, double u, double v)
{
  check_unit_square("empirical_copula", u, v);
  std::size_t count = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps.u(i) <= u && ps.v(i) <= v)
      ++count;
  }
  return static_cast<double>(count) / static_cast<double>(ps.size());
}

CopulaGrid copula_grid(const PseudoSample& ps, std::size_t m)
{
  if (m < 1)
    throw std::domain_error("copula_grid: degree must be at least 1");

  const std::uint64_t n = ps.size();
  const std::size_t side = m + 1;
  std::vector<double> counts(side * side, 0.0);

  // Point i first enters the grid at k = ceil(R_i m / d), the least k with
  // R_i / d <= k / m; exact in integer arithmetic.
  const std::uint64_t d = ps.denominator();
  const auto xr = ps.x_ranks();
  const auto yr = ps.y_ranks();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t a = (std::uint64_t{ xr[i] } * m + d - 1) / d;
    const std::uint64_t b = (std::uint64_t{ yr[i] } * m + d - 1) / d;
    counts[a * side + b] += 1.0;
  }

  for (std::size_t k = 0; k < side; ++k)
    for (std::size_t l = 1; l < side; ++l)
      counts[k * side + l] += counts[k * side + l - 1];
  for (std::size_t k = 1; k < side; ++k)
    for (std::size_t l = 0; l < side; ++l)
      counts[k * side + l] += counts[(k - 1) * side + l];

  const auto nd = static_cast<double>(n);
  for (double& c : counts)
    c /= nd;
  return CopulaGrid(m, std::move(counts));
}

double bernstein_copula(const CopulaGrid& grid, double u, double v)
{
  check_unit_square("bernstein_copula", u, v);
  const std::size_t m = grid.degree();
  const auto pu = binomial_kernels(m, u);
  const auto pv = binomial_kernels(m, v);
  double total = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    double row = 0.0;
    for (std::size_t l = 1; l <= m; ++l)
      row += grid(k, l) * pv[l];
    total += pu[k] * row;
  }
  return total;
}

std::vector<double> bernstein_copula_lattice(const CopulaGrid& grid,
                                             std::span<const double> us,
                                             std::span<const double> vs)
{
  for (double u : us)
    check_unit_square("bernstein_copula_lattice", u, 0.0);
  for (double v : vs)
    check_unit_square("bernstein_copula_lattice", 0.0, v);

  const std::size_t side = grid.degree() + 1;
  const std::size_t nv = vs.size();

  // partial[k][j] = sum_l G[k][l] P_{l,m}(v_j)
  std::vector<double> partial(side * nv, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    const auto pv = binomial_kernels(grid.degree(), vs[j]);
    for (std::size_t k = 0; k < side; ++k) {
      double acc = 0.0;
      for (std::size_t l = 0; l < side; ++l)
        acc += grid(k, l) * pv[l];
      partial[k * nv + j] = acc;
    }
  }

  std::vector<double> out(us.size() * nv, 0.0);
  for (std::size_t i = 0; i < us.size(); ++i) {
    const auto pu = binomial_kernels(grid.degree(), us[i]);
    for (std::size_t k = 0; k < side; ++k) {
      if (pu[k] == 0.0)
        continue;
      for (std::size_t j = 0; j < nv; ++j)
        out[i * nv + j] += pu[k] * partial[k * nv + j];
    }
  }
  return out;
}

} // namespace tailrho
