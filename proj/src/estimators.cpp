#include "tailrho/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tailrho {

namespace {

void check_threshold(const char* who, double p)
{
  if (!(p > min_threshold && p <= 1.0))
    throw std::domain_error(std::string(who) + ": threshold p must lie in (1e-6, 1], got " +
                            std::to_string(p));
}

} // namespace

std::string_view to_string(Method method)
{
  switch (method) {
    case Method::empirical:
      return "empirical";
    case Method::bernstein:
      return "bernstein";
  }
  return "unknown";
}

double normalizer(double p)
{
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("normalizer: p must lie in (0,1]");
  const double p3 = p * p * p;
  return p3 / 3.0 - p3 * p / 4.0;
}

double tail_rho_from_integral(double integral, double p)
{
  const double p2 = p * p;
  return (integral - p2 * p2 / 4.0) / normalizer(p);
}

double tail_rho_lower_bound(double p)
{
  return -3.0 * p / (4.0 - 3.0 * p);
}

double rho_tail_population(const std::function<double(double, double)>& copula,
                           double p,
                           double tol)
{
  check_threshold("rho_tail_population", p);
  QuadratureOptions opts;
  opts.tol = tol * normalizer(p);
  return tail_rho_from_integral(integrate_square(copula, p, opts), p);
}

TailRhoResult rho_hat_empirical(const PseudoSample& ps, double p)
{
  check_threshold("rho_hat_empirical", p);
  double sum = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double du = p - ps.u(i);
    const double dv = p - ps.v(i);
    if (du > 0.0 && dv > 0.0)
      sum += du * dv;
  }
  const double integral = sum / static_cast<double>(ps.size());
  return { p, Method::empirical, std::nullopt, tail_rho_from_integral(integral, p), integral };
}

double bernstein_tail_integral(const CopulaGrid& grid, const TailWeights& weights)
{
  const std::size_t m = grid.degree();
  if (weights.degree() != m)
    throw std::invalid_argument("bernstein_tail_integral: grid and weight degrees differ");
  // row and column 0 of the grid vanish
  double total = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    double row = 0.0;
    for (std::size_t l = 1; l <= m; ++l)
      row += grid(k, l) * weights[l];
    total += weights[k] * row;
  }
  return total;
}

TailRhoResult rho_hat_bernstein(const PseudoSample& ps, const TailWeights& weights)
{
  const double p = weights.p();
  check_threshold("rho_hat_bernstein", p);
  const std::size_t m = weights.degree();
  const double integral = bernstein_tail_integral(copula_grid(ps, m), weights);
  return { p, Method::bernstein, m, tail_rho_from_integral(integral, p), integral };
}

TailRhoResult rho_hat_bernstein(const PseudoSample& ps, double p, std::size_t m)
{
  check_threshold("rho_hat_bernstein", p);
  return rho_hat_bernstein(ps, tail_weights(p, m));
}

__extension__ typedef unsigned __int128 uint128;

std::size_t rule_of_thumb_degree(std::uint64_t n)
{
  if (n < 1)
    throw std::domain_error("rule_of_thumb_degree: n must be positive");
  const auto n2 = static_cast<uint128>(n) * n;
  auto cube = [](std::uint64_t m) {
    return static_cast<uint128>(m) * m * m;
  };
  auto m = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n2)));
  while (m > 0 && cube(m) > n2)
    --m;
  while (cube(m + 1) <= n2)
    ++m;
  return static_cast<std::size_t>(m);
}

} // namespace tailrho
