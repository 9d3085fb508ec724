#include "tailrho/fgm.hpp"

#include "tailrho/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tailrho {

namespace {

void check_unit_square(const char* who, double u, double v)
{
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(who) + ": (u,v) must lie in [0,1]^2");
}

} // namespace

FgmModel::FgmModel(double theta)
  : theta_(theta)
{
  if (!(theta >= -1.0 && theta <= 1.0))
    throw std::domain_error("FgmModel: theta must lie in [-1,1], got " + std::to_string(theta));
}

double FgmModel::cdf(double u, double v) const
{
  check_unit_square("FgmModel::cdf", u, v);
  return u * v * (1.0 + theta_ * (1.0 - u) * (1.0 - v));
}

double FgmModel::density(double u, double v) const
{
  check_unit_square("FgmModel::density", u, v);
  return 1.0 + theta_ * (1.0 - 2.0 * u) * (1.0 - 2.0 * v);
}

Partials FgmModel::partials(double u, double v) const
{
  check_unit_square("FgmModel::partials", u, v);
  return {
    v + theta_ * v * (1.0 - v) * (1.0 - 2.0 * u),
    u + theta_ * u * (1.0 - u) * (1.0 - 2.0 * v),
    -2.0 * theta_ * v * (1.0 - v),
    -2.0 * theta_ * u * (1.0 - u),
  };
}

double FgmModel::conditional_cdf(double v, double u) const
{
  const double a = theta_ * (1.0 - 2.0 * u);
  return v + a * (v - v * v);
}

double FgmModel::invert_conditional(double u, double t) const
{
  // a v^2 - (1 + a) v + t = 0; the root in [0,1] is
  // [(1 + a) - sqrt((1 + a)^2 - 4 a t)] / (2a), written here in the
  // rationalized form 2t / [(1 + a) + sqrt(...)] which has no cancellation.
  const double a = theta_ * (1.0 - 2.0 * u);
  if (std::abs(a) < 1e-12)
    return t;
  const double b = 1.0 + a;
  const double disc = std::max(0.0, b * b - 4.0 * a * t);
  const double v = 2.0 * t / (b + std::sqrt(disc));
  return std::min(1.0, std::max(0.0, v));
}

Sample FgmModel::sample(std::size_t n, Engine& gen) const
{
  std::vector<double> us(n);
  std::vector<double> vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    us[i] = uniform01(gen);
    vs[i] = invert_conditional(us[i], uniform01(gen));
  }
  return Sample(std::move(us), std::move(vs));
}

double FgmModel::rho_tail_analytic(double p) const
{
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("rho_tail_analytic: p must lie in (0,1]");
  const double h = p * p / 2.0 - p * p * p / 3.0;
  return theta_ * h * h / normalizer(p);
}

} // namespace tailrho
