#include "tailrho/special.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace tailrho {

namespace {

// pmf of Bin(trials, prob), built by the ratio recurrence outward from the
// mode and then normalized. No binomial coefficient is ever formed, so
// nothing overflows; far tails underflow harmlessly to zero.
std::vector<double> binomial_pmf(std::size_t trials, double prob)
{
  std::vector<double> pmf(trials + 1, 0.0);
  if (prob <= 0.0) {
    pmf.front() = 1.0;
    return pmf;
  }
  if (prob >= 1.0) {
    pmf.back() = 1.0;
    return pmf;
  }

  const double odds = prob / (1.0 - prob);
  const auto n = static_cast<double>(trials);
  auto mode = static_cast<std::size_t>(std::floor((n + 1.0) * prob));
  if (mode > trials)
    mode = trials;

  pmf[mode] = 1.0;
  for (std::size_t j = mode; j < trials; ++j) {
    const auto jd = static_cast<double>(j);
    pmf[j + 1] = pmf[j] * ((n - jd) / (jd + 1.0)) * odds;
  }
  for (std::size_t j = mode; j > 0; --j) {
    const auto jd = static_cast<double>(j);
    pmf[j - 1] = pmf[j] * (jd / (n - jd + 1.0)) / odds;
  }

  double total = 0.0;
  for (double x : pmf)
    total += x;
  for (double& x : pmf)
    x /= total;
  return pmf;
}

} // namespace

double binomial_kernel(std::size_t k, std::size_t m, double w)
{
  if (k > m)
    throw std::domain_error("binomial_kernel: k = " + std::to_string(k) +
                            " exceeds degree " + std::to_string(m));
  if (!(w >= 0.0 && w <= 1.0))
    throw std::domain_error("binomial_kernel: w must lie in [0,1]");

  if (w == 0.0)
    return k == 0 ? 1.0 : 0.0;
  if (w == 1.0)
    return k == m ? 1.0 : 0.0;

  const auto md = static_cast<double>(m);
  const auto kd = static_cast<double>(k);
  const double log_choose =
    std::lgamma(md + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(md - kd + 1.0);
  return std::exp(log_choose + kd * std::log(w) + (md - kd) * std::log1p(-w));
}

std::vector<double> binomial_kernels(std::size_t m, double w)
{
  if (!(w >= 0.0 && w <= 1.0))
    throw std::domain_error("binomial_kernels: w must lie in [0,1]");
  return binomial_pmf(m, w);
}

double incomplete_beta(double x, double a, double b)
{
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("incomplete_beta: x must lie in [0,1]");
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("incomplete_beta: shape parameters must be positive");
  // Boost's three-argument beta() is the non-normalized integral.
  return boost::math::beta(a, b, x);
}

TailWeights::TailWeights(double p, std::size_t m)
  : p_(p)
{
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("tail_weights: p must lie in (0,1]");
  if (m < 1)
    throw std::domain_error("tail_weights: degree must be at least 1");

  // w_k = P[Bin(m+1,p) >= k+1] / (m+1)
  const std::vector<double> pmf = binomial_pmf(m + 1, p);
  weights_.assign(m + 1, 0.0);
  double survival = 0.0;
  for (std::size_t k = m + 1; k-- > 0;) {
    survival += pmf[k + 1];
    weights_[k] = survival / static_cast<double>(m + 1);
  }
}

} // namespace tailrho
