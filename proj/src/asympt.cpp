#include "tailrho/asympt.hpp"

#include "tailrho/estimators.hpp"
#include "tailrho/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tailrho {

namespace {

void check_unit_square(const char* who, double u, double v)
{
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(who) + ": (u,v) must lie in [0,1]^2");
}

} // namespace

double bias_coeff(const SmoothCopula& copula, double u, double v)
{
  check_unit_square("bias_coeff", u, v);
  const auto d = copula.partials(u, v);
  return 0.5 * (u * (1.0 - u) * d.cuu + v * (1.0 - v) * d.cvv);
}

double var_gain(const SmoothCopula& copula, double u, double v)
{
  check_unit_square("var_gain", u, v);
  const auto d = copula.partials(u, v);
  const double su = std::sqrt(u * (1.0 - u) / std::numbers::pi);
  const double sv = std::sqrt(v * (1.0 - v) / std::numbers::pi);
  return d.cu * (1.0 - d.cu) * su + d.cv * (1.0 - d.cv) * sv;
}

double sigma2_pointwise(const SmoothCopula& copula, double u, double v)
{
  check_unit_square("sigma2_pointwise", u, v);
  const double c = copula.cdf(u, v);
  const auto d = copula.partials(u, v);
  return c * (1.0 - c)
       + u * (1.0 - u) * d.cu * d.cu
       + v * (1.0 - v) * d.cv * d.cv
       - 2.0 * (1.0 - u) * c * d.cu
       - 2.0 * (1.0 - v) * c * d.cv
       + 2.0 * d.cu * d.cv * (c - u * v);
}

double t_p(const std::function<double(double, double)>& f, double p, double tol)
{
  if (!(p > min_threshold && p <= 1.0))
    throw std::domain_error("t_p: threshold p must lie in (1e-6, 1]");
  const double d = normalizer(p);
  QuadratureOptions opts;
  opts.tol = tol * d;
  return integrate_square(f, p, opts) / d;
}

double t_p_bias(const SmoothCopula& copula, double p, double tol)
{
  return t_p([&](double u, double v) { return bias_coeff(copula, u, v); }, p, tol);
}

double t_p_var_gain(const SmoothCopula& copula, double p, double tol)
{
  return t_p([&](double u, double v) { return var_gain(copula, u, v); }, p, tol);
}

double fgm_t_p_bias(const FgmModel& model, double p)
{
  const double h = p * p / 2.0 - p * p * p / 3.0;
  return -2.0 * model.theta() * h * h / normalizer(p);
}

double optimal_degree(double t_p_b, double t_p_v, std::uint64_t n)
{
  if (n < 1)
    throw std::domain_error("optimal_degree: n must be positive");
  if (std::abs(t_p_b) < 1e-12)
    throw DegenerateBias("optimal_degree: T_p(b) vanishes; the bias term cannot balance the variance gain");
  if (!(t_p_v > 0.0))
    throw std::domain_error("optimal_degree: T_p(V) must be positive");
  return std::pow(4.0 * t_p_b * t_p_b / t_p_v * static_cast<double>(n), 2.0 / 3.0);
}

double optimal_degree(const SmoothCopula& copula, double p, std::uint64_t n)
{
  const double tb = t_p_bias(copula, p);
  if (std::abs(tb) < 1e-12)
    throw DegenerateBias("optimal_degree: T_p(b) vanishes; the bias term cannot balance the variance gain");
  return optimal_degree(tb, t_p_var_gain(copula, p), n);
}

MseExpansion mse_expansions(double t_p_b,
                            double t_p_v,
                            std::uint64_t n,
                            std::size_t m,
                            std::optional<double> sigma_p2)
{
  if (n < 1 || m < 1)
    throw std::domain_error("mse_expansions: n and m must be positive");
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  const double bias = t_p_b / md;
  MseExpansion out{ -t_p_v / (nd * std::sqrt(md)) + bias * bias, std::nullopt, std::nullopt };
  if (sigma_p2) {
    out.mse_empirical = *sigma_p2 / nd;
    out.mse_bernstein = *out.mse_empirical + out.difference;
  }
  return out;
}

MseExpansion mse_expansions(const SmoothCopula& copula,
                            double p,
                            std::uint64_t n,
                            std::size_t m,
                            std::optional<double> sigma_p2)
{
  return mse_expansions(t_p_bias(copula, p), t_p_var_gain(copula, p), n, m, sigma_p2);
}

AsymptoticReport asymptotic_report(const SmoothCopula& copula,
                                   double p,
                                   std::uint64_t n,
                                   std::optional<double> sigma_p2)
{
  AsymptoticReport report{};
  report.p = p;
  report.n = n;
  report.t_p_b = t_p_bias(copula, p);
  report.t_p_v = t_p_var_gain(copula, p);
  report.sigma_p2_mc = sigma_p2;
  try {
    report.m_opt = optimal_degree(report.t_p_b, report.t_p_v, n);
    report.degree = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(*report.m_opt)));
  } catch (const DegenerateBias&) {
    report.m_opt.reset();
    report.degree = rule_of_thumb_degree(n);
  }
  report.at_degree = mse_expansions(report.t_p_b, report.t_p_v, n, report.degree, sigma_p2);
  return report;
}

} // namespace tailrho
