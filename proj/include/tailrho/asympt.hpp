#pragma once

#include "tailrho/fgm.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

namespace tailrho {

//! The bias coefficient T_p(b) vanishes, so no finite optimal degree exists.
class DegenerateBias : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Pointwise coefficients of the Bernstein copula expansions
//   Bias[C_mn] = b/m + o(1/m),  Var[C_mn] = sigma2/n - V/(n sqrt m) + ...

//! b(u,v) = {u(1-u) C_uu + v(1-v) C_vv} / 2
double bias_coeff(const SmoothCopula& copula, double u, double v);

//! V(u,v) = C_u(1-C_u) sqrt(u(1-u)/pi) + C_v(1-C_v) sqrt(v(1-v)/pi)
double var_gain(const SmoothCopula& copula, double u, double v);

//! Pointwise asymptotic variance of sqrt(n) C_n(u,v).
double sigma2_pointwise(const SmoothCopula& copula, double u, double v);

//! T_p(f) = D(p)^{-1} int_{[0,p]^2} f. `tol` applies to the returned value.
double t_p(const std::function<double(double, double)>& f, double p, double tol = 1e-9);

double t_p_bias(const SmoothCopula& copula, double p, double tol = 1e-9);
double t_p_var_gain(const SmoothCopula& copula, double p, double tol = 1e-9);

//! Closed form of T_p(b) for FGM: -2 theta (p^2/2 - p^3/3)^2 / D(p).
double fgm_t_p_bias(const FgmModel& model, double p);

//! m_opt = {4 T_p(b)^2 / T_p(V) * n}^(2/3), before flooring.
//! Throws DegenerateBias when |T_p(b)| < 1e-12.
double optimal_degree(const SmoothCopula& copula, double p, std::uint64_t n);

//! Same formula from precomputed T_p(b) and T_p(V).
double optimal_degree(double t_p_b, double t_p_v, std::uint64_t n);

struct MseExpansion
{
  //! -T_p(V)/(n sqrt m) + (T_p(b)/m)^2, the Bernstein-minus-empirical MSE.
  double difference;
  std::optional<double> mse_bernstein;
  std::optional<double> mse_empirical;
};

MseExpansion mse_expansions(double t_p_b,
                            double t_p_v,
                            std::uint64_t n,
                            std::size_t m,
                            std::optional<double> sigma_p2 = std::nullopt);

MseExpansion mse_expansions(const SmoothCopula& copula,
                            double p,
                            std::uint64_t n,
                            std::size_t m,
                            std::optional<double> sigma_p2 = std::nullopt);

struct AsymptoticReport
{
  double p;
  std::uint64_t n;
  double t_p_b;
  double t_p_v;
  std::optional<double> m_opt; // empty when the bias is degenerate
  std::size_t degree;          // floor(m_opt), or the rule of thumb as fallback
  MseExpansion at_degree;
  std::optional<double> sigma_p2_mc;
};

AsymptoticReport asymptotic_report(const SmoothCopula& copula,
                                   double p,
                                   std::uint64_t n,
                                   std::optional<double> sigma_p2 = std::nullopt);

} // namespace tailrho
