#pragma once

#include "tailrho/copula.hpp"
#include "tailrho/quadrature.hpp"
#include "tailrho/special.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace tailrho {

enum class Method
{
  empirical,
  bernstein
};

std::string_view to_string(Method method);

struct TailRhoResult
{
  double p;
  Method method;
  std::optional<std::size_t> degree; // bernstein only
  double value;
  double integral; // integral of the copula estimate over [0,p]^2
};

//! Smallest threshold accepted by the estimators.
inline constexpr double min_threshold = 1e-6;

//! D(p) = p^3/3 - p^4/4, the integral of M - Pi over [0,p]^2.
double normalizer(double p);

//! (integral - p^4/4) / D(p)
double tail_rho_from_integral(double integral, double p);

//! Lower bound of any tail rho built from a copula estimate between 0 and M.
double tail_rho_lower_bound(double p);

//! Population lower-tail rho of a copula given as a callable, by tensor
//! Gauss-Legendre quadrature. `tol` applies to the returned rho.
double rho_tail_population(const std::function<double(double, double)>& copula,
                           double p,
                           double tol = 1e-10);

//! Empirical-copula estimator. The integral of C_n over [0,p]^2 is
//! (1/n) sum_i (p - U_i)_+ (p - V_i)_+, so no quadrature is involved.
TailRhoResult rho_hat_empirical(const PseudoSample& ps, double p);

//! Bernstein-smoothed estimator: sum_{k,l} C_n(k/m, l/m) w_k w_l.
TailRhoResult rho_hat_bernstein(const PseudoSample& ps, double p, std::size_t m);

//! Same, with weights computed once by the caller (their degree sets m).
TailRhoResult rho_hat_bernstein(const PseudoSample& ps, const TailWeights& weights);

//! Integral of a Bernstein-smoothed grid over [0,p]^2 for the given weights.
double bernstein_tail_integral(const CopulaGrid& grid, const TailWeights& weights);

//! floor(n^(2/3)), computed as the largest m with m^3 <= n^2.
std::size_t rule_of_thumb_degree(std::uint64_t n);

} // namespace tailrho
