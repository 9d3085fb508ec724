#pragma once

#include "tailrho/copula.hpp"
#include "tailrho/random.hpp"

#include <cstddef>

namespace tailrho {

//! First and second partial derivatives of a copula at a point.
struct Partials
{
  double cu;
  double cv;
  double cuu;
  double cvv;
};

//! A parametric copula with closed-form derivatives. Families other than FGM
//! plug into the asymptotic machinery by implementing this interface.
class SmoothCopula
{
public:
  virtual ~SmoothCopula() = default;
  virtual double cdf(double u, double v) const = 0;
  virtual Partials partials(double u, double v) const = 0;
};

//! Farlie-Gumbel-Morgenstern copula C(u,v) = uv{1 + theta (1-u)(1-v)}.
class FgmModel final : public SmoothCopula
{
public:
  explicit FgmModel(double theta);

  double theta() const { return theta_; }

  double cdf(double u, double v) const override;
  double density(double u, double v) const;
  Partials partials(double u, double v) const override;

  //! F(v | u) = dC/du (u, v), the conditional distribution of V given U = u.
  double conditional_cdf(double v, double u) const;

  //! Solves F(v | u) = t for v in [0,1].
  double invert_conditional(double u, double t) const;

  //! n i.i.d. pairs with copula C_theta by conditional inversion.
  Sample sample(std::size_t n, Engine& gen) const;

  //! theta (p^2/2 - p^3/3)^2 / D(p)
  double rho_tail_analytic(double p) const;

private:
  double theta_;
};

} // namespace tailrho
