#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tailrho {

class QuadratureError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t order);

struct QuadratureOptions
{
  std::size_t nodes = 64;   // per axis and per panel
  double tol = 1e-10;       // absolute, on the integral
  int max_doublings = 6;
};

//! Integral of f over [0, hi]^2 by a tensor Gauss-Legendre rule.
//!
//! Each axis is mapped through u = hi * (3s^2 - 2s^3), which removes
//! square-root endpoint singularities, and split into panels. The panel count
//! per axis doubles until successive estimates agree to opts.tol. Nodes are
//! strictly interior, so f is never evaluated on the boundary.
//! Throws QuadratureError when max_doublings is exhausted.
double integrate_square(const std::function<double(double, double)>& f,
                        double hi,
                        const QuadratureOptions& opts = {});

} // namespace tailrho
