#pragma once

#include <cstddef>
#include <vector>

namespace tailrho {

//! Binomial kernel P_{k,m}(w) = C(m,k) w^k (1-w)^(m-k).
//! Evaluated in log-space; accurate for m in the thousands.
double binomial_kernel(std::size_t k, std::size_t m, double w);

//! All kernels P_{0,m}(w), ..., P_{m,m}(w) in one pass.
std::vector<double> binomial_kernels(std::size_t m, double w);

//! Unnormalized incomplete beta function int_0^x t^(a-1) (1-t)^(b-1) dt.
double incomplete_beta(double x, double a, double b);

//! Weights w_k = C(m,k) beta(p, k+1, m-k+1), k = 0..m.
//!
//! Integrating a Bernstein polynomial of degree m over [0,p] reduces to the
//! dot product of its coefficients with these weights. With integer beta
//! parameters each weight equals P[Bin(m+1,p) >= k+1] / (m+1), which is how
//! it is computed here: a normalized binomial pmf built outward from its mode
//! and summed from the upper tail. The weights always sum to p.
class TailWeights
{
public:
  TailWeights(double p, std::size_t m);

  double p() const { return p_; }
  std::size_t degree() const { return weights_.size() - 1; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  const std::vector<double>& values() const { return weights_; }

private:
  double p_;
  std::vector<double> weights_;
};

inline TailWeights tail_weights(double p, std::size_t m)
{
  return TailWeights(p, m);
}

} // namespace tailrho
