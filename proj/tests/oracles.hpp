#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numerical routines.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

//! Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels)
{
  if (panels % 2 == 1)
    ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < panels; ++i) {
    const double x = a + h * static_cast<double>(i);
    (i % 2 == 1 ? odd : even) += f(x);
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

//! Adaptive Gauss-Kronrod in one dimension (Boost).
inline double adaptive_1d(const std::function<double(double)>& f, double a, double b, double tol)
{
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

//! Nested adaptive Gauss-Kronrod over [a,b]^2.
inline double adaptive_2d(const std::function<double(double, double)>& f,
                          double a,
                          double b,
                          double tol)
{
  auto inner = [&](double u) {
    return adaptive_1d([&](double v) { return f(u, v); }, a, b, tol * 1e-2);
  };
  return adaptive_1d(inner, a, b, tol);
}

//! C(m,k) by multiplicative accumulation in long double.
inline long double choose(std::size_t m, std::size_t k)
{
  k = std::min(k, m - k);
  long double c = 1.0L;
  for (std::size_t j = 1; j <= k; ++j)
    c = c * static_cast<long double>(m - k + j) / static_cast<long double>(j);
  return c;
}

inline double kernel(std::size_t k, std::size_t m, double w)
{
  return static_cast<double>(choose(m, k) * std::pow(static_cast<long double>(w), k) *
                             std::pow(1.0L - w, m - k));
}

//! Pseudo-observations as doubles, ranked by brute force.
struct Pseudo
{
  std::vector<double> u;
  std::vector<double> v;
};

inline Pseudo brute_ranks(const std::vector<double>& x, const std::vector<double>& y)
{
  const std::size_t n = x.size();
  Pseudo out{ std::vector<double>(n), std::vector<double>(n) };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rx = 0;
    std::size_t ry = 0;
    for (std::size_t j = 0; j < n; ++j) {
      rx += x[j] <= x[i];
      ry += y[j] <= y[i];
    }
    out.u[i] = static_cast<double>(rx) / static_cast<double>(n);
    out.v[i] = static_cast<double>(ry) / static_cast<double>(n);
  }
  return out;
}

inline double ecop(const Pseudo& ps, double u, double v)
{
  std::size_t count = 0;
  for (std::size_t i = 0; i < ps.u.size(); ++i)
    count += ps.u[i] <= u && ps.v[i] <= v;
  return static_cast<double>(count) / static_cast<double>(ps.u.size());
}

//! Exact integral of the step function C_n over [0,p]^2: C_n is constant on
//! each rectangle of the partition by the breakpoints {j/n}, so sum value
//! times area.
inline double step_integral(const Pseudo& ps, double p)
{
  const std::size_t n = ps.u.size();
  std::vector<double> cuts{ 0.0 };
  for (std::size_t j = 1; j <= n; ++j) {
    const double c = static_cast<double>(j) / static_cast<double>(n);
    if (c < p)
      cuts.push_back(c);
  }
  cuts.push_back(p);
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const double area = (cuts[i + 1] - cuts[i]) * (cuts[j + 1] - cuts[j]);
      // right-continuous: value on [a,b) is the value at a
      total += static_cast<long double>(ecop(ps, cuts[i], cuts[j])) * area;
    }
  }
  return static_cast<double>(total);
}

//! Bernstein copula by the textbook double sum with direct kernels.
inline double bernstein_direct(const Pseudo& ps, std::size_t m, double u, double v)
{
  long double total = 0.0L;
  const auto md = static_cast<double>(m);
  for (std::size_t k = 0; k <= m; ++k)
    for (std::size_t l = 0; l <= m; ++l)
      total += static_cast<long double>(ecop(ps, static_cast<double>(k) / md,
                                             static_cast<double>(l) / md)) *
               kernel(k, m, u) * kernel(l, m, v);
  return static_cast<double>(total);
}

//! Random continuous sample (x, y) with a mild positive dependence.
inline std::pair<std::vector<double>, std::vector<double>> random_sample(std::size_t n,
                                                                         std::mt19937_64& gen)
{
  std::normal_distribution<double> z;
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = z(gen);
    y[i] = 0.5 * x[i] + z(gen);
  }
  return { x, y };
}

inline double median(std::vector<double> xs)
{
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

struct ShapeStats
{
  double skewness;
  double excess_kurtosis;
};

inline ShapeStats shape(const std::vector<double>& xs)
{
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs)
    mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  return { m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0 };
}

} // namespace oracle
