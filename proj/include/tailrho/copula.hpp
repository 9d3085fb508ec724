#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tailrho {

//! Thrown when a margin contains duplicate values; ranks are then undefined
//! under the continuous-margins assumption.
class TiesError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! Bivariate observations (x_i, y_i), i = 1..n.
class Sample
{
public:
  Sample() = default;
  Sample(std::vector<double> x, std::vector<double> y);

  std::size_t size() const { return x_.size(); }
  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }

private:
  std::vector<double> x_;
  std::vector<double> y_;
};

//! Denominator of the rank transform. `n` gives the empirical margins
//! R_i / n; `n_plus_one` gives R_i / (n + 1), which keeps every
//! pseudo-observation off the upper edge of the square.
enum class RankScale
{
  n,
  n_plus_one,
};

std::string to_string(RankScale scale);

//! Parses "n" or "n+1"; throws std::invalid_argument otherwise.
RankScale parse_rank_scale(const std::string& text);

//! Rank-transformed sample: U_i = R_i / d, V_i = S_i / d with d = n by
//! default. Ranks are kept as integers so grid counting stays exact.
class PseudoSample
{
public:
  PseudoSample(std::vector<std::uint32_t> x_ranks,
               std::vector<std::uint32_t> y_ranks,
               RankScale scale = RankScale::n);

  std::size_t size() const { return x_ranks_.size(); }
  std::span<const std::uint32_t> x_ranks() const { return x_ranks_; }
  std::span<const std::uint32_t> y_ranks() const { return y_ranks_; }
  RankScale scale() const { return scale_; }
  std::uint64_t denominator() const { return size() + (scale_ == RankScale::n_plus_one); }

  double u(std::size_t i) const { return static_cast<double>(x_ranks_[i]) / d_; }
  double v(std::size_t i) const { return static_cast<double>(y_ranks_[i]) / d_; }

private:
  std::vector<std::uint32_t> x_ranks_;
  std::vector<std::uint32_t> y_ranks_;
  RankScale scale_;
  double d_;
};

//! (m+1) x (m+1) table of a copula at the points (k/m, l/m).
class CopulaGrid
{
public:
  CopulaGrid(std::size_t m, std::vector<double> values);

  //! Tabulates an arbitrary function on the degree-m grid.
  static CopulaGrid tabulate(std::size_t m,
                             const std::function<double(double, double)>& f);

  std::size_t degree() const { return m_; }
  double operator()(std::size_t k, std::size_t l) const
  {
    return values_[k * (m_ + 1) + l];
  }
  std::span<const double> values() const { return values_; }

private:
  std::size_t m_;
  std::vector<double> values_;
};

PseudoSample pseudo_observations(const Sample& sample, RankScale scale = RankScale::n);

//! Adds seeded uniform noise to every margin that contains ties. The noise
//! amplitude is half the smallest nonzero gap in that margin, so the order of
//! distinct values is preserved. Margins without ties are returned unchanged.
Sample jitter_ties(const Sample& sample, std::uint64_t seed);

//! C_n(u,v) = (1/n) #{i : U_i <= u, V_i <= v}.
double empirical_copula(const PseudoSample& ps, double u, double v);

//! C_n on the grid (k/m, l/m) by bucket counting and a 2-d prefix sum,
//! O(n + m^2).
CopulaGrid copula_grid(const PseudoSample& ps, std::size_t m);

//! Bernstein smoothing sum_{k,l} G[k][l] P_{k,m}(u) P_{l,m}(v).
double bernstein_copula(const CopulaGrid& grid, double u, double v);

//! Bernstein copula on the lattice us x vs; result is row-major with
//! us.size() rows. Costs O(|us| m^2 + |us| |vs| m).
std::vector<double> bernstein_copula_lattice(const CopulaGrid& grid,
                                             std::span<const double> us,
                                             std::span<const double> vs);

} // namespace tailrho
