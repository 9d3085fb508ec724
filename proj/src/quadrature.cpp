#include "tailrho/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace tailrho {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence
std::pair<double, double> legendre(std::size_t order, double x)
{
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= order; ++k) {
    const auto kd = static_cast<double>(k);
    const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
    p0 = p1;
    p1 = p2;
  }
  const auto n = static_cast<double>(order);
  return { p1, n * (x * p1 - p0) / (x * x - 1.0) };
}

} // namespace

GaussLegendreRule gauss_legendre(std::size_t order)
{
  if (order < 1)
    throw std::domain_error("gauss_legendre: order must be at least 1");

  GaussLegendreRule rule{ std::vector<double>(order), std::vector<double>(order) };
  const auto n = static_cast<double>(order);
  const std::size_t half = (order + 1) / 2;

  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(order, x);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16)
        break;
    }
    const double dp = legendre(order, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1)
    rule.nodes[half - 1] = 0.0;
  return rule;
}

namespace {

struct AxisNodes
{
  std::vector<double> points;
  std::vector<double> weights;
};

// Composite rule on [0, hi] in the graded variable s, with `panels` panels.
AxisNodes graded_axis(const GaussLegendreRule& rule, std::size_t panels, double hi)
{
  AxisNodes axis;
  axis.points.reserve(panels * rule.nodes.size());
  axis.weights.reserve(panels * rule.nodes.size());
  const double width = 1.0 / static_cast<double>(panels);
  for (std::size_t j = 0; j < panels; ++j) {
    const double left = static_cast<double>(j) * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = left + 0.5 * width * (rule.nodes[i] + 1.0);
      const double phi = s * s * (3.0 - 2.0 * s);
      const double dphi = 6.0 * s * (1.0 - s);
      axis.points.push_back(hi * phi);
      axis.weights.push_back(0.5 * width * rule.weights[i] * hi * dphi);
    }
  }
  return axis;
}

double tensor_sum(const std::function<double(double, double)>& f, const AxisNodes& axis)
{
  double total = 0.0;
  for (std::size_t i = 0; i < axis.points.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < axis.points.size(); ++j)
      row += axis.weights[j] * f(axis.points[i], axis.points[j]);
    total += axis.weights[i] * row;
  }
  return total;
}

} // namespace

double integrate_square(const std::function<double(double, double)>& f,
                        double hi,
                        const QuadratureOptions& opts)
{
  if (!(hi > 0.0))
    throw std::domain_error("integrate_square: upper limit must be positive");

  const auto rule = gauss_legendre(opts.nodes);
  std::size_t panels = 1;
  double previous = tensor_sum(f, graded_axis(rule, panels, hi));
  for (int level = 0; level < opts.max_doublings; ++level) {
    panels *= 2;
    const double current = tensor_sum(f, graded_axis(rule, panels, hi));
    if (std::abs(current - previous) < opts.tol)
      return current;
    previous = current;
  }
  throw QuadratureError("integrate_square: no agreement to " + std::to_string(opts.tol) +
                        " after " + std::to_string(opts.max_doublings) + " panel doublings");
}

} // namespace tailrho
