#include "tailrho/commands.hpp"

#include "tailrho/asympt.hpp"
#include "tailrho/estimators.hpp"
#include "tailrho/fgm.hpp"
#include "tailrho/io.hpp"
#include "tailrho/mc.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace tailrho::cli {

namespace {

// Bad flag values; reported with exit code 2.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

void require_theta(double theta)
{
  if (!(theta >= -1.0 && theta <= 1.0))
    throw UsageError("theta must lie in [-1,1], got " + format_number(theta));
}

void require_threshold(double p)
{
  if (!(p > min_threshold && p <= 1.0))
    throw UsageError("p must lie in (1e-6, 1], got " + format_number(p));
}

void require_positive(std::uint64_t value, const char* name)
{
  if (value < 1)
    throw UsageError(std::string(name) + " must be positive");
}

std::size_t parse_degree(const std::string& text, std::size_t n)
{
  if (text == "rule")
    return rule_of_thumb_degree(n);
  std::size_t m = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, m);
  if (ec != std::errc() || ptr != end || m < 1)
    throw UsageError("--degree expects 'rule' or a positive integer, got '" + text + "'");
  return m;
}

// Maps exceptions onto exit codes.
template<class Body>
int guarded(std::ostream& err, Body&& body)
{
  try {
    return body();
  } catch (const TiesError& e) {
    err << "error: " << e.what()
        << "\nranks require distinct values in each margin; rerun with --jitter to break ties\n";
    return data_precondition;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

} // namespace

int cmd_estimate(const EstimateOptions& opts, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    require_threshold(opts.p);
    const bool want_emp = opts.method == "both" || opts.method == "empirical";
    const bool want_bern = opts.method == "both" || opts.method == "bernstein";
    if (!want_emp && !want_bern)
      throw UsageError("--method must be one of both, empirical, bernstein");

    Sample sample = read_data_file(opts.input);
    if (opts.jitter)
      sample = jitter_ties(sample, opts.jitter_seed);
    const auto ps = pseudo_observations(sample, opts.rank_scale);

    std::vector<TailRhoResult> results;
    if (want_emp)
      results.push_back(rho_hat_empirical(ps, opts.p));
    if (want_bern)
      results.push_back(rho_hat_bernstein(ps, opts.p, parse_degree(opts.degree, ps.size())));

    out << "n: " << ps.size() << '\n' << "p: " << format_number(opts.p) << '\n';
    if (want_bern)
      out << "m: " << *results.back().degree << '\n';
    for (const auto& r : results)
      out << "rho_" << to_string(r.method) << ": " << format_number(r.value) << '\n';

    if (opts.out) {
      std::string csv = "method,n,p,m,value,integral\n";
      for (const auto& r : results) {
        csv += std::string(to_string(r.method)) + ',' + std::to_string(ps.size()) + ',' +
               format_number(r.p) + ',' + (r.degree ? std::to_string(*r.degree) : "NA") + ',' +
               format_number(r.value) + ',' + format_number(r.integral) + '\n';
      }
      write_file_atomic(*opts.out, csv);
    }
    return static_cast<int>(ok);
  });
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    if (opts.thetas.empty() || opts.ns.empty() || opts.ps.empty())
      throw UsageError("--theta, --n and --p each need at least one value");
    for (double theta : opts.thetas)
      require_theta(theta);
    for (auto n : opts.ns)
      require_positive(n, "--n");
    for (double p : opts.ps)
      require_threshold(p);
    require_positive(opts.reps, "--reps");
    if (opts.out.empty())
      throw UsageError("--out is required");

    ExperimentConfig config;
    config.thetas = opts.thetas;
    config.ns = opts.ns;
    config.ps = opts.ps;
    config.reps = opts.reps;
    config.seed = opts.seed;
    config.threads = threads_from_env();
    config.rank_scale = opts.rank_scale;

    const auto rows = run_table(config);
    write_file_atomic(opts.out, results_csv(rows, true));
    out << "wrote " << rows.size() << " rows to " << opts.out.string() << '\n';
    return static_cast<int>(ok);
  });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    require_theta(opts.theta);
    require_positive(opts.n, "--n");
    require_threshold(opts.p);
    require_positive(opts.m_max, "--m-max");
    require_positive(opts.reps, "--reps");
    if (opts.out.empty())
      throw UsageError("--out is required");

    const auto rows = degree_sweep(opts.theta, opts.n, opts.p, 1, opts.m_max, opts.reps,
                                   opts.seed, { .threads = threads_from_env(), .rank_scale = opts.rank_scale });
    write_file_atomic(opts.out, results_csv(rows, false));
    out << "wrote " << rows.size() << " rows to " << opts.out.string() << '\n';
    return static_cast<int>(ok);
  });
}

int cmd_asympt(const AsymptOptions& opts, std::ostream& out, std::ostream& err)
{
  return guarded(err, [&] {
    require_theta(opts.theta);
    require_threshold(opts.p);
    require_positive(opts.n, "--n");

    const FgmModel model(opts.theta);
    std::optional<double> sigma;
    if (opts.sigma_reps > 0)
      sigma = estimate_sigma_p2(opts.theta, opts.p, opts.n, opts.sigma_reps, opts.seed,
                                { .threads = threads_from_env(), .rank_scale = opts.rank_scale });
    const auto report = asymptotic_report(model, opts.p, opts.n, sigma);
    const std::size_t rule = rule_of_thumb_degree(opts.n);

    out << "theta: " << format_number(opts.theta) << '\n'
        << "p: " << format_number(opts.p) << '\n'
        << "n: " << opts.n << '\n'
        << "T_p(b) closed form: " << format_number(fgm_t_p_bias(model, opts.p)) << '\n'
        << "T_p(b) quadrature: " << format_number(report.t_p_b) << '\n'
        << "T_p(V): " << format_number(report.t_p_v) << '\n';
    if (report.m_opt) {
      out << "m_opt: " << format_number(*report.m_opt) << '\n'
          << "m_opt degree: " << report.degree << '\n';
    } else {
      out << "m_opt: DegenerateBias (T_p(b) = 0), falling back to the rule of thumb\n";
      err << "warning: T_p(b) vanishes; using rule-of-thumb degree " << rule << '\n';
    }
    out << "rule-of-thumb degree: " << rule << '\n';

    auto print_at = [&](const char* label, std::size_t m) {
      const auto e = mse_expansions(report.t_p_b, report.t_p_v, opts.n, m, sigma);
      out << "MSE difference at m=" << m << " (" << label << "): " << format_number(e.difference)
          << '\n';
      if (e.mse_bernstein) {
        out << "  MSE bernstein: " << format_number(*e.mse_bernstein) << '\n'
            << "  MSE empirical: " << format_number(*e.mse_empirical) << '\n';
      }
    };
    if (sigma)
      out << "sigma_p^2 (Monte Carlo, K=" << opts.sigma_reps << "): " << format_number(*sigma)
          << '\n';
    print_at(report.m_opt ? "m_opt" : "fallback", report.degree);
    print_at("rule of thumb", rule);
    return static_cast<int>(ok);
  });
}

} // namespace tailrho::cli
