#include "tailrho/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv)
{
  namespace cli = tailrho::cli;

  CLI::App app{ "Lower-tail Spearman's rho: empirical and Bernstein estimators" };
  app.require_subcommand(1);

  auto add_rank_scale = [](CLI::App* sub, tailrho::RankScale& target) {
    sub
      ->add_option_function<std::string>(
        "--rank-scale",
        [&target](const std::string& text) { target = tailrho::parse_rank_scale(text); },
        "Pseudo-observation denominator: n (default) or n+1")
      ->check(CLI::IsMember({ "n", "n+1" }));
  };

  cli::EstimateOptions est;
  std::string input;
  std::string est_out;
  auto* estimate = app.add_subcommand("estimate", "Estimate the lower-tail rho of a data file");
  estimate->add_option("--input", input, "Two-column data file")->required();
  estimate->add_option("--p", est.p, "Tail threshold in (0,1]")->required();
  estimate->add_option("--method", est.method, "both | empirical | bernstein")
    ->check(CLI::IsMember({ "both", "empirical", "bernstein" }));
  estimate->add_option("--degree", est.degree, "Bernstein degree or 'rule' for floor(n^(2/3))");
  estimate->add_flag("--jitter", est.jitter, "Break ties with seeded noise below half the smallest gap");
  estimate->add_option("--jitter-seed", est.jitter_seed, "Seed for --jitter");
  estimate->add_option("--out", est_out, "Also write the estimates as CSV");
  add_rank_scale(estimate, est.rank_scale);

  cli::SimulateOptions sim;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo table under the FGM copula");
  simulate->add_option("--theta", sim.thetas, "Comma-separated FGM parameters")
    ->required()
    ->delimiter(',');
  simulate->add_option("--n", sim.ns, "Comma-separated sample sizes")->required()->delimiter(',');
  simulate->add_option("--p", sim.ps, "Comma-separated thresholds")->required()->delimiter(',');
  simulate->add_option("--reps", sim.reps, "Monte Carlo replications");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--out", sim_out, "Output CSV")->required();
  add_rank_scale(simulate, sim.rank_scale);

  cli::SweepOptions swp;
  std::string swp_out;
  auto* sweep = app.add_subcommand("sweep", "MSE curves over Bernstein degrees 1..m-max");
  sweep->add_option("--theta", swp.theta, "FGM parameter in [-1,1]")->required();
  sweep->add_option("--n", swp.n, "Sample size")->required();
  sweep->add_option("--p", swp.p, "Tail threshold in (0,1]")->required();
  sweep->add_option("--m-max", swp.m_max, "Largest Bernstein degree")->required();
  sweep->add_option("--reps", swp.reps, "Monte Carlo replications");
  sweep->add_option("--seed", swp.seed, "Base seed");
  sweep->add_option("--out", swp_out, "Output CSV")->required();
  add_rank_scale(sweep, swp.rank_scale);

  cli::AsymptOptions asy;
  auto* asympt = app.add_subcommand("asympt", "Asymptotic bias/variance quantities and m_opt");
  asympt->add_option("--theta", asy.theta, "FGM parameter in [-1,1]")->required();
  asympt->add_option("--p", asy.p, "Tail threshold in (0,1]")->required();
  asympt->add_option("--n", asy.n, "Sample size")->required();
  asympt->add_option("--sigma-reps", asy.sigma_reps,
                     "Replicates for a Monte Carlo sigma_p^2 estimate (0 skips it)");
  asympt->add_option("--seed", asy.seed, "Seed for --sigma-reps");
  add_rank_scale(asympt, asy.rank_scale);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::usage;
  }

  if (*estimate) {
    est.input = input;
    if (!est_out.empty())
      est.out = est_out;
    return cli::cmd_estimate(est, std::cout, std::cerr);
  }
  if (*simulate) {
    sim.out = sim_out;
    return cli::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*sweep) {
    swp.out = swp_out;
    return cli::cmd_sweep(swp, std::cout, std::cerr);
  }
  return cli::cmd_asympt(asy, std::cout, std::cerr);
}
