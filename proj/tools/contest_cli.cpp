// Command-line front end: parse contest specs, dispatch to the solver,
// verifier, certifier, temporal evaluator and sweep runners, and emit JSON
// or CSV reports. Exit codes: 0 success/pass, 1 failed assertion, 2 input
// error.

#include <CLI11.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "contest/analytics.hpp"
#include "contest/certificate.hpp"
#include "contest/equilibrium.hpp"
#include "contest/io.hpp"
#include "contest/probability.hpp"
#include "contest/temporal.hpp"
#include "contest/verification.hpp"

namespace {

using namespace contest;

double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Allocation random_interior(std::mt19937_64& rng, const ContestSpec& spec, Team side) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shares(spec.battle_count());
  double total = 0.0;
  for (double& s : shares) {
    s = 0.05 + unit(rng);  // bounded away from the boundary
    total += s;
  }
  for (double& s : shares) s *= spec.budget(side) / total;
  return Allocation{std::move(shares), side};
}

// Randomized log-concavity spot checks: Hessian sign, M0 sign, and the
// secant inequality for log Prob_A. Points are split across workers with
// per-worker seeds, so results are deterministic for a given (seed, jobs).
void append_spot_checks(VerifyReport& report, const ContestSpec& spec, unsigned seed, int jobs,
                        int points) {
  struct Worst {
    double hessian = 0.0;
    double m0 = 0.0;
    double segment = 0.0;
  };
  std::vector<Worst> per_worker(jobs);

  auto run = [&](int worker) {
    std::mt19937_64 rng(seed + static_cast<unsigned>(worker));
    Worst& worst = per_worker[worker];
    const int share = (points + jobs - 1) / jobs;
    const int begin = worker * share;
    const int end = std::min(points, begin + share);
    for (int i = begin; i < end; ++i) {
      const Allocation own = random_interior(rng, spec, Team::A);
      const Allocation own2 = random_interior(rng, spec, Team::A);
      const Allocation opp = random_interior(rng, spec, Team::B);

      const HessianReport hr = log_hessian(own, opp, spec);
      worst.hessian = std::max(worst.hessian, hr.max_eig_h / spectral_norm(hr.h));
      worst.m0 = std::max(worst.m0, -hr.min_eig_m0 / spectral_norm(hr.m0));

      auto log_value = [&](const std::vector<double>& shares) {
        std::vector<double> probs(shares.size());
        for (size_t t = 0; t < shares.size(); ++t)
          probs[t] = battle_win_prob(shares[t], opp.shares[t], spec.battles[t]);
        return std::log(team_win_prob(probs));
      };
      const double lv = log_value(own.shares);
      const double lw = log_value(own2.shares);
      for (double lambda = 0.1; lambda < 0.95; lambda += 0.1) {
        std::vector<double> mix(own.shares.size());
        for (size_t t = 0; t < mix.size(); ++t)
          mix[t] = lambda * own.shares[t] + (1.0 - lambda) * own2.shares[t];
        worst.segment =
            std::max(worst.segment, lambda * lv + (1.0 - lambda) * lw - log_value(mix));
      }
    }
  };

  if (jobs <= 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  Worst merged;
  for (const Worst& w : per_worker) {
    merged.hessian = std::max(merged.hessian, w.hessian);
    merged.m0 = std::max(merged.m0, w.m0);
    merged.segment = std::max(merged.segment, w.segment);
  }
  report.checks.push_back(
      {"log_concavity_hessian", merged.hessian, 1e-10, merged.hessian <= 1e-10});
  report.checks.push_back({"m0_psd", merged.m0, 1e-10, merged.m0 <= 1e-10});
  report.checks.push_back(
      {"log_concavity_segment", merged.segment, 1e-12, merged.segment <= 1e-12});
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write to '" + path + "'");
  out << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium toolkit for two-team majoritarian multi-battle contests"};
  app.require_subcommand(1);

  std::string spec_path, out_path, csv_path, clusters_text, kind;
  double tol = 1e-4;
  unsigned seed = 42;
  int jobs = 1;
  int n_level = 1;
  int target = 1;
  std::vector<double> grid;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a contest in closed form");
  solve_cmd->add_option("spec", spec_path, "contest spec JSON file")->required();
  solve_cmd->add_option("--out", out_path, "write the equilibrium JSON here");
  solve_cmd->add_option("--csv", csv_path, "write the per-battle CSV table here");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Verify the closed form is the equilibrium");
  verify_cmd->add_option("spec", spec_path, "contest spec JSON file")->required();
  verify_cmd->add_option("--tol", tol, "per-component best-response tolerance");
  verify_cmd->add_option("--seed", seed, "seed for the randomized spot checks");
  verify_cmd->add_option("--jobs", jobs, "worker threads for the spot checks")
      ->check(CLI::PositiveNumber);

  CLI::App* certify_cmd = app.add_subcommand("certify", "Exact-integer PSD certificate");
  certify_cmd->add_option("--n-level", n_level, "contest size parameter N")->required();

  CLI::App* temporal_cmd = app.add_subcommand("temporal", "Evaluate under a cluster ordering");
  temporal_cmd->add_option("spec", spec_path, "contest spec JSON file")->required();
  temporal_cmd->add_option("--clusters", clusters_text, "e.g. \"1;2,3\" (1-based)")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Comparative-statics table");
  sweep_cmd->add_option("spec", spec_path, "contest spec JSON file")->required();
  sweep_cmd->add_option("--kind", kind, "cost | budget | salience | effort-r")->required();
  sweep_cmd->add_option("--target", target, "1-based battle index");
  sweep_cmd->add_option("--grid", grid, "comma-separated grid values")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (solve_cmd->parsed()) {
      const ContestSpec spec = validate_spec(load_spec(spec_path));
      const Equilibrium eq = solve(spec);
      write_or_print(equilibrium_to_json(eq).dump(2), out_path);
      if (!csv_path.empty()) write_or_print(equilibrium_csv(eq), csv_path);
      return 0;
    }

    if (verify_cmd->parsed()) {
      const ContestSpec spec = validate_spec(load_spec(spec_path));
      VerifyReport report = verify_equilibrium(spec, tol);
      append_spot_checks(report, spec, seed, jobs, 50);
      std::cout << verify_report_to_json(report).dump(2) << '\n';
      return report.pass() ? 0 : 1;
    }

    if (certify_cmd->parsed()) {
      CertifyReport report;
      try {
        report = certify(n_level);
      } catch (const CertificateError& err) {
        std::cerr << err.what() << '\n';
        return 2;
      }
      std::cout << certify_report_to_json(report).dump(2) << '\n';
      return report.pass ? 0 : 1;
    }

    if (temporal_cmd->parsed()) {
      const ContestSpec spec = validate_spec(load_spec(spec_path));
      const TemporalStructure structure = parse_clusters(clusters_text, spec.battle_count());
      const Equilibrium eq = solve(spec);
      const double ordered = eval_temporal(eq.prob_a, structure);
      const double simultaneous = team_win_prob(eq.prob_a);
      const double residual = std::abs(ordered - simultaneous);
      nlohmann::json out = {{"probability", ordered},
                            {"simultaneous", simultaneous},
                            {"residual", residual}};
      std::cout << out.dump(2) << '\n';
      return residual <= 1e-12 ? 0 : 1;
    }

    if (sweep_cmd->parsed()) {
      const ContestSpec spec = validate_spec(load_spec(spec_path));
      if (kind != "budget" && sweep_cmd->count("--target") == 0)
        throw SpecError("sweep kind '" + kind + "' needs --target <battle>");
      SweepTable table;
      if (kind == "cost")
        table = sweep_cost_index(spec, target - 1, grid);
      else if (kind == "budget")
        table = sweep_budget_ratio(spec, grid);
      else if (kind == "salience")
        table = salience_profile(spec, target - 1, grid);
      else if (kind == "effort-r")
        table = effort_cost_r_monotonicity(spec, target - 1, grid);
      else
        throw SpecError("unknown sweep kind '" + kind + "'");
      std::cout << sweep_csv(table);
      for (const SweepCheck& check : table.checks)
        std::cerr << check.name << ": " << (check.pass ? "pass" : "FAIL") << '\n';
      return table.all_pass() ? 0 : 1;
    }
  } catch (const SpecError& err) {
    std::cerr << err.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << err.what() << '\n';
    return 2;
  }
  return 2;
}
