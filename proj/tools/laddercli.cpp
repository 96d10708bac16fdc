// Command-line front end: closed-loop runs, controller comparisons, bound
// evaluation and quick self-checks for ladder-system stabilization.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ladder/analysis.hpp"
#include "ladder/config.hpp"
#include "ladder/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitIntegrationError = 2;

int run_command(const std::string& config_path, const std::string& output_override) {
  ladder::ExperimentConfig config = ladder::load_config(config_path);
  if (!output_override.empty()) config.output = output_override;
  if (config.output.empty()) {
    config.output = std::filesystem::path(config_path).stem().string();
  }
  const ladder::ExperimentResult result = ladder::run_experiment(config);
  ladder::write_summary(result.report, config, std::cout);
  std::cerr << "wrote " << result.csv_path.string() << " and " << result.summary_path.string()
            << "\n";
  return kExitOk;
}

int compare_command(const std::string& config_path, const std::string& output_override) {
  ladder::ExperimentConfig config = ladder::load_config(config_path);
  if (!output_override.empty()) config.output = output_override;
  if (config.output.empty()) {
    config.output = std::filesystem::path(config_path).stem().string();
  }
  const ladder::ComparisonTable table = ladder::compare_controllers(config);
  ladder::write_comparison(table, std::cout);
  return kExitOk;
}

int bound_command(const std::string& config_path) {
  const ladder::ExperimentConfig config = ladder::load_config(config_path);
  if (config.params.alpha.empty()) {
    throw ladder::ConfigError("bound requires config key 'alpha'");
  }
  const ladder::ComplexState initial = config.initial_state();
  const ladder::TargetState target = config.target();
  const double v0 = ladder::lyapunov_value(initial, target);
  std::cout << "V0 = " << v0 << "\n";
  if (v0 <= 0.0) {
    std::cout << "bound_theorem = 0\nbound_simulation = 0\n";
    return kExitOk;
  }
  const double k_last = config.params.k.back();
  const double alpha_last = config.params.alpha.back();
  std::cout.precision(10);
  std::cout << "bound_theorem = "
            << ladder::bound_theorem_form(v0, config.beta, k_last, alpha_last, config.n) << "\n";
  std::cout << "bound_simulation = " << ladder::bound_simulation_form(v0, k_last, alpha_last)
            << "\n";
  return kExitOk;
}

bool report_check(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
  return ok;
}

int lemma1_command(long samples, std::uint64_t seed, int max_n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> pick_n(2, max_n);
  std::uniform_real_distribution<double> pick_alpha(1e-6, 1.0 - 1e-6);

  long violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (long i = 0; i < samples; ++i) {
    const int n = pick_n(rng);
    std::vector<double> r(n);
    double norm_sq = 0.0;
    for (double& value : r) {
      value = std::abs(gauss(rng));
      norm_sq += value * value;
    }
    const double norm = std::sqrt(norm_sq);
    for (double& value : r) value /= norm;
    const auto check = ladder::power_sum_inequality(r, pick_alpha(rng));
    worst_margin = std::min(worst_margin, check.rhs - check.lhs);
    if (!check.holds) ++violations;
  }

  double max_vertex_gap = 0.0;
  for (int n = 2; n <= max_n; ++n) {
    for (int level = 0; level < n; ++level) {
      std::vector<double> r(n, 0.0);
      r[level] = 1.0;
      const auto check = ladder::power_sum_inequality(r, pick_alpha(rng));
      max_vertex_gap = std::max(max_vertex_gap, std::abs(check.rhs - check.lhs));
    }
  }

  const bool ok = report_check(
      "power-sum inequality on " + std::to_string(samples) + " random unit vectors",
      violations == 0, "worst margin " + std::to_string(worst_margin)) &
      report_check("equality at the basis vectors", max_vertex_gap == 0.0,
                   "max gap " + std::to_string(max_vertex_gap));
  return ok ? kExitOk : kExitConfigError;
}

int selftest_command(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(3, 6);
  std::uniform_real_distribution<double> pick_u(-2.0, 2.0);
  std::uniform_real_distribution<double> pick_alpha(0.05, 0.95);
  std::uniform_real_distribution<double> pick_gain(0.1, 3.0);
  bool all_ok = true;

  {  // polar round-trip
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const int n = pick_n(rng);
      const ladder::ComplexState state = ladder::random_unit_state(n, rng);
      const ladder::ComplexState back = ladder::from_polar(ladder::to_polar(state));
      worst = std::max(worst, (back.amplitudes() - state.amplitudes()).cwiseAbs().maxCoeff());
    }
    all_ok &= report_check("polar round-trip on 10000 random states", worst <= 1e-12,
                           "max error " + std::to_string(worst));
  }

  {  // analytic descent under the fractional law
    long bad = 0;
    for (int i = 0; i < 10000; ++i) {
      const int n = pick_n(rng);
      std::vector<double> k(n - 1), alpha(n - 1);
      for (double& value : k) value = pick_gain(rng);
      for (double& value : alpha) value = pick_alpha(rng);
      const auto params = ladder::ControllerParams::fractional(k, alpha);
      const ladder::PolarState p = ladder::to_polar(ladder::random_unit_state(n, rng));
      const ladder::ControlVector u = ladder::control(params, p);
      if (ladder::lyapunov_rate_ladder(p, u) > 0.0) ++bad;
    }
    all_ok &= report_check("analytic rate <= 0 under the fractional law, 10000 random states",
                           bad == 0, std::to_string(bad) + " positive");
  }

  {  // agreement of the two rate formulas
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const int n = pick_n(rng);
      const ladder::LadderSystem system = ladder::build_ladder(n, [&] {
        std::vector<double> lambda(n);
        for (int j = 0; j < n; ++j) lambda[j] = j;
        return lambda;
      }());
      const ladder::ComplexState state = ladder::random_unit_state(n, rng);
      ladder::ControlVector u;
      u.u.resize(n - 1);
      for (double& value : u.u) value = pick_u(rng);
      const double ladder_rate = ladder::lyapunov_rate_ladder(ladder::to_polar(state), u);
      const double general_rate =
          ladder::lyapunov_rate_general(state, system, u, ladder::TargetState(n));
      worst = std::max(worst, std::abs(ladder_rate - general_rate));
    }
    all_ok &= report_check("rate formulas agree on 10000 random state/control pairs",
                           worst <= 1e-10, "max difference " + std::to_string(worst));
  }

  {  // norm conservation of the amplitude equations
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const int n = pick_n(rng);
      ladder::ComplexState state = ladder::random_unit_state(n, rng);
      while (true) {  // keep amplitudes clear of the polar singularity
        double min_r = 1.0;
        for (int j = 0; j < n; ++j) min_r = std::min(min_r, std::abs(state.amplitudes()[j]));
        if (min_r > 0.05) break;
        state = ladder::random_unit_state(n, rng);
      }
      const ladder::LadderSystem system = ladder::build_ladder(n, [&] {
        std::vector<double> lambda(n);
        for (int j = 0; j < n; ++j) lambda[j] = j;
        return lambda;
      }());
      ladder::ControlVector u;
      u.u.resize(n - 1);
      for (double& value : u.u) value = pick_u(rng);
      const ladder::PolarState p = ladder::to_polar(state);
      const auto d = ladder::rhs_polar(p, u, system);
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += p.r()[j] * d.r_dot[j];
      worst = std::max(worst, std::abs(sum));
    }
    all_ok &= report_check("sum_j r_j rdot_j = 0 on 10000 random interior states", worst <= 1e-12,
                           "max |sum| " + std::to_string(worst));
  }

  std::cout << (all_ok ? "overall: PASS" : "overall: FAIL") << "\n";
  return all_ok ? kExitOk : kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-time Lyapunov stabilization of ladder n-level quantum systems"};
  app.require_subcommand(1);

  std::string run_config, run_output;
  auto* run = app.add_subcommand("run", "integrate one configured scenario, write CSV + summary");
  run->add_option("config", run_config, "experiment config file")->required();
  run->add_option("--output", run_output, "override the output stem");

  std::string compare_config, compare_output;
  auto* compare =
      app.add_subcommand("compare", "run the fractional, standard and bang-bang laws side by side");
  compare->add_option("config", compare_config, "experiment config file")->required();
  compare->add_option("--output", compare_output, "override the output stem");

  std::string bound_config;
  auto* bound = app.add_subcommand("bound", "evaluate both convergence-time bounds for a config");
  bound->add_option("config", bound_config, "experiment config file")->required();

  long lemma_samples = 100000;
  std::uint64_t lemma_seed = 20240811;
  int lemma_max_n = 8;
  auto* lemma1 = app.add_subcommand("lemma1", "randomized sweep of the power-sum inequality");
  lemma1->add_option("--samples", lemma_samples, "number of random vectors")
      ->check(CLI::PositiveNumber);
  lemma1->add_option("--seed", lemma_seed, "RNG seed");
  lemma1->add_option("--max-n", lemma_max_n, "largest dimension to sample")
      ->check(CLI::Range(2, 64));

  std::uint64_t selftest_seed = 20240811;
  auto* selftest = app.add_subcommand("selftest", "quick randomized identity checks");
  selftest->add_option("--seed", selftest_seed, "RNG seed");

  try {
    app.parse(argc, argv);
    if (*run) return run_command(run_config, run_output);
    if (*compare) return compare_command(compare_config, compare_output);
    if (*bound) return bound_command(bound_config);
    if (*lemma1) return lemma1_command(lemma_samples, lemma_seed, lemma_max_n);
    if (*selftest) return selftest_command(selftest_seed);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return error.get_exit_code() == 0 ? kExitOk : kExitConfigError;
  } catch (const ladder::IntegrationError& error) {
    std::cerr << "integration failure: " << error.what() << "\n";
    return kExitIntegrationError;
  } catch (const ladder::ConfigError& error) {
    std::cerr << "config error: " << error.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
