// Command-line driver: stability regions, root loci, the radius and
// max-order tables, the convergence study, the heat-equation study, and the
// seeded witness suite. Every subcommand writes CSV or JSON and exits
// nonzero when an embedded reference check fails.
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abti/export.hpp"

namespace {

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;  // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputOptions* opts) {
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out_path, "Output file (default: stdout)");
}

void emit(const OutputOptions& opts, const std::string& csv, const nlohmann::json& json) {
  const std::string payload = (opts.format == "json") ? json.dump(2) + "\n" : csv;
  if (opts.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(opts.out_path);
  if (!file) throw CLI::RuntimeError("cannot open output file: " + opts.out_path, 2);
  file << payload;
}

int finish_report(const abti::ExperimentReport& report, const OutputOptions& opts) {
  emit(opts, abti::report_to_csv(report), abti::report_to_json(report));
  if (!report.all_pass()) {
    std::cerr << report.name << ": reference check failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block Adams-Bashforth-type integrator: stability tables and experiments"};
  app.set_config("--config", "",
                 "INI-style key=value file with [subcommand] sections; place before the "
                 "subcommand");
  app.require_subcommand(1);

  int exit_code = 0;

  // region
  {
    auto* cmd = app.add_subcommand("region", "Sample rho(R(z)) on a rectangular grid");
    auto q = std::make_shared<int>(2);
    auto s = std::make_shared<int>(3);
    auto alpha = std::make_shared<double>(1.0);
    auto re_min = std::make_shared<double>(-1.2);
    auto re_max = std::make_shared<double>(0.4);
    auto im_min = std::make_shared<double>(-0.8);
    auto im_max = std::make_shared<double>(0.8);
    auto resolution = std::make_shared<int>(201);
    auto opts = std::make_shared<OutputOptions>();
    cmd->add_option("--q", *q, "Expansion order")->capture_default_str();
    cmd->add_option("--s", *s, "Node count")->capture_default_str();
    cmd->add_option("--alpha", *alpha, "tau / r")->capture_default_str();
    cmd->add_option("--re-min", *re_min)->capture_default_str();
    cmd->add_option("--re-max", *re_max)->capture_default_str();
    cmd->add_option("--im-min", *im_min)->capture_default_str();
    cmd->add_option("--im-max", *im_max)->capture_default_str();
    cmd->add_option("--resolution", *resolution, "Samples per axis")->capture_default_str();
    add_output_flags(cmd, opts.get());
    cmd->callback([=]() {
      const auto cfg = abti::IntegratorConfig::make(*q, *s, 1.0, *alpha);
      const auto grid = abti::stability_region(cfg, *re_min, *re_max, *im_min, *im_max,
                                               *resolution, *resolution);
      emit(*opts, abti::grid_to_csv(grid), abti::grid_to_json(grid));
    });
  }

  // locus
  {
    auto* cmd = app.add_subcommand("locus", "Root-locus curves of the stability polynomial");
    auto q = std::make_shared<int>(4);
    auto alpha = std::make_shared<double>(1.0);
    auto delta = std::make_shared<int>(0);
    auto n_theta = std::make_shared<int>(512);
    auto opts = std::make_shared<OutputOptions>();
    cmd->add_option("--q", *q)->capture_default_str();
    cmd->add_option("--alpha", *alpha)->capture_default_str();
    cmd->add_option("--delta", *delta, "1 for the s = q configuration")->capture_default_str();
    cmd->add_option("--n-theta", *n_theta)->capture_default_str();
    add_output_flags(cmd, opts.get());
    cmd->callback([=]() {
      const auto curve = abti::root_locus(*q, *alpha, *delta, *n_theta);
      emit(*opts, abti::locus_to_csv(curve), abti::locus_to_json(curve));
    });
  }

  // radius
  {
    auto* cmd = app.add_subcommand("radius", "Parabolic radii for given orders");
    auto orders = std::make_shared<std::vector<int>>(std::vector<int>{2, 4, 6, 8, 10});
    auto delta = std::make_shared<int>(0);
    auto opts = std::make_shared<OutputOptions>();
    cmd->add_option("--orders", *orders, "Orders of approximation")->capture_default_str();
    cmd->add_option("--delta", *delta)->capture_default_str();
    add_output_flags(cmd, opts.get());
    cmd->callback([=, &exit_code]() {
      exit_code |= finish_report(abti::run_radius_table(*orders, *delta), *opts);
    });
  }

  // max-order
  {
    auto* cmd = app.add_subcommand("max-order", "Largest certifiable order per radius");
    auto radii = std::make_shared<std::vector<double>>(
        std::vector<double>{0.6, 0.5, 0.4, 1.0 / std::exp(1.0), 0.3});
    auto tol = std::make_shared<double>(2e-12);
    auto opts = std::make_shared<OutputOptions>();
    cmd->add_option("--radii", *radii, "Parabolic radii")->capture_default_str();
    cmd->add_option("--tol", *tol, "Positivity certification floor")->capture_default_str();
    add_output_flags(cmd, opts.get());
    cmd->callback([=, &exit_code]() {
      exit_code |= finish_report(abti::run_max_order_table(*radii, *tol), *opts);
    });
  }

  // converge-ode
  {
    auto* cmd = app.add_subcommand("converge-ode", "Allen-Cahn convergence table");
    auto q = std::make_shared<int>(2);
    auto s = std::make_shared<int>(3);
    auto steps = std::make_shared<std::vector<long>>(std::vector<long>{128, 256, 512, 1024});
    auto eps = std::make_shared<double>(0.5);
    auto u0 = std::make_shared<double>(0.01);
    auto horizon = std::make_shared<double>(1.0);
    auto opts = std::make_shared<OutputOptions>();
    cmd->add_option("--q", *q)->capture_default_str();
    cmd->add_option("--s", *s)->capture_default_str();
    cmd->add_option("--steps", *steps, "Doubling sequence of 1/tau")->capture_default_str();
    cmd->add_option("--eps", *eps)->capture_default_str();
    cmd->add_option("--u0", *u0)->capture_default_str();
    cmd->add_option("--T", *horizon)->capture_default_str();
    add_output_flags(cmd, opts.get());
    cmd->callback([=, &exit_code]() {
      exit_code |=
          finish_report(abti::convergence_report(*q, *s, *steps, *eps, *u0, *horizon), *opts);
    });
  }

  // heat
  {
    auto* cmd = app.add_subcommand("heat", "Heat-equation amplification and blow-up study");
    auto h = std::make_shared<double>(M_PI / 32);
    auto q = std::make_shared<int>(2);
    auto s = std::make_shared<int>(3);
    auto factors = std::make_shared<std::vector<double>>(std::vector<double>{0.9, 1.0, 1.1});
    auto horizon = std::make_shared<double>(1.0);
    auto traj_prefix = std::make_shared<std::string>();
    auto opts = std::make_shared<OutputOptions>();
    cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    cmd->add_option("--h", *h, "Mesh width")->capture_default_str();
    cmd->add_option("--q", *q)->capture_default_str();
    cmd->add_option("--s", *s)->capture_default_str();
    cmd->add_option("--factor", *factors, "CFL multipliers")->capture_default_str();
    cmd->add_option("--T", *horizon)->capture_default_str();
    cmd->add_option("--trajectory-out", *traj_prefix,
                    "Also write <prefix>_<factor>.csv (t,x,u) and .json per factor");
    add_output_flags(cmd, opts.get());
    cmd->callback([=, &exit_code]() {
      exit_code |= finish_report(abti::run_heat_blowup(*h, *q, *s, *factors, *horizon), *opts);
      if (!traj_prefix->empty()) {
        const int n_h = static_cast<int>(std::lround(2.0 * M_PI / *h)) - 1;
        const auto spatial =
            abti::laplacian_1d(n_h, *h, abti::BoundaryCondition::dirichlet, -M_PI);
        const double tau_cfl = abti::cfl_max_step(*q, *s, *h);
        for (const double factor : *factors) {
          const double tau = tau_cfl * factor;
          const long n_steps = std::lround(*horizon / tau);
          const auto cfg = abti::IntegratorConfig::make(*q, *s, tau, tau);
          const auto amp = abti::amplification_radius(cfg, spatial, abti::RadiusMethod::reduced);
          const auto traj = abti::heat_solve(cfg, spatial, nullptr,
                                             [](double x) { return std::cos(x); },
                                             n_steps * tau);
          char tag[32];
          std::snprintf(tag, sizeof(tag), "%g", factor);
          std::ofstream csv(*traj_prefix + "_" + tag + ".csv");
          csv << abti::trajectory_to_csv(traj, spatial);
          std::ofstream json(*traj_prefix + "_" + tag + ".json");
          json << abti::trajectory_to_json(traj, amp.reduced_radius).dump(2) << "\n";
        }
      }
    });
  }

  // verify-appendix
  {
    auto* cmd = app.add_subcommand("verify-appendix", "Seeded witness suite");
    auto seed = std::make_shared<std::uint64_t>(20240801ULL);
    auto draws = std::make_shared<int>(100);
    auto opts = std::make_shared<OutputOptions>();
    cmd->add_option("--seed", *seed)->capture_default_str();
    cmd->add_option("--draws", *draws)->capture_default_str();
    add_output_flags(cmd, opts.get());
    cmd->callback([=, &exit_code]() {
      exit_code |= finish_report(abti::run_appendix_verify(*seed, *draws), *opts);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
