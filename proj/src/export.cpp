#include "abti/export.hpp"

#include <cmath>
#include <sstream>

namespace abti {

namespace {

std::ostringstream make_stream() {
  std::ostringstream out;
  out.precision(17);
  return out;
}

}  // namespace

std::string grid_to_csv(const StabilityGrid& grid) {
  auto out = make_stream();
  out << "re,im,rho\n";
  for (std::size_t i = 0; i < grid.im.size(); ++i) {
    for (std::size_t j = 0; j < grid.re.size(); ++j) {
      out << grid.re[j] << ',' << grid.im[i] << ',' << grid.at(i, j) << '\n';
    }
  }
  return out.str();
}

nlohmann::json grid_to_json(const StabilityGrid& grid) {
  return {{"q", grid.cfg.q},
          {"s", grid.cfg.s},
          {"alpha", grid.cfg.alpha},
          {"delta_q", grid.cfg.delta_q},
          {"re", grid.re},
          {"im", grid.im},
          {"rho", grid.rho}};
}

std::string locus_to_csv(const RootLocusCurve& curve) {
  auto out = make_stream();
  out << "theta,branch,re,im\n";
  for (std::size_t b = 0; b < curve.branches.size(); ++b) {
    for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
      out << curve.thetas[i] << ',' << b << ',' << curve.branches[b][i].real() << ','
          << curve.branches[b][i].imag() << '\n';
    }
  }
  return out.str();
}

nlohmann::json locus_to_json(const RootLocusCurve& curve) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& branch : curve.branches) {
    nlohmann::json pts = nlohmann::json::array();
    for (const cplx z : branch) pts.push_back({{"re", z.real()}, {"im", z.imag()}});
    branches.push_back(std::move(pts));
  }
  return {{"thetas", curve.thetas}, {"branches", branches}};
}

std::string trajectory_to_csv(const Trajectory& traj, const SpatialOperator& spatial) {
  auto out = make_stream();
  out << "t,x,u\n";
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    for (int i = 0; i < spatial.n_h; ++i) {
      out << traj.times[n] << ',' << spatial.nodes[static_cast<std::size_t>(i)] << ','
          << traj.states[n](i) << '\n';
    }
  }
  return out.str();
}

nlohmann::json trajectory_to_json(const Trajectory& traj, double rho) {
  nlohmann::json j = {{"times", traj.times},
                      {"norms", traj.norms},
                      {"blew_up", traj.blew_up},
                      {"blowup_index", traj.blowup_index},
                      {"max_imag", traj.max_imag}};
  if (std::isfinite(rho)) j["rho"] = rho;
  return j;
}

std::string report_to_csv(const ExperimentReport& report) {
  auto out = make_stream();
  out << "check,value,target,tolerance,relative,gating,pass\n";
  for (const auto& c : report.checks) {
    out << '"' << c.name << "\"," << c.value << ',' << c.target << ',' << c.tolerance << ','
        << (c.relative ? 1 : 0) << ',' << (c.gating ? 1 : 0) << ',' << (c.pass ? 1 : 0)
        << '\n';
  }
  return out.str();
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"target", c.target},
                      {"tolerance", c.tolerance},
                      {"relative", c.relative},
                      {"gating", c.gating},
                      {"pass", c.pass}});
  }
  return {{"name", report.name},
          {"parameters", report.parameters},
          {"outputs", report.outputs},
          {"checks", checks},
          {"all_pass", report.all_pass()}};
}

std::string table_to_csv(const ConvergenceTable& table) {
  auto out = make_stream();
  out << "inv_tau,error,observed_order,ok\n";
  for (const auto& r : table.rows) {
    out << r.inv_tau << ',' << r.error << ',' << r.observed_order << ',' << (r.ok ? 1 : 0)
        << '\n';
  }
  return out.str();
}

}  // namespace abti
