// CSV and JSON serialization for the external interfaces: stability grids,
// root-locus curves, heat trajectories, and experiment reports.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "abti/experiments.hpp"
#include "abti/stability.hpp"

namespace abti {

// columns: re,im,rho
std::string grid_to_csv(const StabilityGrid& grid);
nlohmann::json grid_to_json(const StabilityGrid& grid);

// columns: theta,branch,re,im
std::string locus_to_csv(const RootLocusCurve& curve);
nlohmann::json locus_to_json(const RootLocusCurve& curve);

// long format, columns: t,x,u
std::string trajectory_to_csv(const Trajectory& traj, const SpatialOperator& spatial);
// summary: norms, blow-up index, spectral radius (pass NaN when not computed)
nlohmann::json trajectory_to_json(const Trajectory& traj, double rho);

std::string report_to_csv(const ExperimentReport& report);
nlohmann::json report_to_json(const ExperimentReport& report);

std::string table_to_csv(const ConvergenceTable& table);

}  // namespace abti
