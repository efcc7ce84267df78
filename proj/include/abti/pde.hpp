// Fully discrete 1-D heat solver: second-order spatial stencils, the
// Kronecker amplification operator and its per-eigenvalue reduction, CFL
// bounds, and the L2-stability inequality check.
#pragma once

#include <functional>
#include <optional>
#include <span>

#include "abti/integrator.hpp"
#include "abti/numerics.hpp"

namespace abti {

enum class BoundaryCondition { dirichlet, periodic };

// Mass/stiffness pair for the 1-D Laplacian; M is the identity hook for the
// finite-difference path. nodes holds the x-coordinates the dof live on.
struct SpatialOperator {
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
  double h = 1.0;
  int n_h = 0;
  BoundaryCondition bc = BoundaryCondition::dirichlet;
  std::vector<double> nodes;
};

// Dirichlet: interior nodes of [x_left, x_left + (n_h+1) h], tridiagonal
// (1,-2,1)/h^2. Periodic: nodes x_left + i h, i = 0..n_h-1, circulant stencil.
SpatialOperator laplacian_1d(int n_h, double h, BoundaryCondition bc, double x_left = 0.0);

enum class RadiusMethod { reduced, full, both };

struct AmplificationOperator {
  IntegratorConfig cfg;
  double reduced_radius = 0.0;
  std::optional<double> full_radius;
};

// Spectral radius of G = A (x) E_h + tau B (x) K (M = identity). reduced:
// max over mu in spec(K) of rho(A + tau mu B); full: eigenvalues of the
// (s n_h)-dimensional Kronecker assembly, capped at s n_h <= 512. `both`
// cross-checks and throws on disagreement > 1e-6.
AmplificationOperator amplification_radius(const IntegratorConfig& cfg,
                                           const SpatialOperator& spatial,
                                           RadiusMethod method);

// tau_max = r h^2 / 4 with r the parabolic radius of the (q, s) scheme.
double cfl_max_step(int q, int s, double h);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;  // reconstructed (real-part) spatial vectors
  std::vector<double> norms;            // h-weighted L2 norms
  bool blew_up = false;
  long blowup_index = -1;
  double max_imag = 0.0;  // largest |Im| seen in any reconstruction
};

// Forcing is sampled at the complex contour times, so it must accept complex
// t; pass nullptr for f = 0.
using SpaceTimeFn = std::function<cplx(cplx t, double x)>;

// Advances the fully discrete scheme to T (tau must divide T within
// round-off). Initialization solves the coupled iterator system once.
// Blow-up (norm > cap * initial norm) stops the run and is recorded as data.
Trajectory heat_solve(const IntegratorConfig& cfg, const SpatialOperator& spatial,
                      const SpaceTimeFn& forcing, const std::function<double(double)>& u0,
                      double T, double blowup_cap = 1e3);

struct L2StabilityResult {
  bool holds = true;
  double worst_margin = 0.0;   // min over steps of bound_n - ||u^{n+1}||
  long first_violation = -1;   // step index of the first broken inequality
};

// Checks ||u^{n+1}|| <= ||u^0|| + tau sum_{nu<=n} ||f^nu|| along a trajectory.
L2StabilityResult l2_stability_check(const Trajectory& traj,
                                     std::span<const double> forcing_norms, double tau);

// h-weighted L2 norm of a grid function.
double grid_norm(const Eigen::VectorXd& v, double h);

}  // namespace abti
