#include "abti/pde.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "abti/stability.hpp"

namespace abti {

SpatialOperator laplacian_1d(int n_h, double h, BoundaryCondition bc, double x_left) {
  if (n_h < 2) throw numerics_error("laplacian_1d: n_h must be >= 2");
  if (!(h > 0.0)) throw numerics_error("laplacian_1d: h must be > 0");
  SpatialOperator op;
  op.h = h;
  op.n_h = n_h;
  op.bc = bc;
  op.M = Eigen::MatrixXd::Identity(n_h, n_h);
  op.K = Eigen::MatrixXd::Zero(n_h, n_h);
  const double w = 1.0 / (h * h);
  for (int i = 0; i < n_h; ++i) {
    op.K(i, i) = -2.0 * w;
    if (i + 1 < n_h) {
      op.K(i, i + 1) = w;
      op.K(i + 1, i) = w;
    }
  }
  if (bc == BoundaryCondition::periodic) {
    op.K(0, n_h - 1) += w;
    op.K(n_h - 1, 0) += w;
  }
  op.nodes.resize(static_cast<std::size_t>(n_h));
  const int offset = (bc == BoundaryCondition::dirichlet) ? 1 : 0;
  for (int i = 0; i < n_h; ++i) {
    op.nodes[static_cast<std::size_t>(i)] = x_left + h * (i + offset);
  }
  return op;
}

namespace {

std::vector<double> stiffness_spectrum(const SpatialOperator& spatial) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(spatial.K);
  if (solver.info() != Eigen::Success) {
    throw numerics_error("amplification_radius: stiffness eigensolve failed");
  }
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + spatial.n_h};
}

double max_poly_rho(const IntegratorConfig& cfg, cplx z) {
  double rho = 0.0;
  for (const cplx r : poly_roots(char_poly(cfg.q, z, cfg.alpha, cfg.delta_q))) {
    rho = std::max(rho, std::abs(r));
  }
  return rho;
}

}  // namespace

AmplificationOperator amplification_radius(const IntegratorConfig& cfg,
                                           const SpatialOperator& spatial,
                                           RadiusMethod method) {
  AmplificationOperator out;
  out.cfg = cfg;

  if (method != RadiusMethod::full) {
    if (!spatial.M.isIdentity(1e-14)) {
      throw numerics_error("amplification_radius: reduced path needs M = identity");
    }
    double rho = 0.0;
    for (const double mu : stiffness_spectrum(spatial)) {
      rho = std::max(rho, max_poly_rho(cfg, cplx(cfg.tau * mu)));
    }
    out.reduced_radius = rho;
  }

  if (method != RadiusMethod::reduced) {
    const long dim = static_cast<long>(cfg.s) * spatial.n_h;
    if (dim > 512) throw numerics_error("amplification_radius: full assembly capped at 512");
    const StepperMatrices st = build_stepper(cfg);
    const Mat b = st.B_alpha / cfg.alpha;
    const Mat k_c = spatial.K.cast<cplx>();
    Mat g = Mat::Zero(dim, dim);
    const Mat eye_h = Mat::Identity(spatial.n_h, spatial.n_h);
    for (int bj = 0; bj < cfg.s; ++bj) {
      for (int bk = 0; bk < cfg.s; ++bk) {
        g.block(bj * spatial.n_h, bk * spatial.n_h, spatial.n_h, spatial.n_h) =
            cfg.tau * b(bj, bk) * k_c + st.A(bj, bk) * eye_h;
      }
    }
    double rho = 0.0;
    for (const cplx ev : dense_eigvals(g)) rho = std::max(rho, std::abs(ev));
    out.full_radius = rho;
  }

  if (method == RadiusMethod::both &&
      std::abs(out.reduced_radius - *out.full_radius) > 1e-6) {
    throw numerics_error("amplification_radius: reduced/full cross-check failed");
  }
  if (method == RadiusMethod::full) out.reduced_radius = *out.full_radius;
  return out;
}

double cfl_max_step(int q, int s, double h) {
  if (s < q) throw numerics_error("cfl_max_step: s must be >= q");
  return scheme_parabolic_radius(q, (s == q) ? 1 : 0) * h * h / 4.0;
}

double grid_norm(const Eigen::VectorXd& v, double h) {
  return std::sqrt(h) * v.norm();
}

Trajectory heat_solve(const IntegratorConfig& cfg, const SpatialOperator& spatial,
                      const SpaceTimeFn& forcing, const std::function<double(double)>& u0,
                      double T, double blowup_cap) {
  const long n_steps = std::lround(T / cfg.tau);
  if (n_steps < 1 || std::abs(n_steps * cfg.tau - T) > 1e-8 * std::max(1.0, T)) {
    throw numerics_error("heat_solve: tau must divide T");
  }
  const int s = cfg.s;
  const int n = spatial.n_h;
  const StepperMatrices st = build_stepper(cfg);
  const Mat k_c = spatial.K.cast<cplx>();

  const auto sample_forcing = [&](double base_time) -> Mat {
    Mat f = Mat::Zero(s, n);
    if (forcing) {
      for (int j = 0; j < s; ++j) {
        const cplx tj = base_time + cfg.r * st.nodes(j);
        for (int i = 0; i < n; ++i) f(j, i) = forcing(tj, spatial.nodes[static_cast<std::size_t>(i)]);
      }
    }
    return f;
  };

  // iterator: (I - r B(0) (x) K) vec(U) = 1 (x) v + r (B(0) (x) I) vec(F0),
  // solved as one dense system; rows of U follow the contour nodes.
  Mat big = Mat::Identity(static_cast<long>(s) * n, static_cast<long>(s) * n);
  for (int bj = 0; bj < s; ++bj) {
    for (int bk = 0; bk < s; ++bk) {
      big.block(bj * n, bk * n, n, n) -= cfg.r * st.B_zero(bj, bk) * k_c;
    }
  }
  Vec rhs0(static_cast<long>(s) * n);
  const Mat f0 = sample_forcing(0.0);
  const Mat bf0 = st.B_zero * f0;
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < n; ++i) {
      rhs0(static_cast<long>(j) * n + i) =
          cplx(u0(spatial.nodes[static_cast<std::size_t>(i)])) + cfg.r * bf0(j, i);
    }
  }
  const Vec u_init = big.partialPivLu().solve(rhs0);
  Mat u(s, n);
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < n; ++i) u(j, i) = u_init(static_cast<long>(j) * n + i);
  }

  Trajectory traj;
  const auto record = [&](double time, const Mat& state) {
    Eigen::VectorXd rec(n);
    double worst_imag = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx mean(0.0);
      for (int j = 0; j < s; ++j) mean += state(j, i);
      mean /= static_cast<double>(s);
      rec(i) = mean.real();
      worst_imag = std::max(worst_imag, std::abs(mean.imag()));
    }
    traj.times.push_back(time);
    traj.states.push_back(rec);
    traj.norms.push_back(grid_norm(rec, spatial.h));
    traj.max_imag = std::max(traj.max_imag, worst_imag);
  };

  record(0.0, u);
  const double cap = blowup_cap * std::max(traj.norms[0], 1e-300);
  for (long step = 0; step < n_steps; ++step) {
    const double t_n = step * cfg.tau;
    const Mat f = sample_forcing(t_n);
    u = st.A * u + cfg.r * (st.B_alpha * (u * k_c + f));
    record(t_n + cfg.tau, u);
    if (traj.norms.back() > cap || !std::isfinite(traj.norms.back())) {
      traj.blew_up = true;
      traj.blowup_index = step + 1;
      break;
    }
  }
  return traj;
}

L2StabilityResult l2_stability_check(const Trajectory& traj,
                                     std::span<const double> forcing_norms, double tau) {
  L2StabilityResult res;
  res.worst_margin = std::numeric_limits<double>::infinity();
  if (traj.norms.empty()) return res;
  double forcing_sum = 0.0;
  for (std::size_t n = 0; n + 1 < traj.norms.size(); ++n) {
    if (n < forcing_norms.size()) forcing_sum += forcing_norms[n];
    const double bound = traj.norms[0] + tau * forcing_sum;
    const double margin = bound - traj.norms[n + 1];
    if (margin < res.worst_margin) res.worst_margin = margin;
    if (margin < 0.0 && res.first_violation < 0) {
      res.first_violation = static_cast<long>(n) + 1;
      res.holds = false;
    }
  }
  return res;
}

}  // namespace abti
