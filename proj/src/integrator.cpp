#include "abti/integrator.hpp"

#include <cmath>

namespace abti {

IntegratorConfig IntegratorConfig::make(int q, int s, double r, double tau) {
  if (q < 1) throw numerics_error("IntegratorConfig: q must be >= 1");
  if (s < q) throw numerics_error("IntegratorConfig: s must be >= q");
  if (!(r > 0.0)) throw numerics_error("IntegratorConfig: r must be > 0");
  if (!(tau > 0.0)) throw numerics_error("IntegratorConfig: tau must be > 0");
  IntegratorConfig cfg;
  cfg.q = q;
  cfg.s = s;
  cfg.r = r;
  cfg.tau = tau;
  cfg.alpha = tau / r;
  cfg.delta_q = (s == q) ? 1 : 0;
  return cfg;
}

namespace {

// omega^m for the s-th roots of unity, with the exponent reduced mod s first
// so every entry is one sin/cos pair away from exact. Keeping entries at
// ~1 ulp is what makes the F*1 = e1 cancellation hold at s = 64.
cplx unit_power(int s, long m) {
  long red = m % s;
  if (red < 0) red += s;
  if (red == 0) return cplx(1.0, 0.0);
  const double phi = 2.0 * M_PI * static_cast<double>(red) / static_cast<double>(s);
  return cplx(std::cos(phi), std::sin(phi));
}

Mat vandermonde_block(const Vec& nodes, int q, double alpha) {
  const auto s = nodes.size();
  Mat S(s, q);
  for (Eigen::Index j = 0; j < s; ++j) {
    const cplx base = alpha + nodes(j);
    cplx pw = 1.0;
    for (int k = 1; k <= q; ++k) {
      pw *= base;
      S(j, k - 1) = pw / static_cast<double>(k);
    }
  }
  return S;
}

}  // namespace

std::vector<cplx> roots_of_unity(int s) {
  if (s < 1) throw numerics_error("roots_of_unity: s must be >= 1");
  std::vector<cplx> w(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) w[static_cast<std::size_t>(j - 1)] = unit_power(s, j);
  return w;
}

StepperMatrices build_stepper(const IntegratorConfig& cfg) {
  StepperMatrices st;
  st.nodes = Vec(cfg.s);
  for (int j = 1; j <= cfg.s; ++j) st.nodes(j - 1) = unit_power(cfg.s, j);

  st.A = Mat::Constant(cfg.s, cfg.s, cplx(1.0 / cfg.s));
  st.S_alpha = vandermonde_block(st.nodes, cfg.q, cfg.alpha);

  st.F = Mat(cfg.q, cfg.s);
  for (int nu = 1; nu <= cfg.q; ++nu) {
    for (int k = 1; k <= cfg.s; ++k) {
      st.F(nu - 1, k - 1) =
          unit_power(cfg.s, static_cast<long>(k) * (1 - nu)) / static_cast<double>(cfg.s);
    }
  }

  st.B_alpha = st.S_alpha * st.F;
  st.B_zero = vandermonde_block(st.nodes, cfg.q, 0.0) * st.F;
  return st;
}

namespace {

Vec eval_rhs(const RhsEvaluator& rhs, const Vec& nodes, double base_time, double r,
             const Vec& u) {
  Vec f(u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    f(j) = rhs.f(base_time + r * nodes(j), u(j));
  }
  return f;
}

}  // namespace

SolutionVector init_vector(const IntegratorConfig& cfg, const StepperMatrices& st,
                           const RhsEvaluator& rhs, cplx u0, double t0, double tol,
                           int max_iter) {
  const Vec ones = Vec::Constant(cfg.s, cplx(1.0));
  SolutionVector out;
  out.time_index = 0;
  out.base_time = t0;

  if (rhs.linear) {
    // f(t,u) = a(t) u + b(t); one solve of (I - r B(0) diag(a)) u = u0*1 + r B(0) b.
    Vec a(cfg.s);
    Vec b(cfg.s);
    for (int j = 0; j < cfg.s; ++j) {
      const cplx tj = t0 + cfg.r * st.nodes(j);
      b(j) = rhs.f(tj, cplx(0.0));
      a(j) = rhs.f(tj, cplx(1.0)) - b(j);
    }
    Mat lhs = Mat::Identity(cfg.s, cfg.s) - cfg.r * st.B_zero * a.asDiagonal();
    out.values = lhs.partialPivLu().solve(u0 * ones + cfg.r * (st.B_zero * b));
    return out;
  }

  const auto residual = [&](const Vec& u) -> Vec {
    return u - u0 * ones - cfg.r * (st.B_zero * eval_rhs(rhs, st.nodes, t0, cfg.r, u));
  };
  JacobianFn jac;
  if (rhs.jacobian) {
    jac = [&](const Vec& u) -> Mat {
      Vec df(cfg.s);
      for (int j = 0; j < cfg.s; ++j) {
        df(j) = rhs.jacobian(t0 + cfg.r * st.nodes(j), u(j));
      }
      return Mat::Identity(cfg.s, cfg.s) - cfg.r * st.B_zero * df.asDiagonal();
    };
  } else {
    jac = finite_difference_jacobian(residual);
  }
  out.values = newton_solve(residual, jac, u0 * ones, tol, max_iter);
  return out;
}

SolutionVector propagate(const IntegratorConfig& cfg, const StepperMatrices& st,
                         const SolutionVector& state, const RhsEvaluator& rhs) {
  SolutionVector next;
  next.time_index = state.time_index + 1;
  next.base_time = state.base_time + cfg.tau;
  const Vec f = eval_rhs(rhs, st.nodes, state.base_time, cfg.r, state.values);
  next.values = st.A * state.values + cfg.r * (st.B_alpha * f);
  return next;
}

cplx reconstruct(const SolutionVector& state) {
  return state.values.mean();
}

cplx segment_quadrature(const IntegratorConfig& cfg, const StepperMatrices& st,
                        const Vec& samples) {
  if (samples.size() != cfg.s) {
    throw numerics_error("segment_quadrature: need one sample per node");
  }
  const Vec weighted = st.B_alpha * samples;
  return (cfg.r / static_cast<double>(cfg.s)) * weighted.sum();
}

}  // namespace abti
