// Block time stepper on roots-of-unity contour nodes: stepper matrices,
// implicit initialization, explicit propagation, mean reconstruction.
#pragma once

#include <functional>
#include <optional>

#include "abti/numerics.hpp"

namespace abti {

// The (q, s, r, tau) tuple plus derived alpha = tau/r and the selector
// delta_q (1 iff s == q).
struct IntegratorConfig {
  int q = 1;          // expansion order
  int s = 1;          // contour node count, s >= q
  double r = 1.0;     // contour radius
  double tau = 1.0;   // time step
  double alpha = 1.0; // tau / r, stored exactly as computed
  int delta_q = 0;

  static IntegratorConfig make(int q, int s, double r, double tau);
};

// Dense matrices for one configuration. A is the s x s averaging matrix,
// S(alpha) the generalized Vandermonde block with sigma_{j,k} =
// (alpha+omega_j)^k / k, F the 1/s-scaled Fourier sampling block with rows
// omega_k^{1-nu}, and B(alpha) = S(alpha) F. Immutable after construction.
struct StepperMatrices {
  Mat A;
  Mat S_alpha;  // s x q
  Mat F;        // q x s
  Mat B_alpha;  // s x s
  Mat B_zero;   // S(0) F, used by the initialization step
  Vec nodes;    // the s roots of unity, omega_j = exp(i 2 pi j / s), j = 1..s
};

// values[j] approximates the solution at base_time + r*omega_{j+1}.
struct SolutionVector {
  Vec values;
  int time_index = 0;
  double base_time = 0.0;
};

// Scalar right-hand side f(t, u) on the complex time disk around each real
// node. jacobian (df/du) is optional; absent means forward differences.
// Set linear when f(t, u) = a(t) u + b(t); the initializer then uses a single
// linear solve instead of Newton.
struct RhsEvaluator {
  std::function<cplx(cplx, cplx)> f;
  std::function<cplx(cplx, cplx)> jacobian;
  bool linear = false;
};

// omega_j = exp(i 2 pi j / s) for j = 1..s (so the last node is 1).
std::vector<cplx> roots_of_unity(int s);

StepperMatrices build_stepper(const IntegratorConfig& cfg);

// Solves u = u0*1 + r B(0) f(t0 nodes, u) for the initial solution vector.
SolutionVector init_vector(const IntegratorConfig& cfg, const StepperMatrices& st,
                           const RhsEvaluator& rhs, cplx u0, double t0 = 0.0,
                           double tol = 1e-13, int max_iter = 50);

// One explicit step: u^{n+1} = A u^n + r B(alpha) f(t^n nodes, u^n).
SolutionVector propagate(const IntegratorConfig& cfg, const StepperMatrices& st,
                         const SolutionVector& state, const RhsEvaluator& rhs);

// Arithmetic mean of the components; complex on purpose (the imaginary part
// is the conjugate-symmetry diagnostic, callers decide what to drop).
cplx reconstruct(const SolutionVector& state);

// (r/s) 1^T B(alpha) samples: the quadrature the mean of the propagator
// applies to one step's integral of f.
cplx segment_quadrature(const IntegratorConfig& cfg, const StepperMatrices& st,
                        const Vec& samples);

}  // namespace abti
