// Linear stability apparatus for the block integrator: closed-form
// characteristic polynomial, stability regions, root-locus curves, parabolic
// radii, the generating function and its Fourier-coefficient discriminant,
// and the maximum permissible order for a prescribed parabolic radius.
#pragma once

#include <optional>

#include "abti/integrator.hpp"
#include "abti/numerics.hpp"

namespace abti {

struct CharPolySpec {
  int q = 1;
  double alpha = 1.0;
  int delta_q = 0;
  cplx z;
};

// gamma_n(z) = z^n / n!. Real arguments with n > 20 run through the
// double-double product to keep the alternating sums downstream honest.
cplx gelfand_shilov(int n, cplx z);

// Degree-q polynomial in lambda whose roots are the nonzero spectrum of the
// amplification matrix at Dahlquist parameter z:
//   sum_j [g_{q-j}((j+1)z) + g_{q-1-j}((j+1)z)] (-lambda)^j - g_q(-z/alpha) delta_q.
DensePolynomial char_poly(int q, cplx z, double alpha, int delta_q);

// Polynomial in zeta (= -e^{-i theta} z) with the same zero moduli as the
// root-locus polynomial at angle theta.
DensePolynomial variant_poly(int q, double theta, int delta_q, double alpha = 1.0);

// Spectral radius of R(z) = A + z B(alpha)/alpha, computed twice: from the
// closed-form polynomial (fast path) and from the matrix spectrum (reference
// path). Throws "polynomial/matrix mismatch" if the two disagree beyond 1e-6.
double stability_indicator(cplx z, const IntegratorConfig& cfg);

struct StabilityGrid {
  std::vector<double> re;   // axis samples
  std::vector<double> im;
  std::vector<double> rho;  // row-major, rho[i*re.size() + j] at (im[i], re[j])
  IntegratorConfig cfg;

  double at(std::size_t i_im, std::size_t j_re) const { return rho[i_im * re.size() + j_re]; }
};

StabilityGrid stability_region(const IntegratorConfig& cfg, double re_min, double re_max,
                               double im_min, double im_max, int n_re, int n_im);

// For each theta, the q zeros in z of p_q(e^{i theta}; z). Branches are
// ordered by nearest-neighbour continuation in theta, ties by modulus.
struct RootLocusCurve {
  std::vector<double> thetas;                 // in [-pi, pi)
  std::vector<std::vector<cplx>> branches;    // branches[b][i] = z_b(theta_i)
};

RootLocusCurve root_locus(int q, double alpha, int delta_q, int n_theta);

struct ParabolicRadiusResult {
  int n = 0;            // order of approximation
  double radius = 0.0;  // smallest zero modulus
  std::vector<double> zeros;  // all (real) zeros, sorted ascending
  int delta_q = 0;
};

// Parabolic radius for order-n accuracy. delta_q = 0 reads the zeros of the
// variant polynomial of order n; delta_q = 1 uses order n+1 with its
// order-loss term (the s = q configuration needs one extra expansion term
// for the same accuracy). Throws "realness violated" if a zero leaves the
// real axis beyond 1e-8.
ParabolicRadiusResult parabolic_radius(int n, int delta_q);

// Radius of the (q, s) scheme itself (polynomial order q, the scheme's own
// delta); this is what CFL bounds consume.
double scheme_parabolic_radius(int q, int delta_q);

// Generating-function value P(t; zeta) = (1+t)/(e^{-zeta t} - t) - e^{-zeta t} delta_q.
// Throws "pole" when the denominator vanishes.
cplx generating_eval(cplx t, cplx zeta, int delta_q);

// (1/2pi) integral of P(e^{i phi}; zeta) e^{-i N phi} d phi via periodic
// quadrature on the unit circle; cross-checked against poly_value_direct
// (they are equal by the residue theorem) and throws on mismatch > 100*tol.
double fourier_discriminant(int N, double zeta, int delta_q, double tol = 1e-12);

// ptilde_N(zeta) evaluated term by term from the Gelfand-Shilov sums in
// double-double arithmetic. The workhorse of the max-order search.
double poly_value_direct(int N, double zeta, int delta_q, double alpha = 1.0);

// Largest N such that ptilde_n stays certifiably positive (above the floor
// `tol`) on a refinement-checked Chebyshev grid of (-radius, 0] for every
// n <= N. The floor matters: the true interval minima decay geometrically
// with n and certification below ~1e-12 is what fixes the published table.
int max_permissible_order(double radius, int delta_q, double tol = 2e-12, int n_cap = 60);

}  // namespace abti
