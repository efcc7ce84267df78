// Shared numerical kernels: polynomial roots, dense eigenvalues, Newton
// iteration, periodic trapezoidal quadrature. Everything here is a pure
// function of its inputs and safe to call concurrently.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace abti {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

class numerics_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer power by repeated multiplication; unlike std::pow it is exact at
// zero base and stays on the multiplicative error path.
inline cplx ipow(cplx base, int exponent) {
  if (exponent < 0) return cplx(1.0) / ipow(base, -exponent);
  cplx acc(1.0);
  for (int i = 0; i < exponent; ++i) acc *= base;
  return acc;
}

// Thrown by newton_solve on non-convergence; carries the last iterate.
class newton_error : public numerics_error {
 public:
  newton_error(const std::string& what, Vec last)
      : numerics_error(what), last_iterate(std::move(last)) {}
  Vec last_iterate;
};

// Complex-coefficient polynomial, ascending degree. Trailing zero
// coefficients are trimmed on construction so coeffs.back() != 0 unless the
// polynomial is identically zero (kept as the single coefficient 0).
struct DensePolynomial {
  std::vector<cplx> coeffs;

  DensePolynomial() : coeffs{cplx(0.0)} {}
  explicit DensePolynomial(std::vector<cplx> c);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const;

  cplx eval(cplx x) const;  // Horner
  // Compensated Horner for real-coefficient polynomials at a real point;
  // throws if any coefficient has a nonzero imaginary part.
  double eval_real_compensated(double x) const;
  DensePolynomial derivative() const;
};

DensePolynomial poly_from_roots(std::span<const cplx> roots, cplx leading = 1.0);

// All roots with multiplicity. Default backend: balanced companion matrix +
// complex QR. Zero roots are split off exactly before the eigensolve.
std::vector<cplx> poly_roots(const DensePolynomial& p);

// Aberth-Ehrlich simultaneous iteration; independent of the companion path
// and used as a cross-check backend.
std::vector<cplx> poly_roots_aberth(const DensePolynomial& p, double tol = 1e-13,
                                    int max_iter = 400);

// Eigenvalues with multiplicity of a square complex matrix.
std::vector<cplx> dense_eigvals(const Mat& m);

using ResidualFn = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;

// Damped-free Newton iteration: returns x with ||residual(x)||_inf <= tol.
// Throws newton_error("singular") or newton_error("max-iter").
Vec newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, Vec x0,
                 double tol, int max_iter);

// Builds a forward-difference Jacobian from a residual (step 1e-7*(1+|x_j|)).
JacobianFn finite_difference_jacobian(const ResidualFn& residual);

// Composite trapezoid on [0, 2pi), doubling the node count until two
// successive estimates differ by less than tol. Spectrally accurate for
// analytic integrands. Throws numerics_error("quadrature stagnation") at the
// node cap.
cplx periodic_quadrature(const std::function<cplx(double)>& f, double tol,
                         int initial_nodes = 64, long max_nodes = 1L << 20);

}  // namespace abti
