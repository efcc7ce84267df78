#include "abti/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "abti/compensated.hpp"

namespace abti {

namespace {

// exact zeros only; callers pass exact coefficients
bool negligible(cplx c) { return c == cplx(0.0, 0.0); }

// Parlett-Reinsch style balancing on element magnitudes; Eigen's complex
// eigensolver does not balance and companion matrices need it badly once the
// coefficient range is wide.
void balance_in_place(Mat& a) {
  const Eigen::Index n = a.rows();
  const double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row_norm = 0.0;
      double col_norm = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col_norm += std::abs(a(j, i));
        row_norm += std::abs(a(i, j));
      }
      if (col_norm == 0.0 || row_norm == 0.0) continue;
      double f = 1.0;
      const double s = col_norm + row_norm;
      while (col_norm < row_norm / radix) {
        col_norm *= radix;
        row_norm /= radix;
        f *= radix;
      }
      while (col_norm > row_norm * radix) {
        col_norm /= radix;
        row_norm *= radix;
        f /= radix;
      }
      if ((col_norm + row_norm) < 0.95 * s && f != 1.0) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

DensePolynomial::DensePolynomial(std::vector<cplx> c) : coeffs(std::move(c)) {
  while (coeffs.size() > 1 && negligible(coeffs.back())) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(cplx(0.0));
}

bool DensePolynomial::is_zero() const {
  return coeffs.size() == 1 && negligible(coeffs[0]);
}

cplx DensePolynomial::eval(cplx x) const {
  cplx acc = coeffs.back();
  for (auto i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

double DensePolynomial::eval_real_compensated(double x) const {
  std::vector<double> re(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].imag() != 0.0) {
      throw numerics_error("eval_real_compensated: complex coefficient");
    }
    re[i] = coeffs[i].real();
  }
  return compensated::comp_horner(re, x);
}

DensePolynomial DensePolynomial::derivative() const {
  if (degree() == 0) return DensePolynomial();
  std::vector<cplx> d(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    d[i - 1] = coeffs[i] * static_cast<double>(i);
  }
  return DensePolynomial(std::move(d));
}

DensePolynomial poly_from_roots(std::span<const cplx> roots, cplx leading) {
  std::vector<cplx> c{leading};  // ascending coefficients of leading * prod (x - r)
  for (const cplx r : roots) {
    c.push_back(cplx(0.0));
    for (auto i = c.size() - 1; i >= 1; --i) c[i] = c[i - 1] - r * c[i];
    c[0] *= -r;
  }
  return DensePolynomial(std::move(c));
}

std::vector<cplx> poly_roots(const DensePolynomial& p) {
  if (p.is_zero()) throw numerics_error("zero polynomial");
  if (p.degree() < 1) throw numerics_error("poly_roots: degree must be >= 1");

  std::vector<cplx> c = p.coeffs;
  std::vector<cplx> roots;
  // exact zero roots come off first so the companion stays nonsingular
  std::size_t shift = 0;
  while (shift < c.size() - 1 && negligible(c[shift])) {
    roots.push_back(cplx(0.0));
    ++shift;
  }
  c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }

  Mat companion = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  balance_in_place(companion);

  Eigen::ComplexEigenSolver<Mat> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw numerics_error("poly_roots: eigensolver failed");
  }
  for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

std::vector<cplx> poly_roots_aberth(const DensePolynomial& p, double tol, int max_iter) {
  if (p.is_zero()) throw numerics_error("zero polynomial");
  const int n = p.degree();
  if (n < 1) throw numerics_error("poly_roots_aberth: degree must be >= 1");
  const DensePolynomial dp = p.derivative();

  // Cauchy-style radius bound, initial guesses on a slightly eccentric circle
  // to break symmetry.
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    radius = std::max(radius, std::pow(std::abs(p.coeffs[i] / p.coeffs[n]), 1.0 / (n - i)));
  }
  radius = 2.0 * std::max(radius, 1e-6);
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * M_PI * (i + 0.25) / n + 0.4;
    z[i] = radius * cplx(std::cos(phi), std::sin(phi));
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx pv = p.eval(z[i]);
      const cplx dv = dp.eval(z[i]);
      if (pv == cplx(0.0)) continue;
      const cplx newton = pv / dv;
      cplx repulse(0.0);
      for (int j = 0; j < n; ++j) {
        if (j != i && z[i] != z[j]) repulse += 1.0 / (z[i] - z[j]);
      }
      const cplx step = newton / (1.0 - newton * repulse);
      z[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < tol * std::max(1.0, radius)) return z;
  }
  throw numerics_error("poly_roots_aberth: max-iter");
}

std::vector<cplx> dense_eigvals(const Mat& m) {
  if (m.rows() != m.cols()) throw numerics_error("dense_eigvals: non-square input");
  Eigen::ComplexEigenSolver<Mat> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw numerics_error("dense_eigvals: eigensolver failed");
  }
  std::vector<cplx> ev(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return ev;
}

Vec newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, Vec x0,
                 double tol, int max_iter) {
  Vec x = std::move(x0);
  for (int iter = 0; iter < max_iter; ++iter) {
    const Vec r = residual(x);
    if (r.lpNorm<Eigen::Infinity>() <= tol) return x;
    const Mat j = jacobian(x);
    Eigen::FullPivLU<Mat> lu(j);
    if (!lu.isInvertible()) throw newton_error("singular", x);
    x -= lu.solve(r);
  }
  if (residual(x).lpNorm<Eigen::Infinity>() <= tol) return x;
  throw newton_error("max-iter", x);
}

JacobianFn finite_difference_jacobian(const ResidualFn& residual) {
  return [residual](const Vec& x) -> Mat {
    const Vec r0 = residual(x);
    Mat j(r0.size(), x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double step = 1e-7 * (1.0 + std::abs(x(k)));
      Vec xp = x;
      xp(k) += step;
      j.col(k) = (residual(xp) - r0) / step;
    }
    return j;
  };
}

cplx periodic_quadrature(const std::function<cplx(double)>& f, double tol,
                         int initial_nodes, long max_nodes) {
  long m = initial_nodes;
  cplx sum(0.0);
  for (long k = 0; k < m; ++k) sum += f(2.0 * M_PI * k / static_cast<double>(m));
  cplx estimate = sum * (2.0 * M_PI / static_cast<double>(m));

  while (m <= max_nodes / 2) {
    // keep previous nodes, add the midpoints
    const long m2 = 2 * m;
    cplx odd(0.0);
    for (long k = 0; k < m; ++k) {
      odd += f(2.0 * M_PI * (2 * k + 1) / static_cast<double>(m2));
    }
    sum += odd;
    const cplx next = sum * (2.0 * M_PI / static_cast<double>(m2));
    m = m2;
    if (std::abs(next - estimate) < tol) return next;
    estimate = next;
  }
  throw numerics_error("quadrature stagnation");
}

}  // namespace abti
