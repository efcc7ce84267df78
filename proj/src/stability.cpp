#include "abti/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abti/compensated.hpp"

namespace abti {

namespace {

using compensated::dd;

// z^n/n! as a plain-double product; stable because the partial products are
// z^k/k! themselves (no separate overflow of z^n or n!).
cplx gamma_product(int n, cplx z) {
  cplx p(1.0);
  for (int k = 1; k <= n; ++k) p = p * z / static_cast<double>(k);
  return p;
}

double gamma_product_dd(int n, double x) {
  return compensated::gamma_dd(n, dd(x)).to_double();
}

}  // namespace

cplx gelfand_shilov(int n, cplx z) {
  if (n < 0) throw numerics_error("gelfand_shilov: n must be >= 0");
  if (n > 20 && z.imag() == 0.0) {
    return cplx(gamma_product_dd(n, z.real()), 0.0);
  }
  return gamma_product(n, z);
}

DensePolynomial char_poly(int q, cplx z, double alpha, int delta_q) {
  if (q < 1) throw numerics_error("char_poly: q must be >= 1");
  std::vector<cplx> c(static_cast<std::size_t>(q) + 1);
  double sign = 1.0;
  for (int j = 0; j <= q; ++j) {
    cplx v = gelfand_shilov(q - j, static_cast<double>(j + 1) * z);
    if (j <= q - 1) v += gelfand_shilov(q - 1 - j, static_cast<double>(j + 1) * z);
    c[static_cast<std::size_t>(j)] = sign * v;
    sign = -sign;
  }
  if (delta_q != 0) c[0] -= gelfand_shilov(q, -z / alpha);
  return DensePolynomial(std::move(c));
}

DensePolynomial variant_poly(int q, double theta, int delta_q, double alpha) {
  if (q < 1) throw numerics_error("variant_poly: q must be >= 1");
  // -e^{-i theta}; pinned to the exact real values at the two angles where
  // the zeros are real, so those coefficients carry no phase dust.
  cplx factor;
  if (theta == M_PI || theta == -M_PI) {
    factor = cplx(1.0, 0.0);
  } else if (theta == 0.0) {
    factor = cplx(-1.0, 0.0);
  } else {
    factor = -std::exp(cplx(0.0, -theta));
  }
  std::vector<cplx> c(static_cast<std::size_t>(q) + 1);
  for (int m = 0; m <= q; ++m) {
    cplx v = gelfand_shilov(m, cplx(static_cast<double>(q - m + 1)));
    if (m <= q - 1) {
      v += factor * gelfand_shilov(m, cplx(static_cast<double>(q - m)));
    }
    c[static_cast<std::size_t>(m)] = v;
  }
  if (delta_q != 0) {
    c[static_cast<std::size_t>(q)] -= gelfand_shilov(q, cplx(-1.0 / alpha));
  }
  return DensePolynomial(std::move(c));
}

namespace {

double max_root_modulus(const DensePolynomial& p) {
  double rho = 0.0;
  for (const cplx r : poly_roots(p)) rho = std::max(rho, std::abs(r));
  return rho;
}

}  // namespace

double stability_indicator(cplx z, const IntegratorConfig& cfg) {
  const DensePolynomial p = char_poly(cfg.q, z, cfg.alpha, cfg.delta_q);
  const double rho_poly = max_root_modulus(p);

  const StepperMatrices st = build_stepper(cfg);
  const Mat r_matrix = st.A + (z / cfg.alpha) * st.B_alpha;
  double rho_mat = 0.0;
  for (const cplx ev : dense_eigvals(r_matrix)) rho_mat = std::max(rho_mat, std::abs(ev));

  // The matrix has s - q surplus eigenvalues at the origin; they never
  // change the spectral radius, so the two paths must agree outright.
  if (std::abs(rho_poly - rho_mat) > 1e-6) {
    throw numerics_error("polynomial/matrix mismatch");
  }
  return rho_poly;
}

StabilityGrid stability_region(const IntegratorConfig& cfg, double re_min, double re_max,
                               double im_min, double im_max, int n_re, int n_im) {
  if (n_re < 2 || n_im < 2) throw numerics_error("stability_region: resolution must be >= 2");
  StabilityGrid grid;
  grid.cfg = cfg;
  grid.re.resize(static_cast<std::size_t>(n_re));
  grid.im.resize(static_cast<std::size_t>(n_im));
  for (int j = 0; j < n_re; ++j) {
    grid.re[static_cast<std::size_t>(j)] = re_min + (re_max - re_min) * j / (n_re - 1);
  }
  for (int i = 0; i < n_im; ++i) {
    grid.im[static_cast<std::size_t>(i)] = im_min + (im_max - im_min) * i / (n_im - 1);
  }
  grid.rho.resize(static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im));
  for (int i = 0; i < n_im; ++i) {
    for (int j = 0; j < n_re; ++j) {
      const cplx z(grid.re[static_cast<std::size_t>(j)], grid.im[static_cast<std::size_t>(i)]);
      grid.rho[static_cast<std::size_t>(i) * grid.re.size() + static_cast<std::size_t>(j)] =
          max_root_modulus(char_poly(cfg.q, z, cfg.alpha, cfg.delta_q));
    }
  }
  return grid;
}

namespace {

// Polynomial in z obtained from the characteristic polynomial by fixing
// lambda = e^{i theta}.
DensePolynomial locus_poly(int q, double theta, int delta_q, double alpha) {
  const cplx neg_lambda = -std::exp(cplx(0.0, theta));
  std::vector<cplx> c(static_cast<std::size_t>(q) + 1);
  for (int m = 0; m <= q; ++m) {
    // first sum contributes (q-m+1)^m/m! * (-lambda)^{q-m}
    cplx v = gelfand_shilov(m, cplx(static_cast<double>(q - m + 1))) *
             std::pow(neg_lambda, cplx(static_cast<double>(q - m)));
    if (m <= q - 1) {
      v += gelfand_shilov(m, cplx(static_cast<double>(q - m))) *
           std::pow(neg_lambda, cplx(static_cast<double>(q - 1 - m)));
    }
    c[static_cast<std::size_t>(m)] = v;
  }
  if (delta_q != 0) {
    c[static_cast<std::size_t>(q)] -= gelfand_shilov(q, cplx(-1.0 / alpha));
  }
  return DensePolynomial(std::move(c));
}

}  // namespace

RootLocusCurve root_locus(int q, double alpha, int delta_q, int n_theta) {
  if (n_theta < 8) throw numerics_error("root_locus: n_theta must be >= 8");
  RootLocusCurve curve;
  curve.thetas.resize(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    curve.thetas[static_cast<std::size_t>(i)] = -M_PI + 2.0 * M_PI * i / n_theta;
  }

  std::vector<std::vector<cplx>> per_theta(curve.thetas.size());
  std::size_t n_branches = 0;
  for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
    per_theta[i] = poly_roots(locus_poly(q, curve.thetas[i], delta_q, alpha));
    n_branches = std::max(n_branches, per_theta[i].size());
  }

  curve.branches.assign(n_branches, std::vector<cplx>(curve.thetas.size()));
  // first angle: order by modulus (the paper's ordering of the quasi-circles)
  std::sort(per_theta[0].begin(), per_theta[0].end(),
            [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  for (std::size_t b = 0; b < per_theta[0].size(); ++b) curve.branches[b][0] = per_theta[0][b];

  for (std::size_t i = 1; i < curve.thetas.size(); ++i) {
    auto& roots = per_theta[i];
    // delta-term degree drops can shorten a column; pad by repeating the
    // nearest value so branch rows stay rectangular
    while (roots.size() < n_branches) roots.push_back(roots.back());
    std::vector<bool> used(roots.size(), false);
    for (std::size_t b = 0; b < n_branches; ++b) {
      const cplx prev = curve.branches[b][i - 1];
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < roots.size(); ++k) {
        if (used[k]) continue;
        const double d = std::abs(roots[k] - prev);
        if (d < best_d || (d == best_d && std::abs(roots[k]) < std::abs(roots[best]))) {
          best_d = d;
          best = k;
        }
      }
      used[best] = true;
      curve.branches[b][i] = roots[best];
    }
  }
  return curve;
}

namespace {

ParabolicRadiusResult radius_from_poly(const DensePolynomial& p, int n, int delta_q) {
  ParabolicRadiusResult res;
  res.n = n;
  res.delta_q = delta_q;
  const auto roots = poly_roots(p);
  double scale = 0.0;
  for (const cplx r : roots) scale = std::max(scale, std::abs(r));
  for (const cplx r : roots) {
    if (std::abs(r.imag()) > 1e-8 * std::max(1.0, scale)) {
      throw numerics_error("realness violated");
    }
    res.zeros.push_back(r.real());
  }
  std::sort(res.zeros.begin(), res.zeros.end());
  for (std::size_t i = 1; i < res.zeros.size(); ++i) {
    if (std::abs(res.zeros[i] - res.zeros[i - 1]) < 1e-6) {
      throw numerics_error("zeros not distinct");
    }
  }
  res.radius = std::numeric_limits<double>::infinity();
  for (const double zr : res.zeros) res.radius = std::min(res.radius, std::abs(zr));
  return res;
}

}  // namespace

ParabolicRadiusResult parabolic_radius(int n, int delta_q) {
  if (n < 1) throw numerics_error("parabolic_radius: n must be >= 1");
  const int poly_order = (delta_q == 0) ? n : n + 1;
  return radius_from_poly(variant_poly(poly_order, M_PI, delta_q), n, delta_q);
}

double scheme_parabolic_radius(int q, int delta_q) {
  return radius_from_poly(variant_poly(q, M_PI, delta_q), q, delta_q).radius;
}

cplx generating_eval(cplx t, cplx zeta, int delta_q) {
  const cplx e = std::exp(-zeta * t);
  const cplx denom = e - t;
  if (std::abs(denom) < 1e-14) throw numerics_error("pole");
  cplx v = (1.0 + t) / denom;
  if (delta_q != 0) v -= e;
  return v;
}

double fourier_discriminant(int N, double zeta, int delta_q, double tol) {
  if (N < 1) throw numerics_error("fourier_discriminant: N must be >= 1");
  const auto integrand = [&](double phi) -> cplx {
    const cplx t = std::exp(cplx(0.0, phi));
    return generating_eval(t, cplx(zeta), delta_q) * std::exp(cplx(0.0, -N * phi));
  };
  const cplx integral = periodic_quadrature(integrand, tol);
  const double value = (integral / (2.0 * M_PI)).real();
  const double direct = poly_value_direct(N, zeta, delta_q);
  if (std::abs(value - direct) > 100.0 * tol) {
    throw numerics_error("fourier_discriminant: cross-check mismatch");
  }
  return value;
}

double poly_value_direct(int N, double zeta, int delta_q, double alpha) {
  if (N < 0) throw numerics_error("poly_value_direct: N must be >= 0");
  if (N > 64) throw numerics_error("poly_value_direct: beyond compensated envelope");
  dd sum(0.0);
  // the arguments (j+1)*zeta are formed inside the double-double type; a
  // plain-double product here would put ~k*eps back on every gamma term and
  // break the sign decisions near the interval end
  for (int j = 0; j <= N; ++j) {
    const dd arg = compensated::mul(dd(zeta), static_cast<double>(j + 1));
    sum = compensated::add(sum, compensated::gamma_dd(N - j, arg));
  }
  for (int j = 0; j <= N - 1; ++j) {
    const dd arg = compensated::mul(dd(zeta), static_cast<double>(j + 1));
    sum = compensated::add(sum, compensated::gamma_dd(N - 1 - j, arg));
  }
  if (delta_q != 0) {
    const dd arg = compensated::div(dd(-zeta), alpha);
    sum = compensated::add(sum, compensated::neg(compensated::gamma_dd(N, arg)));
  }
  return sum.to_double();
}

namespace {

struct GridScan {
  double min_value;
  double min_location;
};

GridScan scan_interval(int n, double radius, int delta_q, int grid_size) {
  GridScan scan{std::numeric_limits<double>::infinity(), 0.0};
  for (int k = 0; k < grid_size; ++k) {
    // Chebyshev points, open at both ends of (-radius, 0]
    const double x =
        -radius * 0.5 * (1.0 - std::cos(M_PI * (k + 0.5) / static_cast<double>(grid_size)));
    const double v = poly_value_direct(n, x, delta_q);
    if (v < scan.min_value) {
      scan.min_value = v;
      scan.min_location = x;
    }
  }
  return scan;
}

int max_order_once(double radius, int delta_q, double floor, int n_cap, int grid_size,
                   double* first_fail_location) {
  *first_fail_location = 0.0;
  for (int n = 1; n <= n_cap; ++n) {
    const GridScan scan = scan_interval(n, radius, delta_q, grid_size);
    if (!(scan.min_value > floor)) {
      *first_fail_location = scan.min_location;
      return n - 1;
    }
  }
  return n_cap;
}

}  // namespace

int max_permissible_order(double radius, int delta_q, double tol, int n_cap) {
  if (!(radius > 0.0 && radius < 2.0)) {
    throw numerics_error("max_permissible_order: radius must be in (0, 2)");
  }
  int grid_size = 256;
  double loc = 0.0;
  int result = max_order_once(radius, delta_q, tol, n_cap, grid_size, &loc);
  while (grid_size <= 8192) {
    grid_size *= 2;
    double loc2 = 0.0;
    const int next = max_order_once(radius, delta_q, tol, n_cap, grid_size, &loc2);
    const bool location_stable = std::abs(loc2 - loc) <= 1e-3 * radius;
    if (next == result && location_stable) return result;
    result = next;
    loc = loc2;
  }
  return result;
}

}  // namespace abti
