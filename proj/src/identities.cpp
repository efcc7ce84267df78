#include "abti/identities.hpp"

#include <cmath>
#include <sstream>

#include "abti/integrator.hpp"
#include "abti/stability.hpp"

namespace abti {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

Mat lower_toeplitz(const std::vector<cplx>& column) {
  const int n = static_cast<int>(column.size());
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) m(i, j) = column[static_cast<std::size_t>(i - j)];
  }
  return m;
}

}  // namespace

Mat equivalent_matrix(int q, int s, cplx z, double alpha) {
  if (s < q) throw numerics_error("equivalent_matrix: s must be >= q");
  const auto st = build_stepper(IntegratorConfig::make(q, s, 1.0, alpha));
  Mat m = z * (st.F * st.S_alpha);
  m(0, 0) += 1.0;
  return m;
}

cplx fs_entry_closed(int j, int k, int q, int s, double alpha) {
  if (j < 1 || j > q || k < 1 || k > q) throw numerics_error("fs_entry_closed: index range");
  if (j > k + 1) return cplx(0.0);
  cplx v = binomial(k, j - 1) * std::pow(alpha, k - j + 1) / static_cast<double>(k);
  if (s == q && j == 1 && k == q) v += 1.0 / static_cast<double>(q);
  return v;
}

ToeplitzTriple toeplitz_pair(int q, cplx alpha_z, cplx lambda, double check_tol) {
  if (q < 1) throw numerics_error("toeplitz_pair: q must be >= 1");
  ToeplitzTriple t;
  for (int j = 0; j <= q; ++j) {
    t.beta.push_back(gelfand_shilov(j, -alpha_z));
    t.beta_inv.push_back(gelfand_shilov(j, alpha_z));
  }
  // eta_n = sum_{k=0}^{n-1} gamma_k((n-k) alpha z) (-lambda)^{n-k}, eta_0 = 1
  for (int n = 0; n <= q; ++n) {
    if (n == 0) {
      t.eta.push_back(cplx(1.0));
      continue;
    }
    cplx acc(0.0);
    for (int k = 0; k <= n - 1; ++k) {
      acc += gelfand_shilov(k, static_cast<double>(n - k) * alpha_z) *
             std::pow(-lambda, cplx(static_cast<double>(n - k)));
    }
    t.eta.push_back(acc);
  }

  const Mat b = lower_toeplitz(t.beta);
  const Mat b_inv = lower_toeplitz(t.beta_inv);
  const Mat id = Mat::Identity(q + 1, q + 1);
  if ((b * b_inv - id).cwiseAbs().maxCoeff() > check_tol) {
    throw numerics_error("toeplitz_pair: beta inverse identity violated");
  }

  if (lambda != cplx(0.0)) {
    std::vector<cplx> shifted_col(static_cast<std::size_t>(q) + 1);
    shifted_col[0] = cplx(1.0);
    for (int j = 1; j <= q; ++j) {
      shifted_col[static_cast<std::size_t>(j)] =
          lambda * t.beta_inv[static_cast<std::size_t>(j - 1)];
    }
    const Mat shifted = lower_toeplitz(shifted_col);
    const Mat h = lower_toeplitz(t.eta);
    if ((h * shifted - id).cwiseAbs().maxCoeff() > check_tol) {
      throw numerics_error("toeplitz_pair: eta inverse identity violated");
    }
  }
  return t;
}

std::pair<cplx, cplx> summation_identity(int q, cplx alpha_z, cplx lambda) {
  if (q < 0) throw numerics_error("summation_identity: q must be >= 0");
  cplx lhs(0.0);
  for (int j = 0; j <= q; ++j) {
    cplx inner(0.0);
    if (j == 0) {
      inner = cplx(1.0);  // empty-sum convention
    } else {
      for (int k = 0; k <= j - 1; ++k) {
        inner += gelfand_shilov(k, static_cast<double>(j - k) * alpha_z) *
                 std::pow(-lambda, cplx(static_cast<double>(j - k)));
      }
    }
    lhs += gelfand_shilov(q - j, alpha_z) * inner;
  }

  cplx rhs(0.0);
  for (int j = 0; j <= q; ++j) {
    rhs += gelfand_shilov(q - j, static_cast<double>(j + 1) * alpha_z) *
           std::pow(-lambda, cplx(static_cast<double>(j)));
  }
  return {lhs, rhs};
}

Mat hessenberg_matrix(int q, cplx z, double alpha, cplx lambda) {
  Mat m = Mat::Zero(q, q);
  for (int j = 1; j <= q; ++j) {
    for (int k = 1; k <= q; ++k) {
      if (j > k + 1) continue;
      const cplx mu = binomial(k, j - 1) * std::pow(alpha, k - j + 1) / static_cast<double>(k);
      m(j - 1, k - 1) = z * mu;
      if (j == k) m(j - 1, k - 1) -= lambda;
    }
  }
  return m;
}

namespace {

cplx closed_form_d(int n, cplx alpha_z, cplx lambda) {
  cplx acc(0.0);
  for (int j = 0; j <= n; ++j) {
    acc += gelfand_shilov(n - j, static_cast<double>(j + 1) * alpha_z) *
           std::pow(-lambda, cplx(static_cast<double>(j)));
  }
  return acc;
}

cplx closed_form_d_tilde(int n, cplx alpha_z, cplx lambda) {
  if (n == 0) return cplx(1.0);  // empty minor
  cplx acc(0.0);
  for (int j = 0; j <= n - 1; ++j) {
    acc += gelfand_shilov(n - 1 - j, static_cast<double>(j + 1) * alpha_z) *
           std::pow(-lambda, cplx(static_cast<double>(j)));
  }
  return acc;
}

}  // namespace

DeterminantSequence hessenberg_dets(int q, cplx z, double alpha, cplx lambda) {
  if (q < 1) throw numerics_error("hessenberg_dets: q must be >= 1");
  const cplx alpha_z = alpha * z;

  DeterminantSequence seq;
  // recursion: D_0 = 1, D_n = -lambda D_{n-1} - sum_{j=1}^{n} gamma_j(-alpha z) D_{n-j}
  seq.d.push_back(cplx(1.0));
  for (int n = 1; n <= q; ++n) {
    cplx acc = -lambda * seq.d[static_cast<std::size_t>(n - 1)];
    for (int j = 1; j <= n; ++j) {
      acc -= gelfand_shilov(j, -alpha_z) * seq.d[static_cast<std::size_t>(n - j)];
    }
    seq.d.push_back(acc);
  }

  double scale = 1.0;
  for (const cplx v : seq.d) scale = std::max(scale, std::abs(v));
  for (int n = 0; n <= q; ++n) {
    const cplx closed = closed_form_d(n, alpha_z, lambda);
    cplx direct = closed;
    if (n >= 1 && n <= 8) {
      direct = hessenberg_matrix(n, z, alpha, lambda).partialPivLu().determinant();
    }
    const double dev = std::max(std::abs(seq.d[static_cast<std::size_t>(n)] - closed),
                                std::abs(seq.d[static_cast<std::size_t>(n)] - direct));
    if (dev > 1e-10 * scale) {
      std::ostringstream msg;
      msg << "hessenberg_dets: three-way disagreement at n=" << n << " recursion=("
          << seq.d[static_cast<std::size_t>(n)].real() << ","
          << seq.d[static_cast<std::size_t>(n)].imag() << ") closed=(" << closed.real() << ","
          << closed.imag() << ") direct=(" << direct.real() << "," << direct.imag() << ")";
      throw numerics_error(msg.str());
    }
  }

  for (int n = 0; n <= q; ++n) seq.d_tilde.push_back(closed_form_d_tilde(n, alpha_z, lambda));
  return seq;
}

}  // namespace abti
