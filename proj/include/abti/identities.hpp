// Executable witnesses for the determinant/Toeplitz identities behind the
// closed-form characteristic polynomial: the q x q equivalent matrix, the
// closed-form F S(alpha) entries, the Toeplitz inverse pair, the double-sum
// identity, and the Hessenberg determinant recursion.
#pragma once

#include <utility>

#include "abti/numerics.hpp"

namespace abti {

// e1 e1^T + z F S(alpha), the q x q matrix sharing its characteristic
// polynomial (up to a lambda^{s-q} factor when s > q) with A + z S(alpha) F.
Mat equivalent_matrix(int q, int s, cplx z, double alpha);

// Closed form of <F S(alpha)>_{j,k} (1-indexed): C(k, j-1) alpha^{k-j+1} / k
// for j <= k+1 plus 1/q at (1, q) when s == q; zero below the subdiagonal.
cplx fs_entry_closed(int j, int k, int q, int s, double alpha);

// beta_j = gamma_j(-alpha z), beta_j^{(-1)} = gamma_j(alpha z), and the
// eta_j entries inverting the lambda-shifted triangular Toeplitz matrix.
// Both inverse identities are verified on construction (throws on violation).
struct ToeplitzTriple {
  std::vector<cplx> beta;
  std::vector<cplx> beta_inv;
  std::vector<cplx> eta;
};

ToeplitzTriple toeplitz_pair(int q, cplx alpha_z, cplx lambda, double check_tol = 1e-12);

// Left- and right-hand side of
//   sum_j gamma_{q-j}(az) sum_k gamma_k((j-k)az)(-lambda)^{j-k}
//     = sum_j gamma_{q-j}((j+1)az)(-lambda)^j,
// with the empty inner sum at j = 0 counting as 1.
std::pair<cplx, cplx> summation_identity(int q, cplx alpha_z, cplx lambda);

// D_0..D_q (three-way: direct LU determinant for q <= 8, recursion, closed
// form; throws with the three values on disagreement > 1e-10) and the
// shifted minors Dt_0..Dt_q.
struct DeterminantSequence {
  std::vector<cplx> d;
  std::vector<cplx> d_tilde;
};

DeterminantSequence hessenberg_dets(int q, cplx z, double alpha, cplx lambda);

// The quasi-triangular matrix whose determinant D_q expands; exposed so the
// tests can form the shifted minor independently.
Mat hessenberg_matrix(int q, cplx z, double alpha, cplx lambda);

}  // namespace abti
