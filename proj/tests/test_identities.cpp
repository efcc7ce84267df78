#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "abti/identities.hpp"
#include "abti/experiments.hpp"
#include "abti/integrator.hpp"
#include "abti/stability.hpp"

using namespace abti;

namespace {

DensePolynomial monic_from_eigvals(const Mat& m) {
  auto ev = dense_eigvals(m);
  return poly_from_roots(ev);
}

}  // namespace

TEST_CASE("equivalent_matrix: z = 0 is the rank-1 projector") {
  const Mat m = equivalent_matrix(3, 3, cplx(0.0), 1.0);
  auto ev = dense_eigvals(m);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  CHECK(std::abs(ev[0] - cplx(1.0)) < 1e-13);
  CHECK(std::abs(ev[1]) < 1e-13);
  CHECK(std::abs(ev[2]) < 1e-13);
}

TEST_CASE("equivalent_matrix: identical characteristic coefficients when s = q") {
  SeededUniform rng(2024);
  for (int q : {2, 3, 4}) {
    const cplx z = rng.next_in_disk();
    const double alpha = 0.7 + rng.next();
    const auto st = build_stepper(IntegratorConfig::make(q, q, 1.0, alpha));
    const Mat big = st.A + z * (st.S_alpha * st.F);
    const auto p_big = monic_from_eigvals(big);
    const auto p_small = monic_from_eigvals(equivalent_matrix(q, q, z, alpha));
    REQUIRE(p_big.degree() == p_small.degree());
    for (int i = 0; i <= p_big.degree(); ++i) {
      CHECK(std::abs(p_big.coeffs[static_cast<std::size_t>(i)] -
                     p_small.coeffs[static_cast<std::size_t>(i)]) < 1e-10);
    }
  }
}

TEST_CASE("equivalent_matrix: s = q + 1 leaves one surplus zero eigenvalue") {
  SeededUniform rng(11);
  for (int q : {2, 3}) {
    const cplx z = rng.next_in_disk();
    const auto st = build_stepper(IntegratorConfig::make(q, q + 1, 1.0, 1.0));
    const Mat big = st.A + z * (st.S_alpha * st.F);
    auto ev_big = dense_eigvals(big);
    auto ev_small = dense_eigvals(equivalent_matrix(q, q + 1, z, 1.0));
    std::sort(ev_big.begin(), ev_big.end(),
              [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    std::sort(ev_small.begin(), ev_small.end(),
              [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    for (int i = 0; i < q; ++i) {
      CHECK(std::abs(ev_big[static_cast<std::size_t>(i)] -
                     ev_small[static_cast<std::size_t>(i)]) < 1e-10);
    }
    CHECK(std::abs(ev_big.back()) < 1e-10);
  }
}

TEST_CASE("fs_entry_closed: subdiagonal, zero fill, and the s = q corner term") {
  for (int k = 1; k <= 5; ++k) {
    CHECK(std::abs(fs_entry_closed(k + 1, k, 6, 7, 0.8) - cplx(1.0 / k)) < 1e-15);
  }
  CHECK(fs_entry_closed(4, 2, 5, 6, 1.0) == cplx(0.0));
  CHECK(fs_entry_closed(5, 2, 5, 5, 1.0) == cplx(0.0));

  // (1, q) corner: + 1/q only when s = q
  const cplx with_term = fs_entry_closed(1, 3, 3, 3, 1.0);
  const cplx without = fs_entry_closed(1, 3, 3, 4, 1.0);
  CHECK(std::abs(with_term - without - cplx(1.0 / 3.0)) < 1e-15);
}

TEST_CASE("fs_entry_closed equals the direct product for both s readings") {
  for (int q : {3, 4}) {
    for (int s : {q, q + 1}) {
      const double alpha = 1.3;
      const auto st = build_stepper(IntegratorConfig::make(q, s, 1.0, alpha));
      const Mat fs = st.F * st.S_alpha;
      for (int j = 1; j <= q; ++j) {
        for (int k = 1; k <= q; ++k) {
          CHECK(std::abs(fs(j - 1, k - 1) - fs_entry_closed(j, k, q, s, alpha)) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("toeplitz_pair: zero argument degenerates to unit columns") {
  const auto t = toeplitz_pair(3, cplx(0.0), cplx(0.7));
  CHECK(t.beta[0] == cplx(1.0));
  CHECK(t.beta_inv[0] == cplx(1.0));
  for (int j = 1; j <= 3; ++j) {
    CHECK(std::abs(t.beta[static_cast<std::size_t>(j)]) < 1e-15);
    CHECK(std::abs(t.beta_inv[static_cast<std::size_t>(j)]) < 1e-15);
  }
}

TEST_CASE("toeplitz_pair: q = 4 identities verified on construction") {
  // construction throws if either product misses the identity by > 1e-13
  CHECK_NOTHROW(toeplitz_pair(4, cplx(0.3, 0.2), cplx(0.7), 1e-13));
  CHECK_NOTHROW(toeplitz_pair(4, cplx(0.3, 0.2), cplx(0.7), 1e-12));
  // an impossible tolerance exercises the violation path
  CHECK_THROWS_AS(toeplitz_pair(8, cplx(0.9, 0.8), cplx(1.3), 1e-19), numerics_error);
}

TEST_CASE("summation_identity: conventions and hand checks") {
  const auto [lhs0, rhs0] = summation_identity(0, cplx(0.8, -0.2), cplx(0.5));
  CHECK(std::abs(lhs0 - cplx(1.0)) < 1e-15);
  CHECK(std::abs(rhs0 - cplx(1.0)) < 1e-15);

  // q = 1, alpha z = 1, lambda = 1: both sides are 1 - lambda + ... = alpha z - lambda
  const auto [lhs1, rhs1] = summation_identity(1, cplx(1.0), cplx(1.0));
  CHECK(std::abs(lhs1 - cplx(0.0)) < 1e-15);
  CHECK(std::abs(lhs1 - rhs1) < 1e-15);
}

TEST_CASE("summation_identity: random draws against the brute-force double sum") {
  SeededUniform rng(555);
  for (int draw = 0; draw < 50; ++draw) {
    const int q = static_cast<int>(rng.next() * 8.999);  // 0..8
    const cplx az = rng.next_in_disk();
    const cplx lambda = rng.next_in_disk();
    const auto [lhs, rhs] = summation_identity(q, az, lambda);

    // independent brute force of the left side
    cplx brute(0.0);
    for (int j = 0; j <= q; ++j) {
      cplx inner = (j == 0) ? cplx(1.0) : cplx(0.0);
      for (int k = 0; k <= j - 1; ++k) {
        cplx g(1.0);
        for (int i = 1; i <= k; ++i) g = g * (static_cast<double>(j - k) * az) / static_cast<double>(i);
        inner += g * std::pow(-lambda, cplx(static_cast<double>(j - k)));
      }
      cplx outer(1.0);
      for (int i = 1; i <= q - j; ++i) outer = outer * az / static_cast<double>(i);
      brute += outer * inner;
    }
    CHECK(std::abs(lhs - brute) < 1e-13);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("hessenberg_dets: q = 1 by hand and D_0 convention") {
  const cplx z(0.4, -0.1);
  const double alpha = 1.2;
  const cplx lambda(0.6, 0.3);
  const auto seq = hessenberg_dets(1, z, alpha, lambda);
  CHECK(seq.d[0] == cplx(1.0));
  CHECK(std::abs(seq.d[1] - (alpha * z - lambda)) < 1e-14);
  CHECK(seq.d_tilde[1] == cplx(1.0));
}

TEST_CASE("hessenberg_dets: three-way agreement enforced on random draws") {
  SeededUniform rng(808);
  for (int draw = 0; draw < 20; ++draw) {
    const int q = 1 + static_cast<int>(rng.next() * 5.999);
    const cplx z = rng.next_in_disk();
    const cplx lambda = rng.next_in_disk();
    const double alpha = 0.5 + rng.next();
    CHECK_NOTHROW(hessenberg_dets(q, z, alpha, lambda));
  }
}

TEST_CASE("hessenberg_dets: shifted minors match their closed form") {
  SeededUniform rng(4545);
  for (int q : {2, 3, 4, 5}) {
    const cplx z = rng.next_in_disk();
    const cplx lambda = rng.next_in_disk();
    const double alpha = 0.8 + rng.next();
    const auto seq = hessenberg_dets(q, z, alpha, lambda);
    const Mat full = hessenberg_matrix(q, z, alpha, lambda);
    const Mat minor = full.block(1, 1, q - 1, q - 1);
    const cplx direct = (q == 1) ? cplx(1.0) : cplx(minor.partialPivLu().determinant());
    CHECK(std::abs(direct - seq.d_tilde[static_cast<std::size_t>(q)]) < 1e-11);
  }
}

TEST_CASE("assembled determinant expansion reproduces the characteristic polynomial") {
  SeededUniform rng(99);
  for (int q = 1; q <= 6; ++q) {
    for (const int dq : {0, 1}) {
      const cplx z = rng.next_in_disk();
      const cplx lambda = rng.next_in_disk();
      const double alpha = 0.6 + rng.next();
      const auto seq = hessenberg_dets(q, z, alpha, lambda);
      cplx assembled =
          seq.d[static_cast<std::size_t>(q)] + seq.d_tilde[static_cast<std::size_t>(q)];
      if (dq != 0) assembled -= gelfand_shilov(q, -z);
      const cplx direct = char_poly(q, alpha * z, alpha, dq).eval(lambda);
      CHECK(std::abs(assembled - direct) < 1e-10);
    }
  }
}
