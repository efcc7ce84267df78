// Error-free transformations and compensated (double-double) arithmetic.
//
// The alternating Gelfand-Shilov sums evaluated by the stability module
// cancel down to ~1e-12 near the end of the parabolic interval while the
// individual terms reach ~1e4, so both the terms and their sum are carried
// in an unevaluated hi+lo pair (~31 significant digits).
#pragma once

#include <cmath>
#include <span>

namespace abti::compensated {

struct two_fold {
  double value;
  double error;
};

// Knuth two-sum: value + error == a + b exactly.
inline two_fold two_sum(double a, double b) {
  const double s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  return {s, (a - av) + (b - bv)};
}

// Requires |a| >= |b|.
inline two_fold fast_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

// FMA-based two-product: value + error == a * b exactly.
inline two_fold two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Minimal double-double value type. Not a general library: only the
// operations the polynomial paths need, all branch-free and allocation-free.
struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

inline dd renorm(double hi, double lo) {
  const two_fold s = fast_two_sum(hi, lo);
  return {s.value, s.error};
}

inline dd add(dd a, dd b) {
  two_fold s = two_sum(a.hi, b.hi);
  const two_fold t = two_sum(a.lo, b.lo);
  double lo = s.error + t.value;
  const two_fold r = fast_two_sum(s.value, lo);
  lo = r.error + t.error;
  return renorm(r.value, lo);
}

inline dd add(dd a, double b) {
  const two_fold s = two_sum(a.hi, b);
  return renorm(s.value, s.error + a.lo);
}

inline dd mul(dd a, dd b) {
  const two_fold p = two_prod(a.hi, b.hi);
  const double lo = p.error + a.hi * b.lo + a.lo * b.hi;
  return renorm(p.value, lo);
}

inline dd mul(dd a, double b) {
  const two_fold p = two_prod(a.hi, b);
  return renorm(p.value, p.error + a.lo * b);
}

inline dd div(dd a, double b) {
  const double q1 = a.hi / b;
  const two_fold p = two_prod(q1, b);
  const double r = ((a.hi - p.value) - p.error) + a.lo;
  return renorm(q1, r / b);
}

inline dd neg(dd a) { return {-a.hi, -a.lo}; }

// x^n / n! carried entirely in double-double.
inline dd gamma_dd(int n, dd x) {
  dd p{1.0};
  for (int k = 1; k <= n; ++k) {
    p = div(mul(p, x), static_cast<double>(k));
  }
  return p;
}

// Neumaier variant of Kahan summation.
inline double neumaier_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

// Compensated Horner evaluation of a real-coefficient polynomial
// (ascending coefficients). Result is as accurate as a Horner loop run in
// twice the working precision.
inline double comp_horner(std::span<const double> coeffs_ascending, double x) {
  if (coeffs_ascending.empty()) return 0.0;
  const auto n = coeffs_ascending.size();
  double s = coeffs_ascending[n - 1];
  double e = 0.0;
  for (auto i = n - 1; i-- > 0;) {
    const two_fold p = two_prod(s, x);
    const two_fold q = two_sum(p.value, coeffs_ascending[i]);
    s = q.value;
    e = e * x + (p.error + q.error);
  }
  return s + e;
}

}  // namespace abti::compensated
