#pragma once

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms) for
// test oracles that need ~32 significant digits.  Not used by the library.

#include <cmath>

namespace oracle {

struct dd {
  double hi = 0.0, lo = 0.0;
  dd() = default;
  dd(double h) : hi(h), lo(0.0) {}
  dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

inline dd operator+(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  dd r = two_sum(s.hi, lo);
  return r;
}

inline dd operator-(dd a, dd b) { return a + dd{-b.hi, -b.lo}; }

inline dd operator*(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * dd{q1};
  double q2 = r.hi / b.hi;
  r = r - b * dd{q2};
  double q3 = r.hi / b.hi;
  dd q = two_sum(q1, q2);
  return q + dd{q3};
}

inline double to_double(dd a) { return a.hi + a.lo; }

// I0(x) - L0(x) by the interleaved difference series in double-double;
// trustworthy to ~1e-18 absolute for x <= 30.
inline double i0_minus_l0_series(double x) {
  const double pi_d = 3.14159265358979323846;
  dd q = two_prod(0.5 * x, 0.5 * x);
  dd even{1.0};
  dd odd = dd{2.0 * x} / dd{pi_d, 1.2246467991473532e-16};  // 2x / pi
  dd sum = even - odd;
  for (int k = 0; k < 200; ++k) {
    even = even * q / dd{double(k + 1)} / dd{double(k + 1)};
    odd = odd * q / dd{double(k) + 1.5} / dd{double(k) + 1.5};
    sum = sum + even - odd;
    if (std::fabs(to_double(even)) + std::fabs(to_double(odd)) <
        1e-34 * std::max(1.0, std::fabs(to_double(sum))))
      break;
  }
  return to_double(sum);
}

// e^{-x} I0(x): the series is all-positive, so double-double is overkill but
// keeps the oracle uniform.
inline double i0_scaled_series(double x) {
  dd q = two_prod(0.5 * x, 0.5 * x);
  dd term{1.0}, sum{1.0};
  for (int k = 1; k < 300; ++k) {
    term = term * q / dd{double(k)} / dd{double(k)};
    sum = sum + term;
    if (to_double(term) < 1e-30 * to_double(sum)) break;
  }
  return std::exp(-x) * to_double(sum);
}

}  // namespace oracle
