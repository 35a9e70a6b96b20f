#pragma once

// Confluent hypergeometric 1F1(a, i k + b0, -i k x) for real a, b0 > 0 and
// x >= 0, in the parameter regime where order and argument grow together.
// Direct summation only converges usefully for small k x; beyond that the
// value is carried by integrating Kummer's equation along the real-x ray,
//   x u'' + (b + i k x) u' + i k a u = 0,
// anchored at a series-evaluated x0.  Both solutions are bounded on this
// path, so the integration is stable.

#include <cmath>

#include "antikz/common.hpp"
#include "antikz/ode.hpp"
#include "antikz/quadrature.hpp"

namespace antikz {

namespace detail {

struct h1f1_point {
  cplx u, du;  // value and d/dx
  double cancel = 1.0;
};

inline h1f1_point hyp1f1_series(double a, cplx b, double kappa, double x) {
  const cplx zfac(0.0, -kappa);  // z = -i k x
  cplx term = 1.0, sum = 1.0, dsum = 0.0;
  double max_term = 1.0;
  for (int n = 0; n < 2000; ++n) {
    term *= (a + double(n)) * zfac * x / ((b + double(n)) * double(n + 1));
    sum += term;
    dsum += term * double(n + 1) / x;
    max_term = std::max(max_term, std::abs(term));
    if (std::abs(term) < 1e-20 * std::max(1.0, std::abs(sum)) && n > 3) break;
  }
  return {sum, dsum, max_term / std::max(std::abs(sum), 1e-300)};
}

}  // namespace detail

/// 1F1(a, i kappa + b0, -i kappa x); defaults give the (1/2, i k + 3/2) case.
inline cplx hyp1f1_ray(double a, double b0, double kappa, double x) {
  if (!(x >= 0.0)) throw std::domain_error("hyp1f1_ray: x must be >= 0");
  if (kappa * x == 0.0) return 1.0;
  const cplx b(b0, kappa);
  if (x <= 0.8 || kappa * x <= 30.0) {
    auto p = detail::hyp1f1_series(a, b, kappa, x);
    if (p.cancel < 1e4) return p.u;
    // fall through when the tracker reports heavy cancellation
  }
  const double x0 = std::min(0.8, 30.0 / kappa);
  auto p0 = detail::hyp1f1_series(a, b, kappa, x0);
  ode_options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  auto rhs = [a, b, kappa](double t, const state_vec& y, state_vec& dy) {
    dy[0] = y[1];
    dy[1] = -((b + cplx(0.0, kappa) * t) * y[1] + cplx(0.0, kappa) * a * y[0]) / t;
  };
  auto res = integrate_ode(rhs, x0, x, {p0.u, p0.du}, opt);
  return res.y[0];
}

/// 1F1(1/2, i kappa + 3/2, -i kappa x); tends to 1/sqrt(1+x) for large kappa.
inline cplx hyp1f1_half(double kappa, double x) {
  if (!(kappa >= 0.0) || kappa > 200.0)
    throw std::domain_error("hyp1f1_half: kappa must be in [0, 200]");
  if (!(x >= 0.0) || x > 100.0)
    throw std::domain_error("hyp1f1_half: x must be in [0, 100]");
  return hyp1f1_ray(0.5, 1.5, kappa, x);
}

/// Error functional controlling the 1/sqrt(1+x) approximation of hyp1f1_half:
/// E_k(x) = 3/(4(i k + 3/2)) Int_0^x (1+y)^{-1/2} 1F1(5/2, i k + 5/2, -i k y) dy.
inline cplx e_kappa(double kappa, double x, double tol = 1e-9) {
  if (!(x >= 0.0)) throw std::domain_error("e_kappa: x must be >= 0");
  if (x == 0.0) return 0.0;
  auto integrand = [kappa](double y) {
    return hyp1f1_ray(2.5, 2.5, kappa, y) / std::sqrt(1.0 + y);
  };
  auto r = quad_adaptive(integrand, 0.0, x, tol);
  return 0.75 / cplx(1.5, kappa) * r.value;
}

}  // namespace antikz
