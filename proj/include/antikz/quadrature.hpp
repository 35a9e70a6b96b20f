#pragma once

// Globally adaptive Gauss-Kronrod 15(7) quadrature on finite intervals,
// plus a truncation wrapper for semi-infinite domains with an algebraic
// tail bound.  Works for real- and complex-valued integrands.

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "antikz/common.hpp"

namespace antikz {

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights; the even-indexed
// nodes carry the embedded 7-point Gauss rule.
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <typename T>
double abs_of(const T& v) {
  if constexpr (std::is_same_v<T, cplx>)
    return std::abs(v);
  else
    return std::fabs(v);
}

template <typename F, typename T>
void gk15_panel(const F& f, double a, double b, T& integral, double& err) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  T fc = f(c);
  T kron = gk15_wk[7] * fc;
  T gauss = gk15_wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * gk15_x[i];
    T fsum = f(c - dx) + f(c + dx);
    kron += gk15_wk[i] * fsum;
    if (i % 2 == 1) gauss += gk15_wg[i / 2] * fsum;
  }
  integral = h * kron;
  // QUADPACK-style error: sharpened difference of the two rules
  const double diff = abs_of<T>(h * (kron - gauss));
  err = diff;
  const double scale = abs_of<T>(integral);
  if (scale > 0.0 && diff > 0.0)
    err = std::min(diff, scale * std::pow(200.0 * diff / scale, 1.5));
}

}  // namespace detail

template <typename T>
struct quad_result {
  T value{};
  double error = 0.0;
  int panels = 0;
};

/// Adaptive quadrature of f over [a, b] to absolute tolerance `tol`.
/// Throws convergence_error if the panel budget is exhausted while the
/// error estimate still exceeds max(tol, rel_tol*|I|).
template <typename F>
auto quad_adaptive(const F& f, double a, double b, double tol,
                   double rel_tol = 0.0, int max_panels = 20000) {
  using T = std::decay_t<decltype(f(a))>;
  struct panel {
    double a, b, err;
    T val;
    bool operator<(const panel& o) const { return err < o.err; }
  };
  std::priority_queue<panel> q;
  T v0;
  double e0;
  detail::gk15_panel(f, a, b, v0, e0);
  q.push({a, b, e0, v0});
  T total = v0;
  double total_err = e0;
  int n = 1;
  const double eps_floor = 64.0 * std::numeric_limits<double>::epsilon();
  while (total_err > std::max(tol, rel_tol * detail::abs_of<T>(total))) {
    if (n >= max_panels)
      throw convergence_error("quad_adaptive: panel budget exhausted");
    panel p = q.top();
    q.pop();
    const double m = 0.5 * (p.a + p.b);
    if (m <= p.a || m >= p.b || p.err < eps_floor * detail::abs_of<T>(total)) {
      // interval cannot be refined further; accept its estimate
      q.push({p.a, p.b, 0.0, p.val});
      total_err -= p.err;
      continue;
    }
    T vl, vr;
    double el, er;
    detail::gk15_panel(f, p.a, m, vl, el);
    detail::gk15_panel(f, m, p.b, vr, er);
    total += vl + vr - p.val;
    total_err += el + er - p.err;
    q.push({p.a, m, el, vl});
    q.push({m, p.b, er, vr});
    ++n;
  }
  return quad_result<T>{total, total_err, n};
}

/// Adaptive quadrature of f over [a, inf) for integrands with a declared
/// algebraic tail |f(s)| <= C s^p, p < -1.  The ray is compactified with
/// s = a + u/(1-u); the resulting endpoint behaviour (1-u)^{-p-2} is smooth
/// for p <= -2 and integrable for -2 < p < -1.
template <typename F>
auto quad_semi_infinite(const F& f, double a, double tail_exponent, double tol) {
  using T = std::decay_t<decltype(f(a))>;
  if (tail_exponent >= -1.0)
    throw std::domain_error("quad_semi_infinite: tail exponent must be < -1");
  auto mapped = [&f, a](double u) {
    const double w = 1.0 - u;
    return T(f(a + u / w) / (w * w));
  };
  return quad_adaptive(mapped, 0.0, 1.0, tol);
}

}  // namespace antikz
