#pragma once

// Parabolic cylinder functions D_nu(z) for the order/ray families
//   nu in {i k, -i k, i k - 1, -i k - 1},   z = e^{i m pi/4} t, m in {+-1,+-3,+-5}
// with k >= 0 real.  Everything reduces by conjugation (conj D_nu(z) =
// D_conj(nu)(conj z)) to the scaled pair on the single ray z = e^{-i pi/4} s:
//
//   F(k, s) = e^{-pi k/4} D_{ik}(e^{-i pi/4} s)
//   V(k, s) = e^{-pi k/4} D_{ik-1}(e^{-i pi/4} s)
//
// which obeys |F|^2 + k |V|^2 = 1 for all real s.  Three branches cover
// s in [-400, 400] for k up to 200:
//   - Maclaurin/Kummer series near the origin (with a running cancellation
//     tracker; the usable radius shrinks like 1/sqrt(k)),
//   - direct integration of the first-order recurrence system along the ray,
//     anchored at the exact s = 0 values,
//   - large-argument expansions beyond s_asym(k); on the arg z = 3pi/4 side
//     both exponentials contribute and the two-series compound form is used.

#include <algorithm>
#include <cmath>
#include <vector>

#include "antikz/common.hpp"
#include "antikz/gamma.hpp"
#include "antikz/ode.hpp"

namespace antikz::pcf {

inline constexpr double default_max_arg = 400.0;

struct pair_value {
  cplx F{};
  cplx V{};
  double err = 0.0;  // absolute, on the scaled values
};

/// Series radius inside which the double-precision Maclaurin series keeps
/// roughly eleven digits (cancellation grows like e^{s sqrt(k)} and e^{0.43 s^2}).
inline double series_radius(double kappa) {
  return std::min(4.5, 11.0 / std::sqrt(kappa + 2.0));
}

/// Beyond this the truncated large-argument expansions are accurate to ~1e-12.
inline double asymptotic_radius(double kappa) {
  return std::max(25.0, 1.08 * kappa + 18.0);
}

namespace detail {

// Exact values at s = 0:  F(0) = e^{-pi k/4} 2^{ik/2} sqrt(pi) / Gamma((1-ik)/2),
// V(0) likewise with order ik-1; derivative coefficients for the series.
struct origin_data {
  cplx F0, V0;    // scaled D at 0
  cplx dF0, dV0;  // scaled D' at 0 (w.r.t. z)
};

inline origin_data origin(double kappa) {
  const cplx nu(0.0, kappa);
  const double scale = -pi * kappa / 4.0;
  const cplx sqpi = std::sqrt(cplx(pi, 0.0));
  auto pow2 = [](cplx e) { return std::exp(e * std::log(2.0)); };
  origin_data o;
  o.F0 = std::exp(cplx(scale, 0.0)) * pow2(nu / 2.0) * sqpi *
         gamma_reciprocal((1.0 - nu) / 2.0);
  o.dF0 = -std::exp(cplx(scale, 0.0)) * pow2((nu + 1.0) / 2.0) * sqpi *
          gamma_reciprocal(-nu / 2.0);
  const cplx mu = nu - 1.0;
  o.V0 = std::exp(cplx(scale, 0.0)) * pow2(mu / 2.0) * sqpi *
         gamma_reciprocal((1.0 - mu) / 2.0);
  o.dV0 = -std::exp(cplx(scale, 0.0)) * pow2((mu + 1.0) / 2.0) * sqpi *
          gamma_reciprocal(-mu / 2.0);
  return o;
}

// Kummer M(a, b, x) by direct summation; returns the sum and the largest
// term magnitude seen (cancellation tracker).
inline std::pair<cplx, double> kummer(cplx a, double b, cplx x) {
  cplx term = 1.0, sum = 1.0;
  double max_term = 1.0;
  for (int n = 0; n < 500; ++n) {
    term *= (a + double(n)) * x / ((b + double(n)) * double(n + 1));
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (std::abs(term) < 1e-20 * std::max(1.0, std::abs(sum)) && n > 4) break;
  }
  return {sum, max_term};
}

// D_nu(z) scaled by e^{-pi k/4}, via the even/odd Maclaurin solutions.
inline cplx series_scaled(cplx nu, cplx z, cplx d0, cplx d1, double& cancel) {
  const cplx u = z * z / 2.0;
  auto [y1, m1] = kummer(-nu / 2.0, 0.5, u);
  auto [y2, m2] = kummer((1.0 - nu) / 2.0, 1.5, u);
  const cplx pre = std::exp(-z * z / 4.0);
  const cplx val = pre * (d0 * y1 + d1 * z * y2);
  cancel = (std::abs(d0) * m1 + std::abs(d1 * z) * m2) /
           std::max(std::abs(val), 1e-300);
  return val;
}

inline pair_value pair_series(double kappa, double s, const origin_data& o) {
  const cplx nu(0.0, kappa);
  const cplx z = phase_neg_quarter * s;
  double c1 = 0.0, c2 = 0.0;
  pair_value r;
  r.F = series_scaled(nu, z, o.F0, o.dF0, c1);
  r.V = series_scaled(nu - 1.0, z, o.V0, o.dV0, c2);
  r.err = 4.0e-16 * std::max(c1, c2) * std::max({std::abs(r.F), std::abs(r.V), 1e-3});
  return r;
}

// One large-argument series: sum_k t_k with t_0 = 1 and
// t_{k+1} = t_k * sign * (p + 2k)(p + 2k + 1) / (2 (k+1) z^2).
inline cplx asym_series(cplx p, double sign, cplx z, double& rel_err,
                        int max_terms = 60) {
  cplx t = 1.0, sum = 1.0;
  double last = 1.0;
  const cplx z2 = z * z;
  for (int k = 0; k < max_terms; ++k) {
    t *= sign * (p + double(2 * k)) * (p + double(2 * k + 1)) /
         (2.0 * double(k + 1) * z2);
    if (std::abs(t) > last && k > 2) {  // divergent tail reached
      rel_err = std::abs(t);
      return sum;
    }
    sum += t;
    last = std::abs(t);
    if (last < 1e-19 * std::abs(sum)) break;
  }
  rel_err = last;
  return sum;
}

// Scaled D_nu(e^{-i pi/4} s) for |s| >= asymptotic_radius, either sign of s.
// `scale_log` is -pi k/4; max_terms = 1 gives the leading-order form.
inline cplx asym_scaled(cplx nu, double kappa, double s, double& abs_err,
                        int max_terms = 60) {
  const cplx z = phase_neg_quarter * s;
  const cplx lz = std::log(z);  // principal: arg = -pi/4 (s>0) or 3pi/4 (s<0)
  const double scale_log = -pi * kappa / 4.0;
  double e1 = 0.0;
  const cplx s1 = asym_series(-nu, -1.0, z, e1, max_terms);
  const cplx c1 = std::exp(nu * lz - z * z / 4.0 + scale_log);
  cplx val = c1 * s1;
  abs_err = std::abs(c1) * e1;
  if (s < 0.0) {
    // the recessive exponential contributes on this ray
    double e2 = 0.0;
    const cplx s2 = asym_series(nu + 1.0, +1.0, z, e2, max_terms);
    const cplx c2 = -std::exp(0.5 * std::log(2.0 * pi) - log_gamma(-nu) +
                              cplx(0.0, pi) * nu - (nu + 1.0) * lz +
                              z * z / 4.0 + scale_log);
    val += c2 * s2;
    abs_err += std::abs(c2) * e2;
  }
  return val;
}

inline pair_value pair_asymptotic(double kappa, double s) {
  const cplx nu(0.0, kappa);
  pair_value r;
  double e1 = 0.0, e2 = 0.0;
  r.F = asym_scaled(nu, kappa, s, e1);
  r.V = asym_scaled(nu - 1.0, kappa, s, e2);
  r.err = e1 + e2;
  return r;
}

// First-order system for y = (F, V) along the ray.
inline void pair_rhs(double kappa, double s, const cplx& F, const cplx& V,
                     cplx& dF, cplx& dV) {
  dF = cplx(0.0, 0.5 * s) * F + phase_pos_quarter * kappa * V;
  dV = cplx(0.0, -0.5 * s) * V - phase_neg_quarter * F;
}

}  // namespace detail

/// Pointwise evaluation of the scaled pair (F, V).  Dispatches between the
/// series, ray-ODE and asymptotic branches.
inline pair_value lz_pair(double kappa, double s,
                          double max_arg = default_max_arg) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::domain_error("lz_pair: kappa must be finite and >= 0");
  if (std::fabs(s) > max_arg)
    throw std::domain_error("lz_pair: |s| exceeds configured maximum");
  const auto o = detail::origin(kappa);
  const double as = std::fabs(s);
  if (as <= series_radius(kappa)) {
    auto r = detail::pair_series(kappa, s, o);
    if (r.err < 1e-11) return r;
    // tracker says the series lost too much; fall through to the ODE path
  }
  if (as >= asymptotic_radius(kappa)) return detail::pair_asymptotic(kappa, s);
  ode_options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-13;
  auto rhs = [kappa](double t, const state_vec& y, state_vec& dy) {
    detail::pair_rhs(kappa, t, y[0], y[1], dy[0], dy[1]);
  };
  auto res = integrate_ode(rhs, 0.0, s, {o.F0, o.V0}, opt);
  pair_value r;
  r.F = res.y[0];
  r.V = res.y[1];
  r.err = 1e-12 * (1.0 + 0.05 * std::fabs(s));
  return r;
}

/// Dense table of the pair over [s_lo, s_hi], built from one ODE sweep per
/// sign with cubic-Hermite interpolation between accepted steps.  Intended
/// for integrands that sample (F, V) thousands of times at fixed kappa.
class pair_table {
 public:
  pair_table(double kappa, double s_lo, double s_hi,
             double max_arg = default_max_arg)
      : kappa_(kappa) {
    if (s_lo > s_hi) std::swap(s_lo, s_hi);
    if (std::max(std::fabs(s_lo), std::fabs(s_hi)) > max_arg)
      throw std::domain_error("pair_table: range exceeds configured maximum");
    const double edge = asymptotic_radius(kappa);
    const auto o = detail::origin(kappa);
    build(std::min(s_hi, edge), o, pos_);
    build(std::max(s_lo, -edge), o, neg_);
  }

  pair_value at(double s) const {
    if (std::fabs(s) >= asymptotic_radius(kappa_))
      return detail::pair_asymptotic(kappa_, s);
    const auto& nodes = (s >= 0.0) ? pos_ : neg_;
    return interpolate(nodes, s);
  }

  double kappa() const { return kappa_; }

 private:
  struct node {
    double s;
    cplx F, V, dF, dV;
  };

  void build(double s_end, const detail::origin_data& o,
             std::vector<node>& out) {
    out.clear();
    auto push = [&](double s, const cplx& F, const cplx& V) {
      node nd{s, F, V, {}, {}};
      detail::pair_rhs(kappa_, s, F, V, nd.dF, nd.dV);
      out.push_back(nd);
    };
    push(0.0, o.F0, o.V0);
    if (s_end == 0.0) return;
    ode_options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-13;
    auto rhs = [this](double t, const state_vec& y, state_vec& dy) {
      detail::pair_rhs(kappa_, t, y[0], y[1], dy[0], dy[1]);
    };
    integrate_ode(
        rhs, 0.0, s_end, {o.F0, o.V0}, opt,
        [&](double t, const state_vec& y) { push(t, y[0], y[1]); });
    if (s_end < 0.0)
      std::reverse(out.begin(), out.end());  // keep nodes ascending in s
  }

  static pair_value interpolate(const std::vector<node>& nodes, double s) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), s,
                               [](const node& n, double v) { return n.s < v; });
    if (it == nodes.begin()) it = std::next(it);
    if (it == nodes.end()) it = std::prev(it);
    const node& n1 = *it;
    const node& n0 = *std::prev(it);
    const double h = n1.s - n0.s;
    const double u = (s - n0.s) / h;
    auto hermite = [&](const cplx& y0, const cplx& y1, const cplx& d0,
                       const cplx& d1) {
      const double u2 = u * u, u3 = u2 * u;
      return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
             (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
    };
    pair_value r;
    r.F = hermite(n0.F, n1.F, n0.dF, n1.dF);
    r.V = hermite(n0.V, n1.V, n0.dV, n1.dV);
    r.err = 1e-10;
    return r;
  }

  double kappa_;
  std::vector<node> pos_, neg_;
};

namespace detail {

struct family {
  double kappa;   // >= 0
  bool order_m1;  // order is +-i k - 1 rather than +-i k
  bool conj;      // evaluate by conjugation (orders -ik, -ik-1)
};

inline family classify_order(cplx nu) {
  family f{};
  if (std::fabs(nu.real()) < 1e-9) {
    f.order_m1 = false;
  } else if (std::fabs(nu.real() + 1.0) < 1e-9) {
    f.order_m1 = true;
  } else {
    throw std::domain_error("pcf: order not of the form +-i k or +-i k - 1");
  }
  f.kappa = std::fabs(nu.imag());
  f.conj = nu.imag() < 0.0;
  return f;
}

// Map z to the signed coordinate s on the canonical (or conjugate) ray.
inline double classify_arg(cplx z, bool conj_family) {
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  double th = std::arg(z);
  // canonical family lives on arg in {-pi/4, 3pi/4}; conjugate on {pi/4, -3pi/4}
  const double want_pos = conj_family ? pi / 4.0 : -pi / 4.0;
  const double want_neg = conj_family ? -3.0 * pi / 4.0 : 3.0 * pi / 4.0;
  auto close = [&](double a, double b) {
    double d = std::remainder(a - b, 2.0 * pi);
    return std::fabs(d) < 1e-9 * std::max(1.0, std::fabs(a));
  };
  if (close(th, want_pos)) return r;
  if (close(th, want_neg)) return -r;
  throw std::domain_error("pcf: argument not on a supported ray for this order");
}

}  // namespace detail

/// D_nu(z) on the supported order/ray families.  Throws std::domain_error
/// outside them and accuracy_error if the requested tolerance cannot be met.
inline special_value pcf_d(cplx order, cplx arg, double requested_tol = 1e-8,
                           double max_arg = default_max_arg) {
  auto fam = detail::classify_order(order);
  if (fam.kappa > 200.0)
    throw std::domain_error("pcf_d: kappa above supported cap of 200");
  double s = 0.0;
  try {
    s = detail::classify_arg(arg, fam.conj);
  } catch (const std::domain_error&) {
    if (fam.kappa != 0.0) throw;  // real orders are self-conjugate
    fam.conj = !fam.conj;
    s = detail::classify_arg(arg, fam.conj);
  }
  auto pv = lz_pair(fam.kappa, s, max_arg);
  const double unscale = std::exp(pi * fam.kappa / 4.0);
  cplx v = fam.order_m1 ? pv.V : pv.F;
  if (fam.conj) v = std::conj(v);
  special_value out{v * unscale, pv.err * unscale};
  if (pv.err > requested_tol)
    throw accuracy_error("pcf_d: error estimate exceeds requested tolerance");
  return out;
}

/// Leading large-argument form of D_nu(e^{i m pi/4} t) with an O(1/t)
/// remainder estimate; throws accuracy_error when t is below the validity
/// threshold for the requested relative tolerance.
inline special_value pcf_asymptotic(cplx order, int ray_index, double t,
                                    double rel_tol = 0.25) {
  if (std::abs(ray_index) != 1 && std::abs(ray_index) != 3 &&
      std::abs(ray_index) != 5)
    throw std::domain_error("pcf_asymptotic: ray index must be in {+-1,+-3,+-5}");
  const auto fam = detail::classify_order(order);
  const cplx z = std::polar(t, ray_index * pi / 4.0);
  const double s = detail::classify_arg(z, fam.conj);
  const cplx nu = fam.conj ? std::conj(order) : order;  // canonical order
  double abs_err = 0.0;
  cplx v = detail::asym_scaled(nu, fam.kappa, s, abs_err, /*max_terms=*/1);
  v *= std::exp(pi * fam.kappa / 4.0);
  abs_err *= std::exp(pi * fam.kappa / 4.0);
  if (fam.conj) v = std::conj(v);
  if (abs_err > rel_tol * std::abs(v))
    throw accuracy_error("pcf_asymptotic: t below validity threshold");
  return {v, abs_err};
}

}  // namespace antikz::pcf

namespace antikz {
using pcf::pcf_asymptotic;
using pcf::pcf_d;
}  // namespace antikz
