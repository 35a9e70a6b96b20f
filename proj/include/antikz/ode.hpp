#pragma once

// Embedded Dormand-Prince 5(4) integrator for complex-valued ODE systems
// with PI step-size control.  Non-stiff, oscillatory problems only; the
// systems integrated here accumulate phases up to ~1e4 rad, which plain
// local error control handles fine.

#include <cmath>
#include <functional>
#include <vector>

#include "antikz/common.hpp"

namespace antikz {

using state_vec = std::vector<cplx>;
using ode_rhs = std::function<void(double t, const state_vec& y, state_vec& dy)>;

struct ode_options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double h_init = 0.0;   // 0 = choose automatically
  long max_steps = 200000000;
};

struct ode_stats {
  long n_accepted = 0;
  long n_rejected = 0;
  double h_last = 0.0;
};

struct ode_problem {
  int dimension = 0;
  ode_rhs rhs;
  double t0 = 0.0;
  double t1 = 0.0;
  state_vec y0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

struct ode_result {
  state_vec y;
  ode_stats stats;
};

namespace detail {

inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
inline constexpr double dp_b5[7] = {35.0 / 384,     0, 500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0};
inline constexpr double dp_b4[7] = {5179.0 / 57600,    0,           7571.0 / 16695,
                                    393.0 / 640,       -92097.0 / 339200,
                                    187.0 / 2100,      1.0 / 40};

}  // namespace detail

/// Integrate y' = rhs(t, y) from t0 to t1 (either direction).  The optional
/// observer is called after every accepted step with (t, y).
template <typename Observer = std::nullptr_t>
ode_result integrate_ode(const ode_rhs& rhs, double t0, double t1, state_vec y0,
                         const ode_options& opt = {},
                         Observer&& observer = nullptr) {
  const int n = int(y0.size());
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  const double span = std::fabs(t1 - t0);
  ode_stats stats;
  if (span == 0.0) return {std::move(y0), stats};

  state_vec k[7], ytmp(n), y5(n), y4(n), e(n);
  for (auto& ki : k) ki.resize(n);
  state_vec y = std::move(y0);
  double t = t0;
  rhs(t, y, k[0]);  // FSAL seed

  auto err_norm = [&](const state_vec& a, const state_vec& b, const state_vec& e) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double sc = opt.abs_tol +
                        opt.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
      const double r = std::abs(e[i]) / sc;
      s += r * r;
    }
    return std::sqrt(s / n);
  };

  double h = opt.h_init > 0.0 ? opt.h_init : std::min(span, 1e-2);
  double err_prev = 1.0;
  long total = 0;
  while (dir * (t1 - t) > 0.0) {
    if (++total > opt.max_steps)
      throw convergence_error("integrate_ode: max step count exceeded");
    h = std::min(h, std::fabs(t1 - t));
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(t)))
      throw convergence_error("integrate_ode: step size underflow");
    const double hs = dir * h;
    for (int s = 1; s < 7; ++s) {
      for (int i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < s; ++j) acc += detail::dp_a[s][j] * k[j][i];
        ytmp[i] = y[i] + hs * acc;
      }
      rhs(t + detail::dp_c[s] * hs, ytmp, k[s]);
    }
    for (int i = 0; i < n; ++i) {
      cplx acc5 = 0.0, acc4 = 0.0;
      for (int s = 0; s < 7; ++s) {
        acc5 += detail::dp_b5[s] * k[s][i];
        acc4 += detail::dp_b4[s] * k[s][i];
      }
      y5[i] = y[i] + hs * acc5;
      y4[i] = y[i] + hs * acc4;
      e[i] = y5[i] - y4[i];
    }
    const double err = err_norm(y, y5, e);
    if (err <= 1.0) {
      t += hs;
      std::swap(y, y5);
      k[0] = k[6];  // FSAL: stage 7 was evaluated at (t+h, y_new)
      ++stats.n_accepted;
      stats.h_last = h;
      if constexpr (!std::is_same_v<std::decay_t<Observer>, std::nullptr_t>)
        observer(t, y);
      // PI controller (Hairer's beta = 0.08)
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.12) *
                   std::pow(err_prev, 0.08);
      h *= std::min(5.0, std::max(0.2, fac));
      err_prev = std::max(err, 1e-10);
    } else {
      ++stats.n_rejected;
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
      // k[0] still holds rhs(t, y); retry from the same point
    }
  }
  return {std::move(y), stats};
}

inline ode_result integrate_ode(const ode_problem& p) {
  ode_options opt;
  opt.rel_tol = p.rel_tol;
  opt.abs_tol = p.abs_tol;
  return integrate_ode(p.rhs, p.t0, p.t1, p.y0, opt);
}

}  // namespace antikz
