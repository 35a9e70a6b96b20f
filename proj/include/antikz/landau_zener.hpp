#pragma once

// Two-level avoided crossing with linearly swept detuning and white-noise
// dephasing, in dimensionless units: H(tau) = (tau/2) sigma_z + sqrt(k) sigma_x,
// noise-averaged master equation
//   d rho/d tau = -i [H, rho] + lambda sqrt(k) (sigma_z rho sigma_z - rho).
//
// Exact propagator amplitudes come from the scaled Weber pair (F, G):
//   f(tau, tau_i) = conj(F(tau)) F(tau_i) + G(tau) conj(G(tau_i))
//   g(tau, tau_i) = e^{i pi/4} (F(tau_i) conj(G(tau)) - conj(G(tau_i)) F(tau))
// with G = sqrt(k) V, so |f|^2 + |g|^2 = 1 identically.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "antikz/common.hpp"
#include "antikz/ode.hpp"
#include "antikz/parabolic_cylinder.hpp"
#include "antikz/quadrature.hpp"
#include "antikz/threading.hpp"

namespace antikz::lz {

struct lz_params {
  double kappa = 1.0;    // J^2 / v
  double lambda = 0.0;   // W^2 / J
  double tau_i = -200.0;
  double tau_f = 200.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;

  void validate() const {
    if (!(kappa >= 0.0) || !(lambda >= 0.0))
      throw std::domain_error("lz_params: kappa and lambda must be >= 0");
    if (!(tau_i < tau_f)) throw std::domain_error("lz_params: tau_i < tau_f required");
  }
};

/// 2x2 density matrix stored as the vector (rho11, rho12, rho21, rho22).
struct density_matrix2 {
  std::array<cplx, 4> r{};

  static density_matrix2 pure_up() { return {{cplx(1.0), 0.0, 0.0, 0.0}}; }
  static density_matrix2 infinite_temperature() {
    return {{cplx(0.5), 0.0, 0.0, cplx(0.5)}};
  }

  cplx rho11() const { return r[0]; }
  cplx rho12() const { return r[1]; }
  cplx rho21() const { return r[2]; }
  cplx rho22() const { return r[3]; }
  double excited_population() const { return r[0].real(); }

  double trace_defect() const { return std::abs(r[0] + r[3] - 1.0); }
  double hermiticity_defect() const { return std::abs(r[2] - std::conj(r[1])); }
  double min_eigenvalue() const {
    const double tr = (r[0] + r[3]).real();
    const cplx det = r[0] * r[3] - r[1] * r[2];
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det.real()));
    return 0.5 * (tr - disc);
  }
  bool is_valid(double trace_tol = 1e-9, double herm_tol = 1e-10,
                double eig_floor = -1e-8) const {
    return trace_defect() < trace_tol && hermiticity_defect() < herm_tol &&
           min_eigenvalue() > eig_floor;
  }
};

/// Exact two-level propagator amplitudes; |f|^2 + |g|^2 = 1.
struct propagator {
  cplx f{1.0};
  cplx g{0.0};
  double kappa = 0.0, tau = 0.0, tau_i = 0.0;
  double unitarity_defect() const {
    return std::fabs(std::norm(f) + std::norm(g) - 1.0);
  }
};

/// The 4x4 generator of the vectorized master equation at time tau.
inline Eigen::Matrix4cd liouvillian(const lz_params& p, double tau) {
  const double sk = std::sqrt(p.kappa);
  const cplx i(0.0, 1.0);
  Eigen::Matrix4cd L;
  L << 0.0, i * sk, -i * sk, 0.0,
       i * sk, -i * tau - 2.0 * p.lambda * sk, 0.0, -i * sk,
       -i * sk, 0.0, i * tau - 2.0 * p.lambda * sk, i * sk,
       0.0, -i * sk, i * sk, 0.0;
  return L;
}

namespace detail {

inline void master_rhs(double kappa, double lambda, double tau,
                       const state_vec& y, state_vec& dy) {
  const double sk = std::sqrt(kappa);
  const cplx i(0.0, 1.0);
  const cplx r11 = y[0], r12 = y[1], r21 = y[2], r22 = y[3];
  dy[0] = -i * sk * (r21 - r12);
  dy[1] = -i * (tau * r12 + sk * (r22 - r11)) - 2.0 * lambda * sk * r12;
  dy[2] = -i * (-tau * r21 + sk * (r11 - r22)) - 2.0 * lambda * sk * r21;
  dy[3] = -i * sk * (r12 - r21);
}

}  // namespace detail

/// Propagate rho through [tau_i, tau_f] in the Schroedinger picture.
/// The optional observer sees (tau, rho) after each accepted step.
template <typename Observer = std::nullptr_t>
density_matrix2 evolve_master(const lz_params& p, const density_matrix2& rho0,
                              Observer&& observer = nullptr) {
  p.validate();
  ode_options opt;
  opt.rel_tol = p.rel_tol;
  opt.abs_tol = p.abs_tol;
  auto rhs = [&p](double t, const state_vec& y, state_vec& dy) {
    detail::master_rhs(p.kappa, p.lambda, t, y, dy);
  };
  state_vec y0(rho0.r.begin(), rho0.r.end());
  density_matrix2 out;
  if constexpr (std::is_same_v<std::decay_t<Observer>, std::nullptr_t>) {
    auto res = integrate_ode(rhs, p.tau_i, p.tau_f, std::move(y0), opt);
    std::copy_n(res.y.begin(), 4, out.r.begin());
  } else {
    auto res = integrate_ode(rhs, p.tau_i, p.tau_f, std::move(y0), opt,
                             [&observer](double t, const state_vec& y) {
                               density_matrix2 m;
                               std::copy_n(y.begin(), 4, m.r.begin());
                               observer(t, m);
                             });
    std::copy_n(res.y.begin(), 4, out.r.begin());
  }
  return out;
}

/// Exact noiseless propagator U(tau, tau_i) from the Weber pair.
inline propagator lz_propagator(double kappa, double tau, double tau_i) {
  const auto a = pcf::lz_pair(kappa, tau);
  const auto b = pcf::lz_pair(kappa, tau_i);
  const double sk = std::sqrt(kappa);
  const cplx Gt = sk * a.V, Gi = sk * b.V;
  propagator u;
  u.f = std::conj(a.F) * b.F + Gt * std::conj(Gi);
  u.g = phase_pos_quarter * (b.F * std::conj(Gt) - std::conj(Gi) * a.F);
  u.kappa = kappa;
  u.tau = tau;
  u.tau_i = tau_i;
  return u;
}

/// Interaction-picture propagation: the dressed dephasing operator
/// sigma_z(tau) = U^dag sigma_z U is carried along by co-integrating the
/// propagator column (f, g), so no special functions are touched.
inline density_matrix2 evolve_interaction(const lz_params& p,
                                          const density_matrix2& rho0) {
  p.validate();
  const double sk = std::sqrt(p.kappa);
  const double g2 = p.lambda * sk;  // dephasing rate
  auto rhs = [&p, sk, g2](double t, const state_vec& y, state_vec& dy) {
    const cplx f = y[0], g = y[1];
    const cplx i(0.0, 1.0);
    // d/dtau of the first column of U
    dy[0] = -i * (0.5 * t) * f - i * sk * g;
    dy[1] = -i * sk * f + i * (0.5 * t) * g;
    // A = U^dag sigma_z U = [[pz, -2 conj(f g)], [-2 f g, -pz]]
    const double pz = std::norm(f) - std::norm(g);
    const cplx q = -2.0 * f * g;
    const cplx r11 = y[2], r12 = y[3], r21 = y[4], r22 = y[5];
    // A rho A - rho, with A = [[pz, conj(q)],[q, -pz]]
    const cplx a11 = pz * r11 + std::conj(q) * r21;
    const cplx a12 = pz * r12 + std::conj(q) * r22;
    const cplx a21 = q * r11 - pz * r21;
    const cplx a22 = q * r12 - pz * r22;
    dy[2] = g2 * (a11 * pz + a12 * q - r11);
    dy[3] = g2 * (a11 * std::conj(q) - a12 * pz - r12);
    dy[4] = g2 * (a21 * pz + a22 * q - r21);
    dy[5] = g2 * (a21 * std::conj(q) - a22 * pz - r22);
  };
  ode_options opt;
  opt.rel_tol = p.rel_tol;
  opt.abs_tol = p.abs_tol;
  state_vec y0{1.0, 0.0, rho0.r[0], rho0.r[1], rho0.r[2], rho0.r[3]};
  auto res = integrate_ode(rhs, p.tau_i, p.tau_f, std::move(y0), opt);
  // map back: rho = U rho~ U^dag with U = [[f, -conj(g)], [g, conj(f)]]
  const cplx f = res.y[0], g = res.y[1];
  const cplx r11 = res.y[2], r12 = res.y[3], r21 = res.y[4], r22 = res.y[5];
  const cplx u11 = f, u12 = -std::conj(g), u21 = g, u22 = std::conj(f);
  const cplx m11 = u11 * r11 + u12 * r21, m12 = u11 * r12 + u12 * r22;
  const cplx m21 = u21 * r11 + u22 * r21, m22 = u21 * r12 + u22 * r22;
  density_matrix2 out;
  out.r[0] = m11 * std::conj(u11) + m12 * std::conj(u12);
  out.r[1] = m11 * std::conj(u21) + m12 * std::conj(u22);
  out.r[2] = m21 * std::conj(u11) + m22 * std::conj(u12);
  out.r[3] = m21 * std::conj(u21) + m22 * std::conj(u22);
  return out;
}

// ---------------------------------------------------------------------------
// First-order-in-lambda machinery.  X and Y are built from the scaled pair:
//   X(t) = conj(G(t)) G(-t),   Y(t) = (|G(t)|^2 + |G(-t)|^2) / 2,
// both bounded by 1, both even under t -> -t (X goes to its conjugate).

/// Evaluator for the noise kernels X and Y at fixed kappa.
class xy_kernel {
 public:
  explicit xy_kernel(double kappa, double t_max)
      : kappa_(kappa), table_(kappa, -t_max, t_max) {}

  cplx X(double t) const {
    return std::conj(G(t)) * G(-t);
  }
  double Y(double t) const {
    return 0.5 * (std::norm(G(t)) + std::norm(G(-t)));
  }

 private:
  cplx G(double t) const { return std::sqrt(kappa_) * table_.at(t).V; }
  double kappa_;
  pcf::pair_table table_;
};

struct first_order_breakdown {
  double base = 0.0;           // e^{-2 pi k}
  double i_abs2 = 0.0;         // Int |X|^2
  double i_re2 = 0.0;          // Int (Re X)^2
  double i_rey = 0.0;          // Int Re(X) Y
  double t_cut = 0.0;
  double probability() const {
    const double e2 = base;
    const double c2 = 2.0 * e2 / (1.0 - e2);
    const double c3 = 2.0 * std::sqrt(e2) / (1.0 - e2);
    return e2 + 4.0 * (i_abs2 + c2 * i_re2 + c3 * i_rey);
  }
};

inline double first_order_window(double kappa) {
  return std::max(200.0, 20.0 * std::sqrt(kappa));
}

inline first_order_breakdown first_order_integrals(double kappa, double lambda,
                                                   double quad_tol = 3e-9) {
  const double T = first_order_window(kappa);
  xy_kernel k(kappa, T);
  first_order_breakdown b;
  b.base = std::exp(-2.0 * pi * kappa);
  b.t_cut = T;
  const double pref = lambda * std::sqrt(kappa);
  // integrands are even; integrate the half line and double
  b.i_abs2 = 2.0 * pref *
             quad_adaptive([&k](double t) { return std::norm(k.X(t)); }, 0.0, T,
                           quad_tol).value;
  b.i_re2 = 2.0 * pref *
            quad_adaptive([&k](double t) { return sq(k.X(t).real()); }, 0.0, T,
                          quad_tol).value;
  b.i_rey = 2.0 * pref *
            quad_adaptive([&k](double t) { return k.X(t).real() * k.Y(t); },
                          0.0, T, quad_tol).value;
  return b;
}

/// Transition probability to first order in lambda (infinite-window form,
/// integrals truncated at max(200, 20 sqrt(k))).
inline double prob_first_order(const lz_params& p) {
  p.validate();
  if (p.kappa < 1e-6) return 1.0;  // the 1/(1-e^{-2 pi k}) weights blow up
  return first_order_integrals(p.kappa, p.lambda).probability();
}

struct dominance_result {
  double Z = 0.0;   // 4 Int (|X|^2 + c2 (Re X)^2 + c3 Re(X) Y)
  double b1 = 0.0;  // 4 sqrt(k) Int |X|^2
  double b2 = 0.0;
  double b3 = 0.0;
};

/// The three noise integrals and their scaled sum Z_k = (b1+b2+b3)/sqrt(k),
/// so that P = e^{-2 pi k} + lambda sqrt(k) Z_k.
inline dominance_result dominance_terms(double kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("dominance_terms: kappa > 0");
  auto b = first_order_integrals(kappa, 1.0);  // lambda factored out
  const double e2 = b.base;
  dominance_result d;
  d.b1 = 4.0 * b.i_abs2;
  d.b2 = 4.0 * 2.0 * e2 / (1.0 - e2) * b.i_re2;
  d.b3 = 4.0 * 2.0 * std::sqrt(e2) / (1.0 - e2) * b.i_rey;
  d.Z = (d.b1 + d.b2 + d.b3) / std::sqrt(kappa);
  return d;
}

enum class closed_kind { non_ad, ad, combined, kayanuma };

/// Closed-form transition probabilities.
inline double p_closed(closed_kind kind, const lz_params& p) {
  switch (kind) {
    case closed_kind::non_ad:
      return std::exp(-2.0 * pi * p.kappa);
    case closed_kind::ad:
      return 0.5 * (1.0 - std::exp(-4.0 * pi * p.lambda * p.kappa));
    case closed_kind::combined:
      return p_closed(closed_kind::non_ad, p) + p_closed(closed_kind::ad, p);
    case closed_kind::kayanuma:
      return 0.5 * (1.0 - std::exp(-4.0 * pi * p.kappa));
  }
  throw std::logic_error("p_closed: unknown kind");
}

// ---------------------------------------------------------------------------
// Monte-Carlo cross-check: piecewise-constant noise trajectories of the
// stochastic Schroedinger equation, averaged over realizations.

struct mc_result {
  double mean = 0.0;
  double std_error = 0.0;
  int n_traj = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// exact step with constant H = az sigma_z + ax sigma_x over dt
inline void pauli_step(double ax, double az, double dt, cplx& up, cplx& dn) {
  const double w = std::sqrt(ax * ax + az * az);
  const double c = std::cos(w * dt);
  const double s = (w > 0.0) ? std::sin(w * dt) / w : dt;
  const cplx nu = up, nd = dn;
  up = c * nu - cplx(0.0, s) * (az * nu + ax * nd);
  dn = c * nd - cplx(0.0, s) * (ax * nu - az * nd);
}

}  // namespace detail

/// Average of |<up|psi>|^2 over noise trajectories; the per-trajectory RNG is
/// derived from (seed, index), so the result is independent of thread count.
inline mc_result noise_trajectory_oracle(const lz_params& p, int n_traj,
                                         double dt, std::uint64_t seed,
                                         unsigned threads = 1) {
  p.validate();
  if (n_traj < 2) throw std::domain_error("noise_trajectory_oracle: n_traj >= 2");
  const double sk = std::sqrt(p.kappa);
  if (p.lambda * sk * dt > 0.01)
    throw std::domain_error("noise_trajectory_oracle: dt too coarse");
  const double sigma =
      (p.lambda > 0.0) ? std::sqrt(p.lambda * sk / dt) : 0.0;
  const long n_steps = long(std::ceil((p.tau_f - p.tau_i) / dt));
  std::vector<double> pvals(n_traj);
  parallel_for_indexed(n_traj, threads, [&](std::size_t idx) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ (0x517cc1b727220a95ull * (idx + 1))));
    std::normal_distribution<double> gauss(0.0, 1.0);
    cplx up(1.0, 0.0), dn(0.0, 0.0);
    for (long s = 0; s < n_steps; ++s) {
      const double t0 = p.tau_i + s * dt;
      const double h = std::min(dt, p.tau_f - t0);
      if (h <= 0.0) break;
      const double gamma = sigma * gauss(rng);
      const double az = 0.5 * (t0 + 0.5 * h) + gamma;
      detail::pauli_step(sk, az, h, up, dn);
    }
    pvals[idx] = std::norm(up);
  });
  double mean = 0.0;
  for (double v : pvals) mean += v;
  mean /= n_traj;
  double var = 0.0;
  for (double v : pvals) var += sq(v - mean);
  var /= (n_traj - 1.0);
  return {mean, std::sqrt(var / n_traj), n_traj};
}

}  // namespace antikz::lz
