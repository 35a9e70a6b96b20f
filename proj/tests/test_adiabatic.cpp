#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "antikz/adiabatic.hpp"

using namespace antikz;
using namespace antikz::adiabatic;

TEST_CASE("spectrum_perturbative: printed eigenvalues") {
  auto s = spectrum_perturbative(1.0, 0.0, 0.0);
  REQUIRE(std::abs(s.chi[0]) == 0.0);
  REQUIRE(std::abs(s.chi[1]) == 0.0);
  REQUIRE(std::abs(s.chi[2] - cplx(0.0, -2.0)) < 1e-14);
  REQUIRE(std::abs(s.chi[3] - cplx(0.0, 2.0)) < 1e-14);

  auto t = spectrum_perturbative(25.0, 1e-2, 1.0);
  REQUIRE(std::abs(t.chi[1] - cplx(-5e-2, 0.0)) < 1e-14);
  for (int a = 1; a < 4; ++a) REQUIRE(t.chi[a].real() <= 0.0);
  REQUIRE(t.biorthonormality_defect() < 1e-12);
  Eigen::Vector4cd one;
  one << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  REQUIRE((t.right[0] - one).norm() < 1e-14);
}

TEST_CASE("spectrum_numeric: matches perturbative branches") {
  // lambda = 0: degenerate-but-diagonalizable zero pair must still resolve
  auto s0 = spectrum_numeric(4.0, 0.0, 0.3);
  auto p0 = spectrum_perturbative(4.0, 0.0, 0.3);
  for (int a = 0; a < 4; ++a) REQUIRE(std::abs(s0.chi[a] - p0.chi[a]) < 1e-10);

  auto sn = spectrum_numeric(100.0, 1e-3, 0.0);
  auto sp = spectrum_perturbative(100.0, 1e-3, 0.0);
  REQUIRE(std::abs(sn.chi[0]) < 1e-12);
  REQUIRE(std::abs(sn.chi[1] - sp.chi[1]) < 1e-6);
  REQUIRE(sn.biorthonormality_defect() < 1e-8);
  // trace identity: sum of eigenvalues = -4 lambda sqrt(kappa)
  cplx tr = 0.0;
  for (auto c : sn.chi) tr += c;
  REQUIRE(std::abs(tr - cplx(-4.0 * 1e-3 * 10.0, 0.0)) < 1e-10);
}

TEST_CASE("spectrum_numeric: eigenvector pairing is stable near z = 0") {
  for (double z : {-0.4, -0.1, 0.0, 0.1, 0.4}) {
    auto sn = spectrum_numeric(25.0, 1e-2, z);
    auto sp = spectrum_perturbative(25.0, 1e-2, z);
    CAPTURE(z);
    for (int a = 0; a < 4; ++a)
      REQUIRE(std::abs(sn.chi[a] - sp.chi[a]) < 2e-3 * std::sqrt(25.0));
  }
}

TEST_CASE("adiabatic_metrics: printed extremal values") {
  auto m4 = adiabatic_metrics(4.0, 1e-3);
  REQUIRE(m4.l[0][1] == 0.0);
  REQUIRE(m4.l[0][2] == 0.0);
  REQUIRE(m4.l[0][3] == 0.0);
  REQUIRE(std::fabs(m4.l[1][2] - 1.0 / (2.0 * std::sqrt(8.0))) < 1e-4);
  REQUIRE(std::fabs(m4.r[1][2] - 2.0 * std::sqrt(4.0)) < 1e-3);

  auto m25 = adiabatic_metrics(25.0, 1e-2);
  const double want_l34 = 2.0 * 1e-2 / (25.0 * std::sqrt(5.0 * 25.0));
  REQUIRE(std::fabs(m25.l[2][3] - want_l34) < 1e-6);
  REQUIRE(std::fabs(m25.r[2][3] - 4.0 * std::sqrt(25.0)) < 1e-2 * 20.0);

  // symmetry l_ab = l_ba and zero diagonal
  for (int a = 0; a < 4; ++a) {
    REQUIRE(m4.l[a][a] == 0.0);
    for (int b = 0; b < 4; ++b)
      REQUIRE(std::fabs(m4.l[a][b] - m4.l[b][a]) < 1e-12);
  }
}

TEST_CASE("adiabatic_final_state: closed form and limits") {
  auto r0 = adiabatic_final_state(10.0, 0.0);
  REQUIRE(std::abs(r0.rho.rho11()) == 0.0);
  REQUIRE(std::abs(r0.rho.rho22() - 1.0) == 0.0);

  auto rinf = adiabatic_final_state(1000.0, 1.0);  // lambda kappa >> 1
  REQUIRE(std::fabs(rinf.rho.rho11().real() - 0.5) < 1e-12);

  auto r = adiabatic_final_state(100.0, 1e-3);
  REQUIRE(std::fabs(r.rho.rho11().real() - 0.35769523) < 1e-7);
  REQUIRE(r.kappa_in_adiabatic_regime);
  REQUIRE_FALSE(adiabatic_final_state(0.5, 1e-3).kappa_in_adiabatic_regime);

  // monotone in lambda kappa and bounded by 1/2
  double prev = -1.0;
  for (double lk : {0.01, 0.1, 1.0, 10.0}) {
    const double P = adiabatic_final_state(10.0, lk / 10.0).rho.rho11().real();
    REQUIRE(P > prev);
    REQUIRE(P <= 0.5);
    prev = P;
  }
}

TEST_CASE("adiabatic_final_state: matches the master equation at kappa = 100") {
  lz_params p;
  p.kappa = 100.0;
  p.lambda = 1e-3;
  p.rel_tol = 1e-9;
  const double Pm =
      lz::evolve_master(p, density_matrix2::pure_up()).excited_population();
  const double Pa = adiabatic_final_state(p.kappa, p.lambda).rho.rho11().real();
  REQUIRE(std::fabs(Pm - Pa) < 0.05 * Pa);
}

TEST_CASE("adiabatic_state_at: interpolates between the asymptotic states") {
  const double kappa = 50.0, lambda = 1e-3;
  auto early = adiabatic_state_at(kappa, lambda, -2000.0);
  REQUIRE(std::abs(early.r[0] - 1.0) < 2e-2);  // still near the initial state
  auto late = adiabatic_state_at(kappa, lambda, 2000.0);
  const double pad = adiabatic_final_state(kappa, lambda).rho.rho11().real();
  REQUIRE(std::fabs(late.r[0].real() - pad) < 2e-2);
  REQUIRE(late.hermiticity_defect() < 1e-14);
}

TEST_CASE("chi2_integral_check: exponent matches -4 pi lambda kappa") {
  auto z = chi2_integral_check(100.0, 0.0);
  REQUIRE(z.exponent == 0.0);

  auto a = chi2_integral_check(100.0, 1e-3);
  CAPTURE(a.exponent, a.expected, a.rel_dev);
  REQUIRE(a.rel_dev < 1e-6);  // = lambda^2; measured headroom ~16x

  auto b = chi2_integral_check(100.0, 5e-2);
  REQUIRE(b.rel_dev < sq(5e-2));
}
