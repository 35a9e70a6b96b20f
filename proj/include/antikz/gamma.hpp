#pragma once

// Complex gamma function via the Lanczos approximation (g = 7, n = 9
// coefficient set), with reflection for Re z < 1/2.  Good to ~1e-13
// relative over the strip |z| <= 200 used here.

#include <cmath>

#include "antikz/common.hpp"

namespace antikz {

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline cplx lanczos_sum(cplx z) {
  cplx a{lanczos_c[0], 0.0};
  for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (z + double(i - 1));
  return a;
}

// log(sin(pi z)) without overflow for large |Im z|.
inline cplx log_sin_pi(cplx z) {
  const cplx iz = cplx(0.0, 1.0) * pi * z;
  if (z.imag() > 18.0) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
    return std::log(cplx(0.0, 0.5)) - iz + std::log(1.0 - std::exp(2.0 * iz));
  }
  if (z.imag() < -18.0) {
    return std::log(cplx(0.0, -0.5)) + iz + std::log(1.0 - std::exp(-2.0 * iz));
  }
  return std::log(std::sin(pi * z));
}

}  // namespace detail

/// Gamma(z) for complex z.  Throws std::domain_error at the poles.
inline cplx gamma_complex(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("gamma_complex: pole at non-positive integer");
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return pi / (std::sin(pi * z) * gamma_complex(1.0 - z));
  }
  const cplx t = z + (detail::lanczos_g - 0.5);
  return std::sqrt(2.0 * pi) * std::pow(t, z - 0.5) * std::exp(-t) *
         detail::lanczos_sum(z);
}

/// log Gamma(z); branch is unspecified (only exp(combinations) are used here).
inline cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    return std::log(cplx(pi, 0.0)) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
  }
  const cplx t = z + (detail::lanczos_g - 0.5);
  return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t +
         std::log(detail::lanczos_sum(z));
}

/// 1/Gamma(z), entire; returns 0 at the poles of Gamma.
inline cplx gamma_reciprocal(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    return 0.0;
  if (z.real() < 0.5) {
    return std::sin(pi * z) * gamma_complex(1.0 - z) / pi;
  }
  return 1.0 / gamma_complex(z);
}

}  // namespace antikz
