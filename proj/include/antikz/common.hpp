#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace antikz {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// e^{i pi/4} and its conjugate, the ray directions everything here lives on.
inline const cplx phase_pos_quarter{0.7071067811865475244, 0.7071067811865475244};
inline const cplx phase_neg_quarter{0.7071067811865475244, -0.7071067811865475244};

inline double sq(double x) { return x * x; }

/// Requested tolerance could not be met by the evaluation path.
class accuracy_error : public std::runtime_error {
 public:
  explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative scheme (quadrature refinement, ODE stepping) failed to converge.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A value with an a-posteriori absolute error estimate attached.
struct special_value {
  cplx value{};
  double abs_error_estimate = 0.0;
};

}  // namespace antikz
