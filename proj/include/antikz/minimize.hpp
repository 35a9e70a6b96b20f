#pragma once

// Bracketed 1-D minimization: coarse 33-point grid scan (log-spaced when the
// bracket allows it) followed by golden-section refinement.

#include <cmath>
#include <functional>
#include <vector>

#include "antikz/common.hpp"

namespace antikz {

struct min_result {
  double argmin = 0.0;
  double min = 0.0;
  int n_evals = 0;
};

class no_interior_minimum : public std::runtime_error {
 public:
  explicit no_interior_minimum(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Minimize f on [lo, hi]; f is assumed unimodal there.  Throws
/// no_interior_minimum when the coarse scan is monotone over the bracket.
inline min_result minimize_scalar(const std::function<double(double)>& f,
                                  double lo, double hi, double tol,
                                  int grid_points = 33) {
  if (!(lo < hi)) throw std::domain_error("minimize_scalar: empty bracket");
  const bool log_grid = lo > 0.0 && hi / lo >= 10.0;
  std::vector<double> xs(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    const double u = double(i) / (grid_points - 1);
    xs[i] = log_grid ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u;
  }
  int n_evals = 0;
  int best = 0;
  double fbest = 0.0;
  std::vector<double> fs(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    fs[i] = f(xs[i]);
    ++n_evals;
    if (i == 0 || fs[i] < fbest) {
      fbest = fs[i];
      best = i;
    }
  }
  if (best == 0 || best == grid_points - 1)
    throw no_interior_minimum("minimize_scalar: coarse grid is monotone");

  double a = xs[best - 1], b = xs[best + 1];
  // golden section
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  n_evals += 2;
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
    ++n_evals;
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm), n_evals + 1};
}

}  // namespace antikz
