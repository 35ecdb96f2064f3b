#ifndef THREEWAVE_ODE_HPP
#define THREEWAVE_ODE_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace threewave {

/// Trajectory returned by rk_integrate: samples at the requested grid (or at
/// every accepted step when no grid is given).
struct OdeSolution {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  double max_error_estimate = 0.0;  // largest accepted local-error estimate
  long accepted_steps = 0;
  long rejected_steps = 0;

  const Eigen::VectorXd& back() const { return states.back(); }
};

using OdeRhs =
    std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct step_underflow_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive Dormand-Prince 5(4) with 5th-order dense output.
/// If output_grid is non-null its entries must be increasing and inside t_span;
/// samples are produced exactly there. Otherwise every accepted step is stored.
OdeSolution rk_integrate(const OdeRhs& rhs, const Eigen::VectorXd& y0,
                         std::pair<double, double> t_span,
                         double rel_tol = 1e-10, double abs_tol = 1e-12,
                         const std::vector<double>* output_grid = nullptr);

}  // namespace threewave

#endif
