#include "threewave/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace threewave {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Error coefficients (5th order minus embedded 4th order solution).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients (Hairer-Norsett-Wanner, continuous extension).
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

}  // namespace

OdeSolution rk_integrate(const OdeRhs& rhs, const Eigen::VectorXd& y0,
                         std::pair<double, double> t_span, double rel_tol,
                         double abs_tol, const std::vector<double>* output_grid) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw std::invalid_argument("rk_integrate: tolerances must be positive");
  const double t_begin = t_span.first, t_end = t_span.second;
  if (!(t_end > t_begin))
    throw std::invalid_argument("rk_integrate: t_span must be increasing");

  const Eigen::Index n = y0.size();
  Eigen::VectorXd y = y0, ynew(n), yerr(n), ytmp(n);
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

  OdeSolution sol;
  std::size_t grid_pos = 0;
  auto emit_initial = [&] {
    if (output_grid) {
      while (grid_pos < output_grid->size() &&
             (*output_grid)[grid_pos] <= t_begin) {
        sol.times.push_back((*output_grid)[grid_pos]);
        sol.states.push_back(y0);
        ++grid_pos;
      }
    } else {
      sol.times.push_back(t_begin);
      sol.states.push_back(y0);
    }
  };
  emit_initial();

  double t = t_begin;
  rhs(t, y, k1);

  // initial step heuristic
  double scale0 = abs_tol + rel_tol * y.cwiseAbs().maxCoeff();
  double d0 = y.norm() / scale0, dd1 = k1.norm() / scale0;
  double h = (d0 > 1e-10 && dd1 > 1e-10) ? 0.01 * d0 / dd1
                                         : 1e-6 * (t_end - t_begin);
  h = std::min(h, t_end - t_begin);

  const double h_floor = 1e-14 * std::abs(t_end - t_begin);
  const double safety = 0.9, min_scale = 0.2, max_scale = 6.0;

  while (t < t_end) {
    if (t + h > t_end) h = t_end - t;
    if (h < h_floor)
      throw step_underflow_error("rk_integrate: step size underflow");

    rhs(t + c2 * h, y + h * (a21 * k1), k2);
    rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2), k3);
    rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3), k4);
    rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5);
    rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5),
        k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);  // FSAL
    yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc =
          abs_tol + rel_tol * std::max(std::abs(y(i)), std::abs(ynew(i)));
      err = std::max(err, std::abs(yerr(i)) / sc);
    }

    if (err <= 1.0) {
      // accepted; sample dense output inside (t, t+h]
      if (output_grid) {
        while (grid_pos < output_grid->size() &&
               (*output_grid)[grid_pos] <= t + h + 1e-300) {
          const double ts = (*output_grid)[grid_pos];
          if (ts < t) { ++grid_pos; continue; }
          const double th = std::clamp((ts - t) / h, 0.0, 1.0);
          // continuous extension
          const double th1 = 1.0 - th;
          Eigen::VectorXd rc1 = y;
          Eigen::VectorXd rc2 = ynew - y;
          Eigen::VectorXd rc3 = h * k1 - rc2;
          Eigen::VectorXd rc4 = rc2 - h * k7 - rc3;
          Eigen::VectorXd rc5 =
              h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
          Eigen::VectorXd ys =
              rc1 + th * (rc2 + th1 * (rc3 + th * (rc4 + th1 * rc5)));
          sol.times.push_back(ts);
          sol.states.push_back(std::move(ys));
          ++grid_pos;
        }
      }
      t += h;
      y.swap(ynew);
      k1.swap(k7);
      if (!output_grid) {
        sol.times.push_back(t);
        sol.states.push_back(y);
      }
      sol.max_error_estimate = std::max(sol.max_error_estimate, err * rel_tol);
      ++sol.accepted_steps;
      double fac = safety * std::pow(err > 0 ? err : 1e-16, -0.2);
      h *= std::clamp(fac, min_scale, max_scale);
    } else {
      ++sol.rejected_steps;
      h *= std::max(min_scale, safety * std::pow(err, -0.2));
    }
  }

  return sol;
}

}  // namespace threewave
