#ifndef THREEWAVE_CLASSICAL_HPP
#define THREEWAVE_CLASSICAL_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "threewave/model.hpp"
#include "threewave/ode.hpp"
#include "threewave/special_functions.hpp"

namespace threewave {

/// Right-hand side of the three-wave system:
/// dz0/dt = i w0 z0 + i g0 z1 z2,
/// dz1/dt = i w1 z1 + i g0 z0 conj(z2),
/// dz2/dt = i w2 z2 + i g0 z0 conj(z1).
Eigen::Vector3cd threewave_rhs(const ModeAmplitudes& z, const ModelParams& p);

/// Real 6-vector packing (re z0, im z0, re z1, im z1, re z2, im z2) used to
/// drive the generic integrator.
Eigen::VectorXd pack_state(const ModeAmplitudes& z);
ModeAmplitudes unpack_state(const Eigen::VectorXd& y);
OdeRhs threewave_ode(const ModelParams& p);

/// (dI0/dt, dpsi0/dt) of the reduced one-degree-of-freedom system.
std::pair<double, double> reduced_rhs(double I0, double psi0,
                                      const ReducedInvariants& inv,
                                      const ModelParams& p);

/// The cubic p(I0) with (dI0/dt)^2 = p(I0) on the energy level E, plus the
/// physical turning-point bracket containing the initial I0.
struct EnergyCubic {
  double p3, p2, p1, p0;
  double r_lo, r_hi;  // physical bracket (equal for frozen motion)
  double E;
  ReducedInvariants inv;

  double value(double I0) const {
    return ((p3 * I0 + p2) * I0 + p1) * I0 + p0;
  }
};
EnergyCubic energy_cubic(double E, const ReducedInvariants& inv,
                         const ModelParams& p, double I0_init);

/// Closed-form elliptic solution I0(t) = alpha p(g0^{2/3}(t - t0)) + beta on
/// the bounded branch, or the constant solution when g0 = 0.
struct ExactSolution {
  double alpha = 0.0, beta = 0.0;
  WeierstrassInvariants winv;
  double t0 = 0.0;
  int branch_sign = +1;  // sign of dI0/dt at t = 0
  ReducedInvariants inv;
  ModelParams params;
  bool constant_motion = false;  // g0 == 0 fallback
  double I0_const = 0.0;

  double i0(double t) const;
  double di0(double t) const;
  double d2i0(double t) const;
  double period() const;  // +inf for constant motion

 private:
  double scaled_time(double t) const;
};
ExactSolution exact_solution(const ModeAmplitudes& z0, const ModelParams& p);

/// Angles along an exact trajectory: psi0 recovered algebraically from the
/// energy surface (continuous in t), psi1/psi2 integrated by quadrature.
struct PhaseTrajectory {
  std::vector<double> t;
  std::vector<double> I0, psi0, psi1, psi2;
};
PhaseTrajectory phase_recovery(const ExactSolution& sol, const ActionAngle& aa0,
                               const std::vector<double>& t_grid);

/// Nambu bracket {f, g}_C = det[grad C, grad f, grad g] at pt, with the
/// Casimir gradient analytic and f, g gradients by central differences.
using ScalarField = std::function<double(const Eigen::Vector3d&)>;
double nambu_bracket(const ScalarField& f, const ScalarField& g,
                     const KummerPoint& pt, const ReducedInvariants& inv,
                     double g0);

/// (dx/dt, dy/dt, dI0/dt) of the Kummer-shape dynamics.
Eigen::Vector3d kummer_rhs(const KummerPoint& pt, const ReducedInvariants& inv,
                           const ModelParams& p);

/// Max residual of d^2 I0/dt^2 = delta (E - delta I0 - w1 c1 - w2 c2)
///                              + 2 g0^2 (3 I0^2 - 2(c1+c2) I0 + c1 c2).
double i0_second_order_residual(const std::vector<double>& I0,
                                const std::vector<double>& d2I0, double E,
                                const ReducedInvariants& inv,
                                const ModelParams& p);

}  // namespace threewave

#endif
