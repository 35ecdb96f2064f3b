#include "threewave/classical.hpp"

#include <cmath>
#include <limits>

namespace threewave {

namespace {
constexpr Complex kI(0.0, 1.0);

double cbrt_sq(double g0) { return std::cbrt(g0 * g0); }  // g0^{2/3} >= 0
}  // namespace

Eigen::Vector3cd threewave_rhs(const ModeAmplitudes& z, const ModelParams& p) {
  Eigen::Vector3cd f;
  f(0) = kI * p.omega0 * z.z0 + kI * p.g0 * z.z1 * z.z2;
  f(1) = kI * p.omega1 * z.z1 + kI * p.g0 * z.z0 * std::conj(z.z2);
  f(2) = kI * p.omega2 * z.z2 + kI * p.g0 * z.z0 * std::conj(z.z1);
  return f;
}

Eigen::VectorXd pack_state(const ModeAmplitudes& z) {
  Eigen::VectorXd y(6);
  y << z.z0.real(), z.z0.imag(), z.z1.real(), z.z1.imag(), z.z2.real(),
      z.z2.imag();
  return y;
}

ModeAmplitudes unpack_state(const Eigen::VectorXd& y) {
  return {{y(0), y(1)}, {y(2), y(3)}, {y(4), y(5)}};
}

OdeRhs threewave_ode(const ModelParams& p) {
  return [p](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const Eigen::Vector3cd f = threewave_rhs(unpack_state(y), p);
    dy.resize(6);
    dy << f(0).real(), f(0).imag(), f(1).real(), f(1).imag(), f(2).real(),
        f(2).imag();
  };
}

std::pair<double, double> reduced_rhs(double I0, double psi0,
                                      const ReducedInvariants& inv,
                                      const ModelParams& p) {
  const double c1 = inv.c1, c2 = inv.c2;
  const double tol = 1e-12 * std::max({1.0, c1, c2});
  if (std::abs(I0) < tol || std::abs(I0 - c1) < tol || std::abs(I0 - c2) < tol)
    throw singularity_error("reduced_rhs: I0 on the singular set {0, c1, c2}");
  const double P = I0 * (c1 - I0) * (c2 - I0);
  if (P < 0.0)
    throw std::domain_error("reduced_rhs: I0 outside (0, min(c1, c2))");
  const double sq = std::sqrt(P);
  const double dI0 = 2.0 * p.g0 * sq * std::sin(psi0);
  const double dpsi0 =
      p.detuning() +
      p.g0 * (3.0 * I0 * I0 - 2.0 * (c1 + c2) * I0 + c1 * c2) / sq *
          std::cos(psi0);
  return {dI0, dpsi0};
}

EnergyCubic energy_cubic(double E, const ReducedInvariants& inv,
                         const ModelParams& p, double I0_init) {
  const double g2 = p.g0 * p.g0, d = p.detuning();
  const double W = p.omega1 * inv.c1 + p.omega2 * inv.c2;
  EnergyCubic cub;
  cub.E = E;
  cub.inv = inv;
  cub.p3 = 4.0 * g2;
  cub.p2 = -4.0 * g2 * (inv.c1 + inv.c2) - d * d;
  cub.p1 = 4.0 * g2 * inv.c1 * inv.c2 + 2.0 * E * d - 2.0 * d * W;
  cub.p0 = 2.0 * E * W - W * W - E * E;

  const double scale =
      std::max({std::abs(cub.p3), std::abs(cub.p2), std::abs(cub.p1),
                std::abs(cub.p0), 1e-300});
  if (cub.value(I0_init) < -1e-9 * scale)
    throw std::domain_error(
        "energy_cubic: cubic negative at the initial I0 (no physical bracket)");

  if (p.g0 == 0.0) {
    // motion frozen: (dI0/dt)^2 = -(E - d I0 - W)^2 <= 0 forces dI0/dt = 0
    cub.r_lo = cub.r_hi = I0_init;
    return cub;
  }

  const CubicRoots roots = real_cubic_roots(cub.p3, cub.p2, cub.p1, cub.p0);
  if (roots.count < 3)
    throw degenerate_motion_error(
        "energy_cubic: fewer than three turning points (non-oscillatory)");
  // with p3 > 0 the cubic is >= 0 on [r1, r2]; the physical motion lives there
  cub.r_lo = roots.roots[0];
  cub.r_hi = roots.roots[1];
  return cub;
}

double ExactSolution::scaled_time(double t) const {
  return cbrt_sq(params.g0) * (t - t0);
}

double ExactSolution::i0(double t) const {
  if (constant_motion) return I0_const;
  return alpha * weierstrass_p_bounded(scaled_time(t), winv) + beta;
}

double ExactSolution::di0(double t) const {
  if (constant_motion) return 0.0;
  // alpha * g0^{2/3} = 1
  return weierstrass_p_bounded_prime(scaled_time(t), winv);
}

double ExactSolution::d2i0(double t) const {
  if (constant_motion) return 0.0;
  const double wp = weierstrass_p_bounded(scaled_time(t), winv);
  return cbrt_sq(params.g0) * (6.0 * wp * wp - 0.5 * winv.g2);
}

double ExactSolution::period() const {
  if (constant_motion) return std::numeric_limits<double>::infinity();
  return 2.0 * real_half_period(winv) / cbrt_sq(params.g0);
}

ExactSolution exact_solution(const ModeAmplitudes& z0, const ModelParams& p) {
  const ActionAngle aa = to_action_angle(z0);
  ExactSolution sol;
  sol.params = p;
  sol.inv = {aa.I1, aa.I2, hamiltonian_classical(z0, p)};

  if (p.g0 == 0.0) {
    sol.constant_motion = true;
    sol.I0_const = aa.I0;
    return sol;
  }

  const double E = *sol.inv.E;
  const EnergyCubic cub = energy_cubic(E, sol.inv, p, aa.I0);
  sol.alpha = 1.0 / cbrt_sq(p.g0);
  sol.beta = -cub.p2 / (3.0 * cub.p3);
  sol.winv.g2 = sol.alpha * (cub.p2 * cub.p2 / (3.0 * cub.p3) - cub.p1);
  sol.winv.g3 = -(((cub.p3 * sol.beta + cub.p2) * sol.beta + cub.p1) * sol.beta +
                  cub.p0);
  if (sol.winv.discriminant() <= 0.0)
    throw degenerate_motion_error(
        "exact_solution: separatrix or equilibrium (discriminant <= 0)");

  // locate u* in [0, omega] with p_bounded(u*) = s0 (p_bounded is increasing)
  const double s0 = (aa.I0 - sol.beta) * cbrt_sq(p.g0);  // (I0 - beta)/alpha
  const double omega = real_half_period(sol.winv);
  double lo = 0.0, hi = omega;
  for (int it = 0; it < 200 && (hi - lo) > 1e-17 * omega; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (weierstrass_p_bounded(mid, sol.winv) < s0)
      lo = mid;
    else
      hi = mid;
  }
  const double ustar = 0.5 * (lo + hi);

  const double di0_0 = reduced_rhs(aa.I0, aa.psi0, sol.inv, p).first;
  sol.branch_sign = di0_0 >= 0.0 ? +1 : -1;
  const double u_off = sol.branch_sign > 0 ? ustar : -ustar;
  sol.t0 = -u_off / cbrt_sq(p.g0);
  return sol;
}

PhaseTrajectory phase_recovery(const ExactSolution& sol, const ActionAngle& aa0,
                               const std::vector<double>& t_grid) {
  const ModelParams& p = sol.params;
  const double c1 = sol.inv.c1, c2 = sol.inv.c2;
  const double W = p.omega1 * c1 + p.omega2 * c2;
  const double E = sol.inv.E ? *sol.inv.E : hamiltonian_action_angle(aa0, p);
  const double delta = p.detuning();

  PhaseTrajectory out;
  out.t = t_grid;
  const std::size_t n = t_grid.size();
  out.I0.resize(n);
  out.psi0.resize(n);

  // psi0: algebraic from the energy surface; 2*g0*sqrt(P)*(cos, sin) =
  // (E - delta I0 - W, dI0/dt). atan2 on the unnormalized pair keeps the
  // correct quadrant; unwrap to a continuous angle along the grid.
  double prev = aa0.psi0;
  for (std::size_t k = 0; k < n; ++k) {
    const double I0 = sol.i0(t_grid[k]);
    out.I0[k] = I0;
    double psi;
    if (p.g0 == 0.0) {
      psi = aa0.psi0 + delta * (t_grid[k] - t_grid.front());
    } else {
      const double cos_part = (E - delta * I0 - W) / p.g0;
      const double sin_part = sol.di0(t_grid[k]) / p.g0;
      psi = (cos_part == 0.0 && sin_part == 0.0)
                ? prev
                : std::atan2(sin_part, cos_part);
      psi += 2.0 * M_PI * std::round((prev - psi) / (2.0 * M_PI));
    }
    out.psi0[k] = psi;
    prev = psi;
  }

  // psi1, psi2 by quadrature: dpsi_i/dt = w_i + Wfun(I0)/(c_i - I0) with
  // Wfun = g0 sqrt(P) cos(psi0) = (E - delta I0 - W)/2.
  auto rhs = [&](double t, const Eigen::VectorXd&, Eigen::VectorXd& dy) {
    const double I0 = sol.i0(t);
    const double Wf = 0.5 * (E - delta * I0 - W);
    dy.resize(2);
    dy(0) = p.omega1 + Wf / (c1 - I0);
    dy(1) = p.omega2 + Wf / (c2 - I0);
  };
  Eigen::VectorXd y0(2);
  y0 << aa0.psi1, aa0.psi2;
  out.psi1.resize(n);
  out.psi2.resize(n);
  if (n == 1 || t_grid.back() <= t_grid.front()) {
    for (std::size_t k = 0; k < n; ++k) {
      out.psi1[k] = aa0.psi1;
      out.psi2[k] = aa0.psi2;
    }
    return out;
  }
  OdeSolution q = rk_integrate(rhs, y0, {t_grid.front(), t_grid.back()}, 1e-12,
                               1e-13, &t_grid);
  for (std::size_t k = 0; k < n; ++k) {
    out.psi1[k] = q.states[k](0);
    out.psi2[k] = q.states[k](1);
  }
  return out;
}

double nambu_bracket(const ScalarField& f, const ScalarField& g,
                     const KummerPoint& pt, const ReducedInvariants& inv,
                     double g0) {
  const Eigen::Vector3d x(pt.x, pt.y, pt.I0);
  const double h = 1e-6 * std::max(1.0, x.cwiseAbs().maxCoeff());
  auto grad = [&](const ScalarField& fn) {
    Eigen::Vector3d gr;
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector3d xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      gr(i) = (fn(xp) - fn(xm)) / (2.0 * h);
    }
    return gr;
  };
  const double Pp = 3.0 * pt.I0 * pt.I0 - 2.0 * (inv.c1 + inv.c2) * pt.I0 +
                    inv.c1 * inv.c2;
  Eigen::Matrix3d M;
  M.col(0) = Eigen::Vector3d(-pt.x, -pt.y, 0.5 * g0 * g0 * Pp);
  M.col(1) = grad(f);
  M.col(2) = grad(g);
  return M.determinant();
}

Eigen::Vector3d kummer_rhs(const KummerPoint& pt, const ReducedInvariants& inv,
                           const ModelParams& p) {
  const double d = p.detuning();
  const double Pp = 3.0 * pt.I0 * pt.I0 - 2.0 * (inv.c1 + inv.c2) * pt.I0 +
                    inv.c1 * inv.c2;
  return {-d * pt.y, d * pt.x + p.g0 * p.g0 * Pp, 2.0 * pt.y};
}

double i0_second_order_residual(const std::vector<double>& I0,
                                const std::vector<double>& d2I0, double E,
                                const ReducedInvariants& inv,
                                const ModelParams& p) {
  if (I0.size() != d2I0.size())
    throw std::invalid_argument("i0_second_order_residual: size mismatch");
  const double d = p.detuning();
  const double W = p.omega1 * inv.c1 + p.omega2 * inv.c2;
  const double g2 = p.g0 * p.g0;
  double worst = 0.0;
  for (std::size_t k = 0; k < I0.size(); ++k) {
    const double rhs =
        d * (E - d * I0[k] - W) +
        2.0 * g2 * (3.0 * I0[k] * I0[k] - 2.0 * (inv.c1 + inv.c2) * I0[k] +
                    inv.c1 * inv.c2);
    worst = std::max(worst, std::abs(d2I0[k] - rhs));
  }
  return worst;
}

}  // namespace threewave
