#include "threewave/model.hpp"

#include <cmath>

namespace threewave {

double normalize_angle(double phi) {
  double w = std::remainder(phi, 2.0 * M_PI);
  if (w <= -M_PI) w += 2.0 * M_PI;  // remainder returns [-pi, pi]; fold -pi to +pi
  return w;
}

ActionAngle to_action_angle(const ModeAmplitudes& z) {
  const double a0 = std::abs(z.z0), a1 = std::abs(z.z1), a2 = std::abs(z.z2);
  if (a0 == 0.0 || a1 == 0.0 || a2 == 0.0)
    throw std::domain_error(
        "to_action_angle: amplitudes must be nonzero (point not in Omega^3)");
  const double phi0 = std::arg(z.z0), phi1 = std::arg(z.z1), phi2 = std::arg(z.z2);
  ActionAngle aa;
  aa.I0 = a0 * a0;
  aa.I1 = a0 * a0 + a1 * a1;
  aa.I2 = a0 * a0 + a2 * a2;
  aa.psi0 = normalize_angle(phi0 - phi1 - phi2);
  aa.psi1 = normalize_angle(phi1);
  aa.psi2 = normalize_angle(phi2);
  return aa;
}

ModeAmplitudes from_action_angle(const ActionAngle& aa) {
  if (!(aa.I0 > 0.0) || !(aa.I1 - aa.I0 > 0.0) || !(aa.I2 - aa.I0 > 0.0))
    throw std::domain_error("from_action_angle: need I0 > 0, I1 > I0, I2 > I0");
  const Complex i(0.0, 1.0);
  ModeAmplitudes z;
  z.z0 = std::sqrt(aa.I0) * std::exp(i * (aa.psi0 + aa.psi1 + aa.psi2));
  z.z1 = std::sqrt(aa.I1 - aa.I0) * std::exp(i * aa.psi1);
  z.z2 = std::sqrt(aa.I2 - aa.I0) * std::exp(i * aa.psi2);
  return z;
}

double hamiltonian_classical(const ModeAmplitudes& z, const ModelParams& p) {
  const double n0 = std::norm(z.z0), n1 = std::norm(z.z1), n2 = std::norm(z.z2);
  const Complex inter = z.z0 * std::conj(z.z1) * std::conj(z.z2);
  return p.omega0 * n0 + p.omega1 * n1 + p.omega2 * n2 + 2.0 * p.g0 * inter.real();
}

double hamiltonian_action_angle(const ActionAngle& aa, const ModelParams& p) {
  const double radicand = aa.I0 * (aa.I1 - aa.I0) * (aa.I2 - aa.I0);
  if (radicand < 0.0)
    throw std::domain_error("hamiltonian_action_angle: negative radicand");
  return p.detuning() * aa.I0 + p.omega1 * aa.I1 + p.omega2 * aa.I2 +
         2.0 * p.g0 * std::sqrt(radicand) * std::cos(aa.psi0);
}

std::pair<double, double> momentum_map(const ModeAmplitudes& z) {
  const double n0 = std::norm(z.z0);
  return {n0 + std::norm(z.z1), n0 + std::norm(z.z2)};
}

double casimir(const KummerPoint& kp, const ReducedInvariants& inv, double g0) {
  const double cubic = kp.I0 * (inv.c1 - kp.I0) * (inv.c2 - kp.I0);
  return -0.5 * (kp.x * kp.x + kp.y * kp.y - g0 * g0 * cubic);
}

KummerPoint kummer_embed(double I0, double psi0, const ReducedInvariants& inv,
                         double g0) {
  if (!(I0 > 0.0) || !(I0 < inv.c()))
    throw std::domain_error("kummer_embed: I0 must lie in (0, min(c1, c2))");
  const double r = g0 * std::sqrt(I0 * (inv.c1 - I0) * (inv.c2 - I0));
  return {r * std::cos(psi0), r * std::sin(psi0), I0};
}

}  // namespace threewave
