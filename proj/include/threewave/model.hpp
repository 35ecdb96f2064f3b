#ifndef THREEWAVE_MODEL_HPP
#define THREEWAVE_MODEL_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace threewave {

using Complex = std::complex<double>;

/// Raised when a trajectory hits a degenerate lattice / separatrix where the
/// elliptic solution does not apply.
struct degenerate_motion_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a requested method cannot handle the given configuration
/// (e.g. explicit spectra for L > 8 or non-resonant blocks).
struct capability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an evaluation point sits on (or too close to) a singular set.
struct singularity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mode frequencies, coupling and quantum scale shared by every module.
struct ModelParams {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double g0 = 0.0;
  double hbar = 1.0;

  double detuning() const { return omega0 - omega1 - omega2; }
};

/// Complex mode amplitudes (z0, z1, z2). Zeros are permitted; only the
/// action-angle conversion requires membership in the open stratum.
struct ModeAmplitudes {
  Complex z0, z1, z2;

  Eigen::Vector3cd vec() const { return {z0, z1, z2}; }
  static ModeAmplitudes from_vec(const Eigen::Vector3cd& v) {
    return {v(0), v(1), v(2)};
  }
};

/// Action-angle coordinates; all angles live in (-pi, pi].
struct ActionAngle {
  double I0, I1, I2;
  double psi0, psi1, psi2;
};

/// Point of the ambient R^3 carrying the reduced dynamics (x + iy = g0 z0 zbar1 zbar2).
struct KummerPoint {
  double x, y, I0;
};

/// Values (c1, c2) of the conserved actions on a level set, plus the energy
/// when known.
struct ReducedInvariants {
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> E;

  double c() const { return std::min(c1, c2); }
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double phi);

ActionAngle to_action_angle(const ModeAmplitudes& z);
ModeAmplitudes from_action_angle(const ActionAngle& aa);

double hamiltonian_classical(const ModeAmplitudes& z, const ModelParams& p);
double hamiltonian_action_angle(const ActionAngle& aa, const ModelParams& p);

/// Conserved actions (I1, I2) generating the torus symmetry.
std::pair<double, double> momentum_map(const ModeAmplitudes& z);

/// C(x, y, I0) = -1/2 (x^2 + y^2 - g0^2 I0 (c1 - I0)(c2 - I0)).
double casimir(const KummerPoint& kp, const ReducedInvariants& inv, double g0);

/// Embeds a reduced-phase-space point onto the zero level of the Casimir.
KummerPoint kummer_embed(double I0, double psi0, const ReducedInvariants& inv,
                         double g0);

}  // namespace threewave

#endif
