#ifndef THREEWAVE_SPECIAL_FUNCTIONS_HPP
#define THREEWAVE_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <complex>
#include <stdexcept>

namespace threewave {

/// Invariants (g2, g3) of the cubic 4 s^3 - g2 s - g3.
struct WeierstrassInvariants {
  double g2 = 0.0;
  double g3 = 0.0;

  double discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }
};

struct degenerate_lattice_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Real roots of p3 x^3 + p2 x^2 + p1 x + p0 (p3 != 0), ascending, each
/// polished by one Newton step.
struct CubicRoots {
  int count = 0;                     // 1 or 3
  std::array<double, 3> roots{};     // roots[0..count-1] ascending
  bool nearly_multiple = false;      // discriminant within rounding of zero
};
CubicRoots real_cubic_roots(double p3, double p2, double p1, double p0);

struct JacobiElliptic {
  double sn, cn, dn;
};

/// Jacobi elliptic functions for parameter m = k^2 in [0, 1], by the AGM /
/// descending Landen method.
JacobiElliptic jacobi_elliptic(double u, double m);

/// Complete elliptic integral K(m) (parameter convention m = k^2).
double elliptic_K(double m);

/// Weierstrass p-function on the real axis: the branch with values in
/// [e1, inf), where e1 is the largest real root of 4 s^3 - g2 s - g3.
/// Works for both lattice shapes (three real roots or one).
double weierstrass_p(double u, const WeierstrassInvariants& inv);
double weierstrass_p_prime(double u, const WeierstrassInvariants& inv);

/// The bounded oscillatory branch (real values of p on the line through the
/// imaginary half-period): oscillates in [e3, e2]. Requires three real roots
/// (discriminant > 0).
double weierstrass_p_bounded(double u, const WeierstrassInvariants& inv);
double weierstrass_p_bounded_prime(double u, const WeierstrassInvariants& inv);

/// Real half-period omega_r = int_{e1}^inf ds / sqrt(4 s^3 - g2 s - g3),
/// via the AGM. Throws degenerate_lattice_error when the discriminant
/// vanishes to rounding.
double real_half_period(const WeierstrassInvariants& inv);

/// Whittaker W_{kappa,mu}(x), x > 0, via the integral representation
/// W = e^{-x/2} x^kappa / Gamma(1/2 - kappa + mu) *
///     int_0^inf t^{mu - kappa - 1/2} (1 + t/x)^{mu + kappa - 1/2} e^{-t} dt,
/// valid for 1/2 - kappa + mu > 0.
double whittaker_w(double kappa, double mu, double x);

/// e^{x/2} x^{-kappa} W_{kappa,mu}(x): the integral above divided by Gamma,
/// free of exponential over/underflow. Tends to 1 as x -> inf.
double whittaker_w_scaled(double kappa, double mu, double x);

/// Terminating 2F0(-v1, -v2; ; x) = sum_n (-v1)_n (-v2)_n x^n / n!.
std::complex<double> hyp2f0_terminating(int v1, int v2, std::complex<double> x);

}  // namespace threewave

#endif
