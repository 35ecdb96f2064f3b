#ifndef THREEWAVE_COHERENT_HPP
#define THREEWAVE_COHERENT_HPP

#include <complex>

#include <Eigen/Dense>

#include "threewave/model.hpp"
#include "threewave/quantum.hpp"

namespace threewave {

/// |zhat; c1, c2> in the block basis: amplitudes_n =
/// zhat^n hbar^{n/2} / (g0^n sqrt(n! (v1-n)! (v2-n)!)).
struct ReducedCoherentVector {
  BlockLabel label;
  Complex zhat;
  Eigen::VectorXcd amplitudes;
};
ReducedCoherentVector reduced_coherent_vector(Complex zhat,
                                              const BlockLabel& label,
                                              const ModelParams& p);

/// Max entrywise residuals of the three eigenrelations on |zhat>:
/// A0|z> = hbar z d/dz |z>,  A|z> = z (c1 - hbar z d/dz)(c2 - hbar z d/dz)|z>,
/// A*|z> = g0^2 hbar d/dz |z>.
Eigen::Vector3d coherent_eigenrelation_residuals(const ReducedCoherentVector& v,
                                                 const ModelParams& p);

/// zhat = g0 sqrt(I0 / ((c1-I0)(c2-I0))) e^{i psi0}.
Complex zhat_from_reduced(double I0, double psi0, const ReducedInvariants& inv,
                          double g0);

/// (v1 - I0/hbar)^{v1/2} (v2 - I0/hbar)^{v2/2} e^{i(v1 psi1 + v2 psi2)}:
/// the coefficient with P_{c1,c2}|z> = prefactor * |zhat; c1, c2>.
Complex projection_prefactor(const ActionAngle& aa, const BlockLabel& label,
                             const ModelParams& p);

/// <zhat|what> = sum_n (conj(zhat) what hbar)^n / (g0^{2n} n!(v1-n)!(v2-n)!).
Complex reproducing_kernel(Complex zhat, Complex what, const BlockLabel& label,
                           const ModelParams& p);

/// Weight of the reproducing measure d nu = rho(|zhat|^2) d|zhat|^2 d psi.
double weight_rho(double x, const BlockLabel& label, const ModelParams& p);

/// |2 pi int x^n rho dx * hbar^n / (g0^{2n} n!(v1-n)!(v2-n)!) - 1|.
double moment_check(int n, const BlockLabel& label, const ModelParams& p);

/// The reduced Hamiltonian acting on polynomials of degree <= L in the
/// monomial basis {1, zhat, ..., zhat^L}, assembled from the differential
/// operators A0 = hbar z d/dz, A = g0^2 hbar d/dz,
/// A* = z (c1 - hbar z d/dz)(c2 - hbar z d/dz). Similar (not unitarily) to
/// the tridiagonal block; same spectrum.
Eigen::MatrixXd hamiltonian_ode_matrix(const BlockLabel& label,
                                       const ModelParams& p);

}  // namespace threewave

#endif
