#include "threewave/coherent.hpp"

#include <cmath>

#include "threewave/quadrature.hpp"
#include "threewave/special_functions.hpp"

namespace threewave {

namespace {
constexpr Complex kI(0.0, 1.0);

double factorial(int n) { return std::tgamma(double(n) + 1.0); }
}  // namespace

ReducedCoherentVector reduced_coherent_vector(Complex zhat,
                                              const BlockLabel& label,
                                              const ModelParams& p) {
  if (p.g0 == 0.0)
    throw std::domain_error("reduced_coherent_vector: requires g0 != 0");
  const int L = label.L();
  ReducedCoherentVector v;
  v.label = label;
  v.zhat = zhat;
  v.amplitudes.resize(L + 1);
  for (int n = 0; n <= L; ++n) {
    const double denom = std::sqrt(factorial(n) * factorial(label.v1 - n) *
                                   factorial(label.v2 - n));
    v.amplitudes(n) = std::pow(zhat, n) * std::pow(p.hbar, 0.5 * n) /
                      (std::pow(p.g0, n) * denom);
  }
  return v;
}

Eigen::Vector3d coherent_eigenrelation_residuals(const ReducedCoherentVector& v,
                                                 const ModelParams& p) {
  const BlockLabel& lb = v.label;
  const int L = lb.L();
  const double h = p.hbar;
  const double c1 = lb.c1(h), c2 = lb.c2(h);
  const BlockOperators ops = block_operators(lb, p);

  // d/dzhat acts analytically on the amplitude polynomial:
  // a_n(z) = coef_n z^n  =>  a_n' = n coef_n z^{n-1}, and z a_n' = n a_n.
  Eigen::VectorXcd deriv = Eigen::VectorXcd::Zero(L + 1);
  Eigen::VectorXcd zderiv(L + 1);
  for (int n = 0; n <= L; ++n) {
    zderiv(n) = double(n) * v.amplitudes(n);
    if (n >= 1) {
      const double coef =
          std::pow(p.hbar, 0.5 * n) /
          (std::pow(p.g0, n) * std::sqrt(factorial(n) * factorial(lb.v1 - n) *
                                         factorial(lb.v2 - n)));
      deriv(n) = double(n) * coef * std::pow(v.zhat, n - 1);
    }
  }

  const Eigen::VectorXcd lhs0 = ops.A0.cast<Complex>() * v.amplitudes;
  const Eigen::VectorXcd rhs0 = h * zderiv;

  // (c1 - hbar z d/dz)(c2 - hbar z d/dz)|z>, then multiply by zhat
  Eigen::VectorXcd tmp(L + 1);
  for (int n = 0; n <= L; ++n)
    tmp(n) = (c1 - h * n) * (c2 - h * n) * v.amplitudes(n);
  const Eigen::VectorXcd rhsA = v.zhat * tmp;
  const Eigen::VectorXcd lhsA = ops.A.cast<Complex>() * v.amplitudes;

  const Eigen::VectorXcd lhsS = ops.Astar.cast<Complex>() * v.amplitudes;
  const Eigen::VectorXcd rhsS = p.g0 * p.g0 * h * deriv;

  return {(lhs0 - rhs0).cwiseAbs().maxCoeff(),
          (lhsA - rhsA).cwiseAbs().maxCoeff(),
          (lhsS - rhsS).cwiseAbs().maxCoeff()};
}

Complex zhat_from_reduced(double I0, double psi0, const ReducedInvariants& inv,
                          double g0) {
  if (!(I0 > 0.0) || !(I0 < inv.c()))
    throw std::domain_error("zhat_from_reduced: I0 must lie in (0, min(c1,c2))");
  const double mod =
      g0 * std::sqrt(I0 / ((inv.c1 - I0) * (inv.c2 - I0)));
  return mod * std::exp(kI * psi0);
}

Complex projection_prefactor(const ActionAngle& aa, const BlockLabel& label,
                             const ModelParams& p) {
  const double r1 = label.v1 - aa.I0 / p.hbar;
  const double r2 = label.v2 - aa.I0 / p.hbar;
  if (r1 < 0.0 || r2 < 0.0)
    throw std::domain_error(
        "projection_prefactor: requires I0 < hbar * min(v1, v2)");
  return std::pow(r1, 0.5 * label.v1) * std::pow(r2, 0.5 * label.v2) *
         std::exp(kI * (label.v1 * aa.psi1 + label.v2 * aa.psi2));
}

Complex reproducing_kernel(Complex zhat, Complex what, const BlockLabel& label,
                           const ModelParams& p) {
  const int L = label.L();
  const Complex w = std::conj(zhat) * what * p.hbar / (p.g0 * p.g0);
  // term_n = w^n / (n! (v1-n)! (v2-n)!)
  Complex term = 1.0 / (factorial(label.v1) * factorial(label.v2));
  Complex sum = term;
  for (int n = 1; n <= L; ++n) {
    term *= w * double(label.v1 - n + 1) * double(label.v2 - n + 1) / double(n);
    sum += term;
  }
  return sum;
}

double weight_rho(double x, const BlockLabel& label, const ModelParams& p) {
  if (!(x > 0.0)) throw std::domain_error("weight_rho: requires x > 0");
  const int v1 = label.v1, v2 = label.v2;
  const double z = p.g0 * p.g0 / (p.hbar * x);
  const double kappa = -0.5 * (v1 + v2 + 3);
  const double mu = 0.5 * (v1 - v2);
  // closed form with the scaled Whittaker function; the x powers of the
  // displayed formula cancel against z^kappa:
  // rho = (v1+1)!(v2+1)! hbar/(2 pi g0^2) * e^{z/2} z^{-kappa} W(z)
  const double C = factorial(v1 + 1) * factorial(v2 + 1) * p.hbar /
                   (2.0 * M_PI * p.g0 * p.g0);
  return C * whittaker_w_scaled(kappa, mu, z);
}

double moment_check(int n, const BlockLabel& label, const ModelParams& p) {
  if (n < 0 || n > label.L())
    throw std::out_of_range("moment_check: n outside [0, L]");
  const double m_n = 2.0 * M_PI *
                     adaptive_quad(
                         [&](double x) {
                           return std::pow(x, n) * weight_rho(x, label, p);
                         },
                         0.0, std::numeric_limits<double>::infinity(), 1e-9);
  const double target = std::pow(p.g0 * p.g0 / p.hbar, n) * factorial(n) *
                        factorial(label.v1 - n) * factorial(label.v2 - n);
  return std::abs(m_n / target - 1.0);
}

Eigen::MatrixXd hamiltonian_ode_matrix(const BlockLabel& label,
                                       const ModelParams& p) {
  const int L = label.L();
  const double h = p.hbar;
  const double shift = p.omega1 * label.c1(h) + p.omega2 * label.c2(h);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(L + 1, L + 1);
  for (int n = 0; n <= L; ++n) {
    M(n, n) = p.detuning() * h * n + shift;           // delta A0 + shift
    if (n >= 1) M(n - 1, n) = p.g0 * p.g0 * h * n;    // A zhat^n
    if (n < L)                                        // A* zhat^n
      M(n + 1, n) = h * h * double(label.v1 - n) * double(label.v2 - n);
  }
  return M;
}

}  // namespace threewave
