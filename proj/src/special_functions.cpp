#include "threewave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "threewave/quadrature.hpp"
#include "threewave/roots.hpp"

namespace threewave {

CubicRoots real_cubic_roots(double p3, double p2, double p1, double p0) {
  if (p3 == 0.0)
    throw std::invalid_argument("real_cubic_roots: leading coefficient is 0");
  const auto all = closed_form_roots(3, {p3, p2, p1, p0});

  const double scale = std::max({std::abs(p3), std::abs(p2), std::abs(p1),
                                 std::abs(p0)});
  CubicRoots out;
  // cubic discriminant
  const double disc = 18.0 * p3 * p2 * p1 * p0 - 4.0 * p2 * p2 * p2 * p0 +
                      p2 * p2 * p1 * p1 - 4.0 * p3 * p1 * p1 * p1 -
                      27.0 * p3 * p3 * p0 * p0;
  out.nearly_multiple = std::abs(disc) <= 1e-12 * std::pow(scale, 4);

  for (const auto& r : all) {
    if (std::abs(r.imag()) <= 1e-10 * (1.0 + std::abs(r.real()))) {
      double x = r.real();
      // one more Newton step constrained to the real axis
      const double p = ((p3 * x + p2) * x + p1) * x + p0;
      const double dp = (3.0 * p3 * x + 2.0 * p2) * x + p1;
      if (std::abs(dp) > 1e-300) x -= p / dp;
      out.roots[out.count++] = x;
    }
  }
  if (out.count == 2) {
    // rounding split a double root across the real-axis test; treat as triple
    // real with the pair collapsed
    out.roots[out.count++] = out.roots[1];
    out.nearly_multiple = true;
  }
  std::sort(out.roots.begin(), out.roots.begin() + out.count);
  return out;
}

JacobiElliptic jacobi_elliptic(double u, double m) {
  if (!(m >= 0.0) || !(m <= 1.0))
    throw std::domain_error("jacobi_elliptic: parameter m must be in [0, 1]");
  if (m < 1e-14) {
    const double s = std::sin(u), c = std::cos(u);
    return {s, c, std::sqrt(1.0 - m * s * s)};
  }
  if (1.0 - m < 1e-14) {
    const double t = std::tanh(u), se = 1.0 / std::cosh(u);
    return {t, se, se};
  }

  double a[32], c[32];
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > 1e-17 * a[n] && n < 30) {
    const double an = 0.5 * (a[n] + b);
    const double cn1 = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
    a[n] = an;
    c[n] = cn1;
  }
  const double K = M_PI / (2.0 * a[n]);
  // reduce into one period of sn (4K) to keep the phase small
  u = std::remainder(u, 4.0 * K);

  double phi = std::ldexp(1.0, n) * a[n] * u;
  for (int i = n; i >= 1; --i)
    phi = 0.5 * (phi + std::asin(std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0)));
  const double sn = std::sin(phi), cn = std::cos(phi);
  return {sn, cn, std::sqrt(std::max(1.0 - m * sn * sn, 0.0))};
}

double elliptic_K(double m) {
  if (!(m >= 0.0) || m >= 1.0)
    throw std::domain_error("elliptic_K: parameter m must be in [0, 1)");
  double a = 1.0, b = std::sqrt(1.0 - m);
  while (std::abs(a - b) > 1e-17 * a) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

namespace {

struct Lattice {
  int nreal;              // 3 or 1 real roots
  double e1, e2, e3;      // descending when nreal == 3; e1 = real root else
  double H;               // one-real-root case: H^2 = 3 e1^2 - g2/4
  double m;               // Jacobi parameter of the reduction
  double w;               // argument scale: sn/cn arguments are w*u
  double omega;           // real half-period
};

Lattice reduce_lattice(const WeierstrassInvariants& inv) {
  const double scale =
      std::max({std::abs(inv.g2) * std::abs(inv.g2) * std::abs(inv.g2),
                27.0 * inv.g3 * inv.g3, 1e-300});
  const double disc = inv.discriminant();
  if (std::abs(disc) <= 1e-14 * scale)
    throw degenerate_lattice_error(
        "weierstrass: degenerate lattice (discriminant ~ 0)");

  Lattice lat{};
  const CubicRoots r = real_cubic_roots(4.0, 0.0, -inv.g2, -inv.g3);
  if (disc > 0.0) {
    lat.nreal = 3;
    lat.e3 = r.roots[0];
    lat.e2 = r.roots[1];
    lat.e1 = r.roots[2];
    lat.m = (lat.e2 - lat.e3) / (lat.e1 - lat.e3);
    lat.w = std::sqrt(lat.e1 - lat.e3);
    lat.omega = elliptic_K(lat.m) / lat.w;
  } else {
    lat.nreal = 1;
    lat.e1 = r.roots[0];
    lat.H = std::sqrt(std::max(3.0 * lat.e1 * lat.e1 - 0.25 * inv.g2, 0.0));
    lat.m = std::clamp(0.5 - 0.75 * lat.e1 / lat.H, 0.0, 1.0);
    lat.w = 2.0 * std::sqrt(lat.H);
    lat.omega = elliptic_K(lat.m) / lat.w;
  }
  return lat;
}

void check_pole(double u, const Lattice& lat) {
  const double ur = std::remainder(u, 2.0 * lat.omega);
  if (std::abs(ur) < 1e-12)
    throw pole_error("weierstrass_p: argument within 1e-12 of a lattice point");
}

}  // namespace

double weierstrass_p(double u, const WeierstrassInvariants& inv) {
  const Lattice lat = reduce_lattice(inv);
  check_pole(u, lat);
  const JacobiElliptic j = jacobi_elliptic(lat.w * u, lat.m);
  if (lat.nreal == 3) {
    return lat.e3 + (lat.e1 - lat.e3) / (j.sn * j.sn);
  }
  // 1 - cn = sn^2 / (1 + cn), stable near the pole
  const double one_minus_cn = j.sn * j.sn / (1.0 + j.cn);
  return lat.e1 + lat.H * (1.0 + j.cn) / one_minus_cn;
}

double weierstrass_p_prime(double u, const WeierstrassInvariants& inv) {
  const Lattice lat = reduce_lattice(inv);
  check_pole(u, lat);
  const JacobiElliptic j = jacobi_elliptic(lat.w * u, lat.m);
  if (lat.nreal == 3) {
    return -2.0 * (lat.e1 - lat.e3) * lat.w * j.cn * j.dn / (j.sn * j.sn * j.sn);
  }
  const double opc = 1.0 + j.cn;
  return -4.0 * lat.H * std::sqrt(lat.H) * opc * opc * j.dn /
         (j.sn * j.sn * j.sn);
}

double weierstrass_p_bounded(double u, const WeierstrassInvariants& inv) {
  const Lattice lat = reduce_lattice(inv);
  if (lat.nreal != 3)
    throw degenerate_lattice_error(
        "weierstrass_p_bounded: oscillatory branch needs three real roots");
  const JacobiElliptic j = jacobi_elliptic(lat.w * u, lat.m);
  return lat.e3 + (lat.e2 - lat.e3) * j.sn * j.sn;
}

double weierstrass_p_bounded_prime(double u, const WeierstrassInvariants& inv) {
  const Lattice lat = reduce_lattice(inv);
  if (lat.nreal != 3)
    throw degenerate_lattice_error(
        "weierstrass_p_bounded: oscillatory branch needs three real roots");
  const JacobiElliptic j = jacobi_elliptic(lat.w * u, lat.m);
  return 2.0 * (lat.e2 - lat.e3) * lat.w * j.sn * j.cn * j.dn;
}

double real_half_period(const WeierstrassInvariants& inv) {
  return reduce_lattice(inv).omega;
}

double whittaker_w_scaled(double kappa, double mu, double x) {
  if (!(x > 0.0)) throw std::domain_error("whittaker_w: requires x > 0");
  const double g = 0.5 - kappa + mu;
  if (!(g > 0.0))
    throw std::domain_error("whittaker_w: requires 1/2 - kappa + mu > 0");
  const double q = mu + kappa - 0.5;
  const double integral = de_quad_0inf(
      [&](double t) {
        return std::pow(t, g - 1.0) * std::pow(1.0 + t / x, q) * std::exp(-t);
      },
      1e-12);
  return integral / std::tgamma(g);
}

double whittaker_w(double kappa, double mu, double x) {
  return std::exp(-0.5 * x) * std::pow(x, kappa) *
         whittaker_w_scaled(kappa, mu, x);
}

std::complex<double> hyp2f0_terminating(int v1, int v2, std::complex<double> x) {
  if (v1 < 0 || v2 < 0)
    throw std::domain_error("hyp2f0_terminating: orders must be >= 0");
  const int nmax = std::min(v1, v2);
  std::complex<double> sum = 1.0, term = 1.0;
  for (int n = 0; n < nmax; ++n) {
    term *= double(-v1 + n) * double(-v2 + n) * x / double(n + 1);
    sum += term;
  }
  return sum;
}

}  // namespace threewave
