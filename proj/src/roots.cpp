#include "threewave/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace threewave {

namespace {

using Cplx = std::complex<double>;

Cplx polish(const std::vector<double>& c, Cplx x) {
  // one Newton step; falls back to the input when the derivative is tiny
  Cplx p = 0.0, dp = 0.0;
  for (double ck : c) {
    dp = dp * x + p;
    p = p * x + ck;
  }
  if (std::abs(dp) < 1e-300) return x;
  return x - p / dp;
}

std::vector<Cplx> quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
    if (q != 0.0) return {q / a, c / q};
    return {Cplx(sq / (2 * a)), Cplx(-sq / (2 * a))};
  }
  const double re = -b / (2 * a), im = std::sqrt(-disc) / (2 * a);
  return {{re, im}, {re, -im}};
}

// monic cubic x^3 + B x^2 + C x + D (Numerical-Recipes style)
std::vector<Cplx> cubic_monic(double B, double C, double D) {
  const double Q = (B * B - 3.0 * C) / 9.0;
  const double R = (2.0 * B * B * B - 9.0 * B * C + 27.0 * D) / 54.0;
  const double R2 = R * R, Q3 = Q * Q * Q;
  if (R2 < Q3) {
    const double theta = std::acos(std::clamp(R / std::sqrt(Q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(Q);
    return {Cplx(m * std::cos(theta / 3.0) - B / 3.0),
            Cplx(m * std::cos((theta + 2.0 * M_PI) / 3.0) - B / 3.0),
            Cplx(m * std::cos((theta - 2.0 * M_PI) / 3.0) - B / 3.0)};
  }
  const double A =
      -std::copysign(std::cbrt(std::abs(R) + std::sqrt(R2 - Q3)), R);
  const double Bc = (A != 0.0) ? Q / A : 0.0;
  const double real_root = A + Bc - B / 3.0;
  const double re = -0.5 * (A + Bc) - B / 3.0;
  const double im = 0.5 * std::sqrt(3.0) * (A - Bc);
  return {Cplx(real_root), {re, im}, {re, -im}};
}

std::vector<Cplx> quartic(const std::vector<double>& c) {
  // normalize to monic x^4 + b x^3 + cq x^2 + d x + e, then depress
  const double b = c[1] / c[0], cq = c[2] / c[0], d = c[3] / c[0],
               e = c[4] / c[0];
  const double p = cq - 3.0 * b * b / 8.0;
  const double q = d - 0.5 * b * cq + b * b * b / 8.0;
  const double r =
      e - 0.25 * b * d + b * b * cq / 16.0 - 3.0 * b * b * b * b / 256.0;
  std::vector<Cplx> ys;
  if (std::abs(q) < 1e-14 * (1.0 + std::abs(p) + std::abs(r))) {
    // biquadratic: y^2 solves z^2 + p z + r
    for (Cplx z : quadratic(1.0, p, r)) {
      const Cplx s = std::sqrt(z);
      ys.push_back(s);
      ys.push_back(-s);
    }
  } else {
    // factor (y^2+sy+u)(y^2-sy+v); s^2 is a root of the resolvent cubic
    auto res = cubic_monic(2.0 * p, p * p - 4.0 * r, -q * q);
    double s2 = 0.0;
    for (const Cplx& z : res)
      if (std::abs(z.imag()) < 1e-9 * (1.0 + std::abs(z.real())))
        s2 = std::max(s2, z.real());
    const double s = std::sqrt(std::max(s2, 0.0));
    const double u = 0.5 * ((p + s2) - q / s);
    const double v = 0.5 * ((p + s2) + q / s);
    for (Cplx y : quadratic(1.0, s, u)) ys.push_back(y);
    for (Cplx y : quadratic(1.0, -s, v)) ys.push_back(y);
  }
  for (Cplx& y : ys) y -= b / 4.0;
  return ys;
}

}  // namespace

std::vector<Cplx> closed_form_roots(int degree, const std::vector<double>& c) {
  if (degree < 2 || degree > 4)
    throw std::invalid_argument("closed_form_roots: degree must be 2, 3 or 4");
  if (int(c.size()) != degree + 1)
    throw std::invalid_argument("closed_form_roots: wrong coefficient count");
  if (c[0] == 0.0)
    throw std::invalid_argument("closed_form_roots: leading coefficient is 0");

  std::vector<Cplx> roots;
  switch (degree) {
    case 2:
      roots = quadratic(c[0], c[1], c[2]);
      break;
    case 3:
      roots = cubic_monic(c[1] / c[0], c[2] / c[0], c[3] / c[0]);
      break;
    default:
      roots = quartic(c);
      break;
  }
  for (Cplx& x : roots) x = polish(c, x);
  std::sort(roots.begin(), roots.end(), [](const Cplx& a, const Cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

}  // namespace threewave
