#ifndef THREEWAVE_QUADRATURE_HPP
#define THREEWAVE_QUADRATURE_HPP

#include <functional>
#include <limits>
#include <stdexcept>

namespace threewave {

struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b].
/// b may be +infinity; the tail is mapped to a finite interval by
/// x = a + t/(1-t). Throws quadrature_error when the subdivision budget is
/// exhausted before the requested relative accuracy is met.
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12);

/// Double-exponential quadrature of f over (0, inf) for integrands decaying
/// exponentially, via the substitution x = exp((pi/2) sinh u); a fixed-order
/// trapezoid refined until two consecutive levels agree to rel_tol.
double de_quad_0inf(const std::function<double(double)>& f,
                    double rel_tol = 1e-12);

}  // namespace threewave

#endif
