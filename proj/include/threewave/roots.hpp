#ifndef THREEWAVE_ROOTS_HPP
#define THREEWAVE_ROOTS_HPP

#include <complex>
#include <vector>

namespace threewave {

/// Roots of a real polynomial of degree 2, 3 or 4 by the classical closed
/// formulas, each refined by one complex Newton step on the input polynomial.
/// Coefficients are given in descending degree, coeffs[0] != 0.
std::vector<std::complex<double>> closed_form_roots(
    int degree, const std::vector<double>& coeffs);

}  // namespace threewave

#endif
