#ifndef THREEWAVE_STAR_PRODUCT_HPP
#define THREEWAVE_STAR_PRODUCT_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "threewave/rational.hpp"

namespace threewave {

/// Exact Gaussian rational a + i b.
struct CRational {
  Rational re, im;

  CRational() = default;
  CRational(Rational r) : re(r) {}  // NOLINT (implicit by design)
  CRational(Rational r, Rational i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CRational conj() const { return {re, -im}; }

  friend CRational operator+(const CRational& a, const CRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend CRational operator-(const CRational& a, const CRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  CRational operator-() const { return {-re, -im}; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Polynomial in the formal parameter hbar with Gaussian-rational
/// coefficients; coeffs[k] multiplies hbar^k, no trailing zeros stored.
class HbarPoly {
 public:
  HbarPoly() = default;
  HbarPoly(CRational c) {  // NOLINT (implicit by design)
    if (!c.is_zero()) coeffs_.push_back(c);
  }

  static HbarPoly hbar_power(int k, CRational c = CRational(Rational(1)));

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return int(coeffs_.size()) - 1; }
  CRational at(int k) const {
    return k < int(coeffs_.size()) ? coeffs_[k] : CRational{};
  }
  CRational constant_term() const { return at(0); }

  /// Exact division by hbar; requires a vanishing constant term.
  HbarPoly shifted_down() const;

  friend HbarPoly operator+(const HbarPoly& a, const HbarPoly& b);
  friend HbarPoly operator-(const HbarPoly& a, const HbarPoly& b);
  friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b);
  friend bool operator==(const HbarPoly& a, const HbarPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  HbarPoly operator-() const;

 private:
  void trim();
  std::vector<CRational> coeffs_;
};

/// Exponents (m0, m1, m2 | n0, n1, n2) of zbar0^m0 zbar1^m1 zbar2^m2
/// z0^n0 z1^n1 z2^n2.
using Exponents = std::array<int, 6>;

/// Exact polynomial in (z, zbar) with HbarPoly coefficients: the carrier of
/// covariant symbols and their star-product identities.
class PolySymbol {
 public:
  PolySymbol() = default;

  static PolySymbol constant(CRational c);
  static PolySymbol monomial(const Exponents& e,
                             CRational c = CRational(Rational(1)));

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, HbarPoly>& terms() const { return terms_; }
  void add(const Exponents& e, const HbarPoly& c);

  /// d/dz_i (i = 0,1,2) and d/dzbar_i.
  PolySymbol dz(int i) const;
  PolySymbol dzbar(int i) const;

  /// Setting hbar -> 0 in every coefficient.
  PolySymbol at_hbar_zero() const;
  /// Exact division of every coefficient by hbar.
  PolySymbol divided_by_hbar() const;
  PolySymbol conjugated() const;

  int max_z_degree(int i) const;
  int max_zbar_degree(int i) const;

  friend PolySymbol operator+(const PolySymbol& a, const PolySymbol& b);
  friend PolySymbol operator-(const PolySymbol& a, const PolySymbol& b);
  friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b);
  friend PolySymbol operator*(const HbarPoly& s, const PolySymbol& a);
  friend bool operator==(const PolySymbol& a, const PolySymbol& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Exponents, HbarPoly> terms_;
};

/// Covariant symbol of the normal-ordered word
/// a0*^m0 a1*^m1 a2*^m2 a0^n0 a1^n1 a2^n2: the plain monomial
/// zbar^m z^n (hbar-independent).
PolySymbol symbol_of_normal_word(const std::array<int, 3>& creators,
                                 const std::array<int, 3>& annihilators);

/// One ladder-operator factor: mode index and creator flag.
struct LadderOp {
  int mode;
  bool dagger;
};
/// Normal-orders an arbitrary word with [a_i, a_j*] = hbar delta_ij and
/// returns its covariant symbol (plumbing for symbol_of_normal_word).
PolySymbol symbol_of_word(const std::vector<LadderOp>& word);

/// Standard generators; g0 enters as an exact rational coupling.
PolySymbol symbol_I0();
PolySymbol symbol_I1();
PolySymbol symbol_I2();
PolySymbol symbol_z(const Rational& g0);
PolySymbol symbol_zbar(const Rational& g0);

/// The derivative-series star product: sum over j of
/// hbar^{|j|}/j! (d^j F/dz^j)(d^j G/dzbar^j); finite on polynomials.
PolySymbol star_product(const PolySymbol& F, const PolySymbol& G);

/// {F, G} = -i sum_n (dF/dz_n dG/dzbar_n - dG/dz_n dF/dzbar_n).
PolySymbol poisson_bracket(const PolySymbol& F, const PolySymbol& G);

/// (-i/hbar)(F*G - G*F) at hbar=0 minus {F|_0, G|_0}; identically zero for
/// every pair of polynomial symbols.
PolySymbol classical_limit_check(const PolySymbol& F, const PolySymbol& G);

}  // namespace threewave

#endif
