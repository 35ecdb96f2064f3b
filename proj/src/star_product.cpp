#include "threewave/star_product.hpp"

#include <algorithm>

namespace threewave {

HbarPoly HbarPoly::hbar_power(int k, CRational c) {
  HbarPoly p;
  if (c.is_zero()) return p;
  p.coeffs_.assign(k + 1, CRational{});
  p.coeffs_[k] = c;
  return p;
}

HbarPoly HbarPoly::shifted_down() const {
  if (coeffs_.empty()) return {};
  if (!coeffs_[0].is_zero())
    throw std::logic_error("HbarPoly: not divisible by hbar");
  HbarPoly out;
  out.coeffs_.assign(coeffs_.begin() + 1, coeffs_.end());
  return out;
}

void HbarPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

HbarPoly operator+(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly out;
  out.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
    out.coeffs_[k] = a.at(int(k)) + b.at(int(k));
  out.trim();
  return out;
}

HbarPoly operator-(const HbarPoly& a, const HbarPoly& b) { return a + (-b); }

HbarPoly HbarPoly::operator-() const {
  HbarPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, CRational{});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out.coeffs_[i + j] = out.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
  out.trim();
  return out;
}

PolySymbol PolySymbol::constant(CRational c) {
  PolySymbol s;
  s.add({0, 0, 0, 0, 0, 0}, HbarPoly(c));
  return s;
}

PolySymbol PolySymbol::monomial(const Exponents& e, CRational c) {
  PolySymbol s;
  s.add(e, HbarPoly(c));
  return s;
}

void PolySymbol::add(const Exponents& e, const HbarPoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

PolySymbol PolySymbol::dz(int i) const {
  PolySymbol out;
  for (const auto& [e, c] : terms_) {
    const int k = e[3 + i];
    if (k == 0) continue;
    Exponents d = e;
    d[3 + i] -= 1;
    out.add(d, HbarPoly(CRational(Rational(k))) * c);
  }
  return out;
}

PolySymbol PolySymbol::dzbar(int i) const {
  PolySymbol out;
  for (const auto& [e, c] : terms_) {
    const int k = e[i];
    if (k == 0) continue;
    Exponents d = e;
    d[i] -= 1;
    out.add(d, HbarPoly(CRational(Rational(k))) * c);
  }
  return out;
}

PolySymbol PolySymbol::at_hbar_zero() const {
  PolySymbol out;
  for (const auto& [e, c] : terms_) out.add(e, HbarPoly(c.constant_term()));
  return out;
}

PolySymbol PolySymbol::divided_by_hbar() const {
  PolySymbol out;
  for (const auto& [e, c] : terms_) out.add(e, c.shifted_down());
  return out;
}

PolySymbol PolySymbol::conjugated() const {
  PolySymbol out;
  for (const auto& [e, c] : terms_) {
    Exponents swapped = {e[3], e[4], e[5], e[0], e[1], e[2]};
    HbarPoly cc;
    for (int k = 0; k <= c.degree(); ++k)
      cc = cc + HbarPoly::hbar_power(k, c.at(k).conj());
    out.add(swapped, cc);
  }
  return out;
}

int PolySymbol::max_z_degree(int i) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[3 + i]);
  return d;
}

int PolySymbol::max_zbar_degree(int i) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

PolySymbol operator+(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol out = a;
  for (const auto& [e, c] : b.terms_) out.add(e, c);
  return out;
}

PolySymbol operator-(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol out = a;
  for (const auto& [e, c] : b.terms_) out.add(e, -c);
  return out;
}

PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
  PolySymbol out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (int i = 0; i < 6; ++i) e[i] = ea[i] + eb[i];
      out.add(e, ca * cb);
    }
  return out;
}

PolySymbol operator*(const HbarPoly& s, const PolySymbol& a) {
  PolySymbol out;
  for (const auto& [e, c] : a.terms_) out.add(e, s * c);
  return out;
}

PolySymbol symbol_of_normal_word(const std::array<int, 3>& creators,
                                 const std::array<int, 3>& annihilators) {
  for (int i = 0; i < 3; ++i)
    if (creators[i] < 0 || annihilators[i] < 0)
      throw std::domain_error("symbol_of_normal_word: negative power");
  return PolySymbol::monomial({creators[0], creators[1], creators[2],
                               annihilators[0], annihilators[1],
                               annihilators[2]});
}

namespace {

// Recursive normal ordering: scan for an annihilator immediately left of a
// creator of the same mode and apply a a* = a* a + hbar; different modes
// commute.
PolySymbol normal_order_word(std::vector<LadderOp> word) {
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (!word[i].dagger && word[i + 1].dagger) {
      if (word[i].mode == word[i + 1].mode) {
        std::vector<LadderOp> swapped = word;
        std::swap(swapped[i], swapped[i + 1]);
        std::vector<LadderOp> contracted = word;
        contracted.erase(contracted.begin() + i, contracted.begin() + i + 2);
        return normal_order_word(std::move(swapped)) +
               HbarPoly::hbar_power(1) * normal_order_word(std::move(contracted));
      }
      std::swap(word[i], word[i + 1]);
      return normal_order_word(std::move(word));
    }
  }
  std::array<int, 3> m{0, 0, 0}, n{0, 0, 0};
  for (const LadderOp& op : word) (op.dagger ? m : n)[op.mode] += 1;
  return symbol_of_normal_word(m, n);
}

}  // namespace

PolySymbol symbol_of_word(const std::vector<LadderOp>& word) {
  for (const LadderOp& op : word)
    if (op.mode < 0 || op.mode > 2)
      throw std::domain_error("symbol_of_word: mode index out of range");
  return normal_order_word(word);
}

PolySymbol symbol_I0() { return PolySymbol::monomial({1, 0, 0, 1, 0, 0}); }
PolySymbol symbol_I1() {
  return symbol_I0() + PolySymbol::monomial({0, 1, 0, 0, 1, 0});
}
PolySymbol symbol_I2() {
  return symbol_I0() + PolySymbol::monomial({0, 0, 1, 0, 0, 1});
}
PolySymbol symbol_z(const Rational& g0) {
  return PolySymbol::monomial({0, 1, 1, 1, 0, 0}, CRational(g0));
}
PolySymbol symbol_zbar(const Rational& g0) {
  return PolySymbol::monomial({1, 0, 0, 0, 1, 1}, CRational(g0));
}

PolySymbol star_product(const PolySymbol& F, const PolySymbol& G) {
  const int J0 = std::min(F.max_z_degree(0), G.max_zbar_degree(0));
  const int J1 = std::min(F.max_z_degree(1), G.max_zbar_degree(1));
  const int J2 = std::min(F.max_z_degree(2), G.max_zbar_degree(2));

  PolySymbol out;
  PolySymbol F0 = F;
  for (int j0 = 0; j0 <= J0; ++j0) {
    PolySymbol F1 = F0;
    for (int j1 = 0; j1 <= J1; ++j1) {
      PolySymbol F2 = F1;
      for (int j2 = 0; j2 <= J2; ++j2) {
        PolySymbol G2 = G;
        for (int k = 0; k < j0; ++k) G2 = G2.dzbar(0);
        for (int k = 0; k < j1; ++k) G2 = G2.dzbar(1);
        for (int k = 0; k < j2; ++k) G2 = G2.dzbar(2);
        Rational fact = Rational(1);
        for (int k = 2; k <= j0; ++k) fact *= Rational(k);
        for (int k = 2; k <= j1; ++k) fact *= Rational(k);
        for (int k = 2; k <= j2; ++k) fact *= Rational(k);
        const HbarPoly weight =
            HbarPoly::hbar_power(j0 + j1 + j2, CRational(Rational(1) / fact));
        out = out + weight * (F2 * G2);
        F2 = F2.dz(2);
        if (F2.is_zero()) break;
      }
      F1 = F1.dz(1);
      if (F1.is_zero()) break;
    }
    F0 = F0.dz(0);
    if (F0.is_zero()) break;
  }
  return out;
}

PolySymbol poisson_bracket(const PolySymbol& F, const PolySymbol& G) {
  PolySymbol sum;
  for (int n = 0; n < 3; ++n)
    sum = sum + (F.dz(n) * G.dzbar(n) - G.dz(n) * F.dzbar(n));
  // multiply by -i
  return HbarPoly(CRational(Rational(0), Rational(-1))) * sum;
}

PolySymbol classical_limit_check(const PolySymbol& F, const PolySymbol& G) {
  const PolySymbol comm = star_product(F, G) - star_product(G, F);
  const PolySymbol scaled =
      HbarPoly(CRational(Rational(0), Rational(-1))) * comm.divided_by_hbar();
  return scaled.at_hbar_zero() -
         poisson_bracket(F.at_hbar_zero(), G.at_hbar_zero());
}

}  // namespace threewave
