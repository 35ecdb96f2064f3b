#include "threewave/exact_algebra.hpp"

#include <cmath>

namespace threewave {

std::pair<long long, long long> RadicalSum::split_square(long long n) {
  long long sq = 1, core = 1;
  for (long long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) sq *= p;
    if (e % 2) core *= p;
  }
  core *= n;  // leftover prime
  return {sq, core};
}

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
  RadicalSum out;
  for (const auto& [ra, qa] : a.terms_)
    for (const auto& [rb, qb] : b.terms_) {
      // sqrt(ra) sqrt(rb) = sq * sqrt(core), ra*rb = sq^2 * core
      const auto [sq, core] = RadicalSum::split_square(ra * rb);
      out.add_term(qa * qb * Rational(sq), core);
    }
  return out;
}

double RadicalSum::to_double() const {
  double v = 0.0;
  for (const auto& [r, q] : terms_) v += q.to_double() * std::sqrt(double(r));
  return v;
}

std::string RadicalSum::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [r, q] : terms_) {
    if (!s.empty()) s += " + ";
    s += q.str();
    if (r != 1) s += "*sqrt(" + std::to_string(r) + ")";
  }
  return s;
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    out.data_[k] = a.data_[k] + b.data_[k];
  return out;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    out.data_[k] = a.data_[k] - b.data_[k];
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) += a(i, k) * b(k, j);
      }
    }
  return out;
}

ExactMatrix operator*(const RadicalSum& s, const ExactMatrix& a) {
  ExactMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
  return out;
}

ExactBlockOps exact_block_operators(int v1, int v2, const Rational& hbar,
                                    const Rational& g0) {
  ExactBlockOps ops;
  ops.v1 = v1;
  ops.v2 = v2;
  ops.L = std::min(v1, v2);
  ops.hbar = hbar;
  ops.g0 = g0;
  const int m = ops.L + 1;
  ops.A0 = ExactMatrix(m, m);
  ops.A = ExactMatrix(m, m);
  ops.Astar = ExactMatrix(m, m);
  for (int n = 0; n < m; ++n) ops.A0(n, n) = hbar * Rational(n);
  // b_n = g0 sqrt(hbar^3 n (v1-n+1)(v2-n+1)); with hbar = p/q,
  // sqrt(hbar^3 k) = (hbar/q) sqrt(p q k).
  const Rational scale = g0 * hbar / Rational(hbar.den());
  for (int n = 1; n < m; ++n) {
    const long long inner = hbar.num() * hbar.den() * n * (v1 - n + 1) *
                            (v2 - n + 1);
    const RadicalSum b = RadicalSum::radical(scale, inner);
    ops.A(n - 1, n) = b;
    ops.Astar(n, n - 1) = b;
  }
  const RadicalSum half(Rational(1, 2));
  ops.X = half * (ops.A + ops.Astar);
  ops.Ytil = half * (ops.A - ops.Astar);
  return ops;
}

std::vector<ExactRelationResult> exact_block_relations(int v1, int v2,
                                                       const Rational& hbar,
                                                       const Rational& g0) {
  const ExactBlockOps ops = exact_block_operators(v1, v2, hbar, g0);
  const int m = ops.L + 1;
  const ExactMatrix Id = ExactMatrix::identity(m);
  const Rational c1 = hbar * Rational(v1), c2 = hbar * Rational(v2);
  const Rational g2 = g0 * g0;
  auto comm = [](const ExactMatrix& a, const ExactMatrix& b) {
    return a * b - b * a;
  };
  auto scal = [&Id](const Rational& r) { return RadicalSum(r) * Id; };

  std::vector<ExactRelationResult> out;
  auto check = [&out](const std::string& name, const ExactMatrix& lhs,
                      const ExactMatrix& rhs) {
    out.push_back({name, (lhs - rhs).is_zero()});
  };

  check("[A0,A] = -hbar A", comm(ops.A0, ops.A),
        RadicalSum(-hbar) * ops.A);
  check("[A0,A*] = hbar A*", comm(ops.A0, ops.Astar),
        RadicalSum(hbar) * ops.Astar);
  check("A A* = g0^2 (A0+hbar)(c1-A0)(c2-A0)", ops.A * ops.Astar,
        RadicalSum(g2) * ((ops.A0 + scal(hbar)) * (scal(c1) - ops.A0) *
                          (scal(c2) - ops.A0)));
  check("A* A = g0^2 A0 (c1-A0+hbar)(c2-A0+hbar)", ops.Astar * ops.A,
        RadicalSum(g2) * (ops.A0 * (scal(c1 + hbar) - ops.A0) *
                          (scal(c2 + hbar) - ops.A0)));
  check("[A0,X] = -hbar Yt", comm(ops.A0, ops.X),
        RadicalSum(-hbar) * ops.Ytil);
  check("[A0,Yt] = -hbar X", comm(ops.A0, ops.Ytil),
        RadicalSum(-hbar) * ops.X);
  {
    const ExactMatrix poly =
        RadicalSum(Rational(3)) * (ops.A0 * ops.A0) -
        RadicalSum(Rational(2) * (c1 + c2) + hbar) * ops.A0 +
        scal(c1 * c2);
    check("[X,Yt] = -1/2 hbar g0^2 (3A0^2 - 2(c1+c2)A0 + c1c2 - hbar A0)",
          comm(ops.X, ops.Ytil),
          RadicalSum(Rational(-1, 2) * hbar * g2) * poly);
  }
  {
    const Rational h = hbar;
    const ExactMatrix kummer =
        RadicalSum(Rational(2)) * (ops.A0 * ops.A0 * ops.A0) -
        RadicalSum(Rational(2) * h * Rational(v1 + v2) + h) *
            (ops.A0 * ops.A0) +
        RadicalSum(Rational(2) * h * h * Rational(v1) * Rational(v2) + h * h) *
            ops.A0 +
        scal(h * h * h * Rational(v1) * Rational(v2));
    check("X^2 + Y^2 = 1/2 g0^2 (2A0^3 - ... + hbar^3 v1 v2)",
          ops.X * ops.X - ops.Ytil * ops.Ytil,
          RadicalSum(Rational(1, 2) * g2) * kummer);
  }
  return out;
}

}  // namespace threewave
