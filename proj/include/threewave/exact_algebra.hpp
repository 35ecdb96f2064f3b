#ifndef THREEWAVE_EXACT_ALGEBRA_HPP
#define THREEWAVE_EXACT_ALGEBRA_HPP

#include <string>
#include <vector>

#include "threewave/rational.hpp"

namespace threewave {

/// Dense matrix over the exact radical ring, large enough for block sizes here.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static ExactMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  RadicalSum& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const RadicalSum& operator()(int i, int j) const {
    return data_[std::size_t(i) * cols_ + j];
  }

  bool is_zero() const;

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const RadicalSum& s, const ExactMatrix& a);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<RadicalSum> data_;
};

/// The reduced operators of a block with exact rational hbar, g0. A and A*
/// entries are rational multiples of square roots of integers, so every
/// displayed relation closes in the radical ring.
struct ExactBlockOps {
  int v1, v2, L;
  Rational hbar, g0;
  ExactMatrix A0, A, Astar, X, Ytil;  // Ytil = (A - A*)/2, i.e. Y = -i*Ytil
};
ExactBlockOps exact_block_operators(int v1, int v2, const Rational& hbar,
                                    const Rational& g0);

/// One named relation check; defect lists the offending entries (empty = exact).
struct ExactRelationResult {
  std::string name;
  bool exact;
};

/// Verifies, entrywise exactly:
///   [A0, A]  = -hbar A,       [A0, A*] = hbar A*,
///   A A*     = g0^2 (A0 + hbar)(c1 - A0)(c2 - A0),
///   A* A     = g0^2 A0 (c1 - A0 + hbar)(c2 - A0 + hbar),
///   [A0, X]  = -hbar Yt,      [A0, Yt] = -hbar X,
///   [X, Yt]  = -1/2 hbar g0^2 (3 A0^2 - 2(c1+c2) A0 + c1 c2 - hbar A0),
///   X^2 - Yt^2 = 1/2 g0^2 (2 A0^3 - (2 hbar(v1+v2) + hbar) A0^2
///                          + (2 hbar^2 v1 v2 + hbar^2) A0 + hbar^3 v1 v2)
/// (the X/Y forms are the displayed relations rewritten through Y = -i Yt).
std::vector<ExactRelationResult> exact_block_relations(int v1, int v2,
                                                       const Rational& hbar,
                                                       const Rational& g0);

}  // namespace threewave

#endif
