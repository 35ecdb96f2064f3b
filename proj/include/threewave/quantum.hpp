#ifndef THREEWAVE_QUANTUM_HPP
#define THREEWAVE_QUANTUM_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "threewave/model.hpp"
#include "threewave/tridiag.hpp"

namespace threewave {

/// Invariant sector labelled by the A1, A2 quantum numbers (c_i = hbar v_i);
/// basis ordering is |n, v1-n, v2-n>, n = 0..L.
struct BlockLabel {
  int v1 = 0;
  int v2 = 0;

  int L() const { return std::min(v1, v2); }
  int dim() const { return L() + 1; }
  double c1(double hbar) const { return hbar * v1; }
  double c2(double hbar) const { return hbar * v2; }
};

/// The reduced Hamiltonian data: H = shift * Id + (diag + tridiagonal b's).
struct TridiagonalBlock {
  double shift = 0.0;
  Eigen::VectorXd diag;     // delta * hbar * n (zero in resonance)
  Eigen::VectorXd offdiag;  // b_1..b_L
  BlockLabel label;
  ModelParams params;

  int dim() const { return int(diag.size()); }
  Eigen::MatrixXd interaction() const;  // diag + offdiag part (no shift)
  Eigen::MatrixXd dense() const;        // shift included
};

/// b_k = g0 sqrt(hbar^3 k (v1-k+1)(v2-k+1)), 1 <= k <= L.
double coupling_b(int k, const BlockLabel& label, const ModelParams& p);

TridiagonalBlock build_block(const BlockLabel& label, const ModelParams& p);

/// Reduced operators on the block in the fixed real basis.
struct BlockOperators {
  Eigen::MatrixXd A0, A, Astar, X;
  Eigen::MatrixXcd Y;
};
BlockOperators block_operators(const BlockLabel& label, const ModelParams& p);

/// Leading principal minors Delta_0..Delta_{L+1} of (interaction - lambda).
Eigen::VectorXd char_poly_delta(double lambda, const TridiagonalBlock& block);

/// Coefficients of Delta_{L+1} in lambda (ascending degree), from the
/// minor recurrence run on polynomial coefficients.
Eigen::VectorXd char_poly_coefficients(const TridiagonalBlock& block);

/// Even/odd factorization of the characteristic polynomial of a resonant
/// block: Delta_{L+1} = lambda * Omega_K(lambda^2) for even L, and
/// Theta_K(lambda^2) for odd L. Coefficients ascending in mu = lambda^2.
struct ParityFactorization {
  bool has_zero_root = false;  // true iff L even
  Eigen::VectorXd mu_coeffs;   // Omega_K or Theta_K
};
ParityFactorization parity_factorization(const TridiagonalBlock& block);

enum class SpectrumMethod { explicit_roots, sturm };

struct BlockSpectrum {
  Eigen::VectorXd eigenvalues;  // of H = shift + interaction, ascending
  Eigen::MatrixXd eigenvectors;
};
BlockSpectrum block_spectrum(const TridiagonalBlock& block,
                             SpectrumMethod method);

/// U(t) = exp(i t H / hbar), complex symmetric in the real eigenbasis.
/// The spectral factorization is memoized per block.
Eigen::MatrixXcd evolution_operator(double t, const TridiagonalBlock& block);

/// Closed forms at resonance (delta = 0).
Eigen::MatrixXcd closed_form_U_L1(double t, int v1, const ModelParams& p);
Eigen::MatrixXcd closed_form_U_L2(double t, int v1, const ModelParams& p);
Eigen::MatrixXcd closed_form_A0_L2(double t, int v1, const ModelParams& p);

/// Up-/down-conversion probability for the L=2 resonant block,
/// (1/4 - (hbar g0^2/nu^2)^2)(cos(nu t) - 1)^2 with nu = g0 sqrt(2 hbar (2v1-1)).
double transition_probability(double t, int v1, const ModelParams& p);

/// |<to| U(t) |from>|^2 for any block.
double transition_probability_matrix(double t, const TridiagonalBlock& block,
                                     int from, int to);

/// Max operator-norm residuals of the reduced Heisenberg system along t_grid.
struct HeisenbergResiduals {
  double a0_eq = 0.0;      // dA0/dt = 2Y
  double x_eq = 0.0;       // dX/dt = -delta Y
  double y_eq = 0.0;       // dY/dt = delta X + g0^2 (3A0^2 - ... - hbar A0)
  double a0_second = 0.0;  // second-order operator equation
};
HeisenbergResiduals heisenberg_residual(const TridiagonalBlock& block,
                                        const std::vector<double>& t_grid);

/// Brute-force truncated-Fock oracle. Truncation is exact for any block
/// closed within the caps.
class FockOracle {
 public:
  FockOracle(std::array<int, 3> caps, const ModelParams& p);

  int dim() const { return dim_; }
  int index(int n0, int n1, int n2) const;
  const Eigen::MatrixXd& hamiltonian() const { return H_; }
  const Eigen::MatrixXd& a(int mode) const { return a_[mode]; }
  const Eigen::MatrixXd& a_star(int mode) const { return astar_[mode]; }

  /// Sector matrix of the block in the basis |n, v1-n, v2-n>.
  Eigen::MatrixXd extract_block(const BlockLabel& label) const;

  /// Max |[H, A_k]| entry over columns in blocks closed within the caps.
  double invariant_commutator_defect() const;

  /// Max defect of A A* = g0^2 (A0 + hbar)(A1 - A0)(A2 - A0) on safe columns.
  double product_relation_defect() const;

 private:
  bool block_closed(int v1, int v2) const;

  std::array<int, 3> caps_;
  ModelParams params_;
  int dim_;
  std::array<Eigen::MatrixXd, 3> a_, astar_;
  Eigen::MatrixXd H_;
};

}  // namespace threewave

#endif
