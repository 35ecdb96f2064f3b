#include "threewave/quantum.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "threewave/roots.hpp"

namespace threewave {

namespace {
constexpr Complex kI(0.0, 1.0);

bool is_resonant(const TridiagonalBlock& block) {
  const double scale = std::max(
      {1.0, std::abs(block.shift),
       block.dim() > 1 ? block.offdiag.cwiseAbs().maxCoeff() : 0.0});
  return block.diag.cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

void require_resonance(const ModelParams& p, const char* who) {
  const double scale =
      std::max({std::abs(p.omega0), std::abs(p.omega1), std::abs(p.omega2), 1.0});
  if (std::abs(p.detuning()) > 1e-12 * scale)
    throw capability_error(std::string(who) + ": requires resonance delta = 0");
}
}  // namespace

Eigen::MatrixXd TridiagonalBlock::interaction() const {
  const int m = dim();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) T(i, i) = diag(i);
  for (int i = 0; i + 1 < m; ++i) {
    T(i, i + 1) = offdiag(i);
    T(i + 1, i) = offdiag(i);
  }
  return T;
}

Eigen::MatrixXd TridiagonalBlock::dense() const {
  return interaction() + shift * Eigen::MatrixXd::Identity(dim(), dim());
}

double coupling_b(int k, const BlockLabel& label, const ModelParams& p) {
  if (k < 1 || k > label.L())
    throw std::out_of_range("coupling_b: index outside [1, L]");
  const double h = p.hbar;
  return p.g0 *
         std::sqrt(h * h * h * k * (label.v1 - k + 1) * (label.v2 - k + 1));
}

TridiagonalBlock build_block(const BlockLabel& label, const ModelParams& p) {
  const int L = label.L();
  TridiagonalBlock block;
  block.label = label;
  block.params = p;
  block.shift = p.omega1 * label.c1(p.hbar) + p.omega2 * label.c2(p.hbar);
  block.diag.resize(L + 1);
  for (int n = 0; n <= L; ++n) block.diag(n) = p.detuning() * p.hbar * n;
  block.offdiag.resize(L);
  for (int k = 1; k <= L; ++k) block.offdiag(k - 1) = coupling_b(k, label, p);
  return block;
}

BlockOperators block_operators(const BlockLabel& label, const ModelParams& p) {
  const int m = label.dim();
  BlockOperators ops;
  ops.A0 = Eigen::MatrixXd::Zero(m, m);
  ops.A = Eigen::MatrixXd::Zero(m, m);
  ops.Astar = Eigen::MatrixXd::Zero(m, m);
  for (int n = 0; n < m; ++n) ops.A0(n, n) = p.hbar * n;
  for (int n = 1; n < m; ++n) {
    const double b = coupling_b(n, label, p);
    ops.A(n - 1, n) = b;      // A |n> = b_n |n-1>
    ops.Astar(n, n - 1) = b;  // A* |n-1> = b_n |n>
  }
  ops.X = 0.5 * (ops.A + ops.Astar);
  ops.Y = (ops.A - ops.Astar) / (2.0 * kI);
  return ops;
}

Eigen::VectorXd char_poly_delta(double lambda, const TridiagonalBlock& block) {
  const int m = block.dim();
  Eigen::VectorXd delta(m + 1);
  delta(0) = 1.0;
  delta(1) = block.diag(0) - lambda;
  for (int k = 2; k <= m; ++k) {
    const double b = block.offdiag(k - 2);
    delta(k) =
        (block.diag(k - 1) - lambda) * delta(k - 1) - b * b * delta(k - 2);
  }
  return delta;
}

Eigen::VectorXd char_poly_coefficients(const TridiagonalBlock& block) {
  const int m = block.dim();
  // polynomial coefficients, ascending; run the recurrence symbolically
  std::vector<Eigen::VectorXd> delta(m + 1);
  delta[0] = Eigen::VectorXd::Ones(1);
  delta[1] = Eigen::VectorXd(2);
  delta[1] << block.diag(0), -1.0;
  for (int k = 2; k <= m; ++k) {
    const double b = block.offdiag(k - 2);
    Eigen::VectorXd next = Eigen::VectorXd::Zero(k + 1);
    // (d_{k-1} - lambda) * delta[k-1]
    next.head(k) += block.diag(k - 1) * delta[k - 1];
    next.segment(1, k) -= delta[k - 1];
    next.head(k - 1) -= b * b * delta[k - 2];
    delta[k] = next;
  }
  return delta[m];
}

ParityFactorization parity_factorization(const TridiagonalBlock& block) {
  if (!is_resonant(block))
    throw capability_error(
        "parity_factorization: block is not resonant (diag != 0)");
  const Eigen::VectorXd coeffs = char_poly_coefficients(block);
  const int L = block.dim() - 1;
  ParityFactorization out;
  out.has_zero_root = (L % 2 == 0);
  const int K = (L + 1) / 2;
  out.mu_coeffs.resize(K + 1);
  // even L: Delta = lambda * Omega(lambda^2)  -> odd coefficients
  // odd  L: Delta = Theta(lambda^2)           -> even coefficients
  const int start = out.has_zero_root ? 1 : 0;
  for (int j = 0; j <= K; ++j) out.mu_coeffs(j) = coeffs(start + 2 * j);
  return out;
}

BlockSpectrum block_spectrum(const TridiagonalBlock& block,
                             SpectrumMethod method) {
  const int m = block.dim();
  BlockSpectrum out;
  if (method == SpectrumMethod::sturm) {
    TridiagEigen te = tridiag_eigen(block.diag, block.offdiag);
    out.eigenvalues = te.values.array() + block.shift;
    out.eigenvectors = te.vectors;
    return out;
  }

  // explicit path: parity factorization + closed-form roots, L <= 8
  const int L = m - 1;
  if (L > 8)
    throw capability_error("block_spectrum: explicit method limited to L <= 8");
  if (!is_resonant(block))
    throw capability_error("block_spectrum: explicit method needs resonance");

  std::vector<double> lambdas;
  if (L == 0) {
    lambdas.push_back(0.0);
  } else {
    const ParityFactorization pf = parity_factorization(block);
    const int K = int(pf.mu_coeffs.size()) - 1;
    std::vector<double> mus;
    if (K == 0) {
      // constant polynomial: no nonzero roots
    } else if (K == 1) {
      mus.push_back(-pf.mu_coeffs(0) / pf.mu_coeffs(1));
    } else {
      std::vector<double> cdesc(K + 1);
      for (int j = 0; j <= K; ++j) cdesc[j] = pf.mu_coeffs(K - j);
      for (const auto& r : closed_form_roots(K, cdesc)) {
        if (std::abs(r.imag()) <= 1e-9 * (1.0 + std::abs(r.real())))
          mus.push_back(r.real());
      }
    }
    if (pf.has_zero_root) lambdas.push_back(0.0);
    for (double mu : mus) {
      const double lam = std::sqrt(std::max(mu, 0.0));
      lambdas.push_back(lam);
      lambdas.push_back(-lam);
    }
  }
  std::sort(lambdas.begin(), lambdas.end());
  out.eigenvalues.resize(m);
  out.eigenvectors.resize(m, m);
  for (int j = 0; j < m; ++j) {
    out.eigenvalues(j) = lambdas[j] + block.shift;
    out.eigenvectors.col(j) =
        tridiag_eigenvector(block.diag, block.offdiag, lambdas[j]);
  }
  // orthogonalize any close pairs (cannot occur for b_k > 0, kept for safety)
  for (int j = 1; j < m; ++j)
    for (int k = j - 1; k >= 0 &&
         out.eigenvalues(j) - out.eigenvalues(k) < 1e-10 * (1 + std::abs(out.eigenvalues(j)));
         --k) {
      out.eigenvectors.col(j) -=
          out.eigenvectors.col(k).dot(out.eigenvectors.col(j)) *
          out.eigenvectors.col(k);
      out.eigenvectors.col(j).normalize();
    }
  return out;
}

namespace {

// compute-once memo of spectral factorizations, keyed by the block bytes
const BlockSpectrum& cached_spectrum(const TridiagonalBlock& block) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<BlockSpectrum>> memo;

  std::string key;
  key.reserve(16 + 8 * (2 * block.dim()));
  auto push = [&key](double x) {
    char buf[sizeof(double)];
    std::memcpy(buf, &x, sizeof(double));
    key.append(buf, sizeof(double));
  };
  push(double(block.dim()));
  push(block.shift);
  push(block.params.hbar);
  for (int i = 0; i < block.dim(); ++i) push(block.diag(i));
  for (int i = 0; i + 1 < block.dim(); ++i) push(block.offdiag(i));

  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(key);
  if (it == memo.end()) {
    auto sp = std::make_unique<BlockSpectrum>(
        block_spectrum(block, SpectrumMethod::sturm));
    it = memo.emplace(key, std::move(sp)).first;
  }
  return *it->second;
}

}  // namespace

Eigen::MatrixXcd evolution_operator(double t, const TridiagonalBlock& block) {
  const BlockSpectrum& sp = cached_spectrum(block);
  const int m = block.dim();
  Eigen::VectorXcd phases(m);
  for (int j = 0; j < m; ++j)
    phases(j) = std::exp(kI * (t * sp.eigenvalues(j) / block.params.hbar));
  return sp.eigenvectors.cast<Complex>() * phases.asDiagonal() *
         sp.eigenvectors.transpose().cast<Complex>();
}

Eigen::MatrixXcd closed_form_U_L1(double t, int v1, const ModelParams& p) {
  require_resonance(p, "closed_form_U_L1");
  if (v1 < 1) throw capability_error("closed_form_U_L1: requires v1 >= 1");
  const double nu = p.g0 * std::sqrt(p.hbar * v1);
  const Complex phase = std::exp(kI * (t * (p.omega1 * v1 + p.omega2)));
  const double c = std::cos(nu * t), s = std::sin(nu * t);
  Eigen::MatrixXcd U(2, 2);
  U << c, kI * s, kI * s, c;
  return phase * U;
}

Eigen::MatrixXcd closed_form_U_L2(double t, int v1, const ModelParams& p) {
  require_resonance(p, "closed_form_U_L2");
  if (v1 < 2) throw capability_error("closed_form_U_L2: requires v1 >= 2");
  const double nu = p.g0 * std::sqrt(2.0 * p.hbar * (2.0 * v1 - 1.0));
  const double b1 = p.g0 * std::sqrt(p.hbar * p.hbar * p.hbar * 2.0 * v1);
  const double b2 =
      p.g0 * std::sqrt(p.hbar * p.hbar * p.hbar * 2.0 * (v1 - 1.0));
  const double norm = std::sqrt(b1 * b1 + b2 * b2);
  const double be1 = b1 / norm, be2 = b2 / norm;
  const Complex phase = std::exp(kI * (t * (p.omega1 * v1 + 2.0 * p.omega2)));
  const double c = std::cos(nu * t), s = std::sin(nu * t);
  Eigen::MatrixXcd U(3, 3);
  U << 1.0 + be1 * be1 * (c - 1.0), kI * be1 * s, be1 * be2 * (c - 1.0),
      kI * be1 * s, c, kI * be2 * s,
      be1 * be2 * (c - 1.0), kI * be2 * s, 1.0 + be2 * be2 * (c - 1.0);
  return phase * U;
}

Eigen::MatrixXcd closed_form_A0_L2(double t, int v1, const ModelParams& p) {
  require_resonance(p, "closed_form_A0_L2");
  if (v1 < 2) throw capability_error("closed_form_A0_L2: requires v1 >= 2");
  const double nu = p.g0 * std::sqrt(2.0 * p.hbar * (2.0 * v1 - 1.0));
  const double be1 = std::sqrt(double(v1) / (2.0 * v1 - 1.0));
  const double be2 = std::sqrt(double(v1 - 1.0) / (2.0 * v1 - 1.0));
  const double b1sq = be1 * be1, b2sq = be2 * be2;
  const double s = std::sin(nu * t), s2 = std::sin(2.0 * nu * t),
               c = std::cos(nu * t);

  Eigen::Matrix3d S, T, V, C, K;
  S << b1sq * (1 - 2 * b2sq), 0, be1 * be2 * (1 - 2 * b2sq),
      0, 2 * b2sq - 1, 0,
      be1 * be2 * (1 - 2 * b2sq), 0, b2sq - 2 * b2sq * b2sq;
  T << 0, -be1 / 2 + be1 * b2sq, 0,
      be1 / 2 - be1 * b2sq, 0, be2 / 2 - be2 * b2sq,
      0, -be2 / 2 + be2 * b2sq, 0;
  V << 0, -be1 * b2sq, 0,
      be1 * b2sq, 0, -b1sq * be2,
      0, b1sq * be2, 0;
  C << -4 * b1sq * b2sq, 0, 2 * be1 * be2 * (b1sq - b2sq),
      0, 0, 0,
      2 * be1 * be2 * (b1sq - b2sq), 0, 4 * b1sq * b2sq;
  K << 4 * b1sq * b2sq, 0, 2 * be1 * be2 * (b2sq - b1sq),
      0, 1, 0,
      2 * be1 * be2 * (b2sq - b1sq), 0, 2 * (b1sq * b1sq + b2sq * b2sq);

  Eigen::MatrixXcd out =
      (s * s) * S.cast<Complex>() + (kI * s2) * T.cast<Complex>() +
      (2.0 * kI * s) * V.cast<Complex>() + c * C.cast<Complex>() +
      K.cast<Complex>();
  return p.hbar * out;
}

double transition_probability(double t, int v1, const ModelParams& p) {
  require_resonance(p, "transition_probability");
  if (v1 < 2) throw capability_error("transition_probability: requires v1 >= 2");
  const double nu = p.g0 * std::sqrt(2.0 * p.hbar * (2.0 * v1 - 1.0));
  const double ratio = p.hbar * p.g0 * p.g0 / (nu * nu);
  const double cm1 = std::cos(nu * t) - 1.0;
  return (0.25 - ratio * ratio) * cm1 * cm1;
}

double transition_probability_matrix(double t, const TridiagonalBlock& block,
                                     int from, int to) {
  if (from < 0 || from >= block.dim() || to < 0 || to >= block.dim())
    throw std::out_of_range("transition_probability_matrix: index");
  const Eigen::MatrixXcd U = evolution_operator(t, block);
  return std::norm(U(to, from));
}

HeisenbergResiduals heisenberg_residual(const TridiagonalBlock& block,
                                        const std::vector<double>& t_grid) {
  const ModelParams& p = block.params;
  const double h = p.hbar, g2 = p.g0 * p.g0, delta = p.detuning();
  const BlockLabel& lb = block.label;
  const double c1 = lb.c1(h), c2 = lb.c2(h);
  const int m = block.dim();
  const Eigen::MatrixXcd H = block.dense().cast<Complex>();
  const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(m, m);
  const BlockOperators ops = block_operators(lb, p);

  auto comm = [&](const Eigen::MatrixXcd& Aop, const Eigen::MatrixXcd& Bop) {
    return Aop * Bop - Bop * Aop;
  };

  HeisenbergResiduals res;
  for (double t : t_grid) {
    const Eigen::MatrixXcd U = evolution_operator(t, block);
    const Eigen::MatrixXcd Ud = U.adjoint();
    const Eigen::MatrixXcd A0t = Ud * ops.A0.cast<Complex>() * U;
    const Eigen::MatrixXcd Xt = Ud * ops.X.cast<Complex>() * U;
    const Eigen::MatrixXcd Yt = Ud * ops.Y * U;
    // d/dt M(t) = (i/hbar) [M(t), H]
    const Eigen::MatrixXcd dA0 = (kI / h) * comm(A0t, H);
    const Eigen::MatrixXcd dX = (kI / h) * comm(Xt, H);
    const Eigen::MatrixXcd dY = (kI / h) * comm(Yt, H);

    res.a0_eq = std::max(res.a0_eq, (dA0 - 2.0 * Yt).norm());
    res.x_eq = std::max(res.x_eq, (dX + delta * Yt).norm());
    const Eigen::MatrixXcd rhs_y =
        delta * Xt + g2 * (3.0 * A0t * A0t - 2.0 * (c1 + c2) * A0t +
                           c1 * c2 * Id - h * A0t);
    res.y_eq = std::max(res.y_eq, (dY - rhs_y).norm());

    const Eigen::MatrixXcd d2A0 = (kI / h) * comm(dA0, H);
    const Eigen::MatrixXcd rhs_2 =
        6.0 * g2 * A0t * A0t -
        (4.0 * g2 * (c1 + c2) + 2.0 * h * g2 + delta * delta) * A0t +
        2.0 * g2 * c1 * c2 * Id +
        delta * (H - (p.omega1 * c1 + p.omega2 * c2) * Id);
    res.a0_second = std::max(res.a0_second, (d2A0 - rhs_2).norm());
  }
  return res;
}

FockOracle::FockOracle(std::array<int, 3> caps, const ModelParams& p)
    : caps_(caps), params_(p) {
  dim_ = (caps[0] + 1) * (caps[1] + 1) * (caps[2] + 1);
  for (int mode = 0; mode < 3; ++mode) {
    a_[mode] = Eigen::MatrixXd::Zero(dim_, dim_);
    astar_[mode] = Eigen::MatrixXd::Zero(dim_, dim_);
  }
  for (int n0 = 0; n0 <= caps[0]; ++n0)
    for (int n1 = 0; n1 <= caps[1]; ++n1)
      for (int n2 = 0; n2 <= caps[2]; ++n2) {
        const int col = index(n0, n1, n2);
        const int n[3] = {n0, n1, n2};
        for (int mode = 0; mode < 3; ++mode) {
          if (n[mode] > 0) {
            int t[3] = {n0, n1, n2};
            t[mode] -= 1;
            a_[mode](index(t[0], t[1], t[2]), col) =
                std::sqrt(p.hbar * n[mode]);
          }
          if (n[mode] < caps[mode]) {
            int t[3] = {n0, n1, n2};
            t[mode] += 1;
            astar_[mode](index(t[0], t[1], t[2]), col) =
                std::sqrt(p.hbar * (n[mode] + 1));
          }
        }
      }
  H_ = p.omega0 * astar_[0] * a_[0] + p.omega1 * astar_[1] * a_[1] +
       p.omega2 * astar_[2] * a_[2] +
       p.g0 * (a_[0] * astar_[1] * astar_[2] + astar_[0] * a_[1] * a_[2]);
}

int FockOracle::index(int n0, int n1, int n2) const {
  return (n0 * (caps_[1] + 1) + n1) * (caps_[2] + 1) + n2;
}

bool FockOracle::block_closed(int v1, int v2) const {
  const int L = std::min(v1, v2);
  return L <= caps_[0] && v1 <= caps_[1] && v2 <= caps_[2];
}

Eigen::MatrixXd FockOracle::extract_block(const BlockLabel& label) const {
  if (!block_closed(label.v1, label.v2))
    throw capability_error(
        "FockOracle: requested block is not closed within the caps");
  const int m = label.dim();
  std::vector<int> idx(m);
  for (int n = 0; n < m; ++n) idx[n] = index(n, label.v1 - n, label.v2 - n);
  Eigen::MatrixXd S(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) S(i, j) = H_(idx[i], idx[j]);
  return S;
}

double FockOracle::invariant_commutator_defect() const {
  const Eigen::MatrixXd A1 = astar_[0] * a_[0] + astar_[1] * a_[1];
  const Eigen::MatrixXd A2 = astar_[0] * a_[0] + astar_[2] * a_[2];
  const Eigen::MatrixXd C1 = H_ * A1 - A1 * H_;
  const Eigen::MatrixXd C2 = H_ * A2 - A2 * H_;
  double defect = 0.0;
  for (int n0 = 0; n0 <= caps_[0]; ++n0)
    for (int n1 = 0; n1 <= caps_[1]; ++n1)
      for (int n2 = 0; n2 <= caps_[2]; ++n2) {
        if (!block_closed(n0 + n1, n0 + n2)) continue;
        const int col = index(n0, n1, n2);
        defect = std::max(defect, C1.col(col).cwiseAbs().maxCoeff());
        defect = std::max(defect, C2.col(col).cwiseAbs().maxCoeff());
      }
  return defect;
}

double FockOracle::product_relation_defect() const {
  const ModelParams& p = params_;
  const Eigen::MatrixXd A0 = astar_[0] * a_[0];
  const Eigen::MatrixXd A1 = A0 + astar_[1] * a_[1];
  const Eigen::MatrixXd A2 = A0 + astar_[2] * a_[2];
  const Eigen::MatrixXd A = p.g0 * a_[0] * astar_[1] * astar_[2];
  const Eigen::MatrixXd Astar = p.g0 * astar_[0] * a_[1] * a_[2];
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(dim_, dim_);
  const Eigen::MatrixXd lhs = A * Astar;
  const Eigen::MatrixXd rhs =
      p.g0 * p.g0 * (A0 + p.hbar * Id) * (A1 - A0) * (A2 - A0);
  const Eigen::MatrixXd D = lhs - rhs;
  double defect = 0.0;
  for (int n0 = 0; n0 <= caps_[0]; ++n0)
    for (int n1 = 0; n1 <= caps_[1]; ++n1)
      for (int n2 = 0; n2 <= caps_[2]; ++n2) {
        // both the column state and its image under A* must stay inside
        if (!block_closed(n0 + n1, n0 + n2)) continue;
        if (n0 + 1 > caps_[0] && n1 > 0 && n2 > 0) continue;
        const int col = index(n0, n1, n2);
        defect = std::max(defect, D.col(col).cwiseAbs().maxCoeff());
      }
  return defect;
}

}  // namespace threewave
