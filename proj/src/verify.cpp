#include "threewave/verify.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "threewave/classical.hpp"
#include "threewave/coherent.hpp"
#include "threewave/exact_algebra.hpp"
#include "threewave/model.hpp"
#include "threewave/quantum.hpp"
#include "threewave/special_functions.hpp"
#include "threewave/star_product.hpp"

namespace threewave {

Suite suite_from_string(const std::string& s) {
  if (s == "all") return Suite::all;
  if (s == "classical") return Suite::classical;
  if (s == "quantum") return Suite::quantum;
  if (s == "coherent") return Suite::coherent;
  throw std::invalid_argument("unknown suite: " + s);
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Collector {
  std::vector<CheckResult>& out;

  void add(const std::string& name, double residual, double tol,
           const std::string& note = "") {
    out.push_back({name, residual <= tol, residual, tol, note});
  }
  void add_flag(const std::string& name, bool ok, const std::string& note = "") {
    out.push_back({name, ok, ok ? 0.0 : 1.0, 0.5, note});
  }
};

ModeAmplitudes random_amplitudes(Rng& rng) {
  auto mode = [&rng] {
    const double r = uniform(rng, 0.3, 1.2);
    const double phi = uniform(rng, -M_PI, M_PI);
    return std::polar(r, phi);
  };
  return {mode(), mode(), mode()};
}

ModelParams random_params(Rng& rng) {
  ModelParams p;
  p.omega0 = uniform(rng, 0.5, 2.5);
  p.omega1 = uniform(rng, 0.5, 2.5);
  p.omega2 = uniform(rng, 0.5, 2.5);
  p.g0 = uniform(rng, 0.5, 2.0);
  p.hbar = 1.0;
  return p;
}

// ---------------------------------------------------------------- classical

void check_model_round_trip(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 200; ++it) {
    const ModeAmplitudes z = random_amplitudes(rng);
    const ActionAngle aa = to_action_angle(z);
    const ModeAmplitudes back = from_action_angle(aa);
    worst = std::max(worst, (z.vec() - back.vec()).cwiseAbs().maxCoeff());
    const ActionAngle aa2 = to_action_angle(back);
    worst = std::max({worst, std::abs(aa.I0 - aa2.I0),
                      std::abs(normalize_angle(aa.psi0 - aa2.psi0)),
                      std::abs(normalize_angle(aa.psi1 - aa2.psi1))});
  }
  col.add("model/round-trip", worst, 1e-12);
}

void check_model_hamiltonian(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 200; ++it) {
    const ModeAmplitudes z = random_amplitudes(rng);
    const ModelParams p = random_params(rng);
    const double hc = hamiltonian_classical(z, p);
    const double ha = hamiltonian_action_angle(to_action_angle(z), p);
    worst = std::max(worst, std::abs(hc - ha) / (1.0 + std::abs(hc)));
  }
  col.add("model/hamiltonian-consistency", worst, 1e-12);
}

void check_model_torus(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 100; ++it) {
    const ModeAmplitudes z = random_amplitudes(rng);
    const double t = uniform(rng, -3.0, 3.0);
    const Complex ph = std::polar(1.0, t);
    const ModeAmplitudes s0{z.z0 * ph, z.z1, z.z2};
    const ModeAmplitudes s1{z.z0 * ph, z.z1 * ph, z.z2};
    const ModeAmplitudes s2{z.z0 * ph, z.z1, z.z2 * ph};
    const ActionAngle a = to_action_angle(z);
    for (const ModeAmplitudes& w : {s0, s1, s2}) {
      const ActionAngle b = to_action_angle(w);
      worst = std::max({worst, std::abs(a.I0 - b.I0), std::abs(a.I1 - b.I1),
                        std::abs(a.I2 - b.I2)});
      const Complex za = z.z0 * std::conj(z.z1) * std::conj(z.z2);
      const Complex zb = w.z0 * std::conj(w.z1) * std::conj(w.z2);
      worst = std::max(worst, std::abs(std::abs(za) - std::abs(zb)));
    }
    // sigma_1, sigma_2 leave psi0 itself unchanged
    for (const ModeAmplitudes& w : {s1, s2}) {
      const ActionAngle b = to_action_angle(w);
      worst = std::max(worst, std::abs(normalize_angle(a.psi0 - b.psi0)));
    }
  }
  col.add("model/torus-invariance", worst, 1e-12);
}

void check_model_casimir_embed(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    ReducedInvariants inv;
    inv.c1 = uniform(rng, 0.2, 3.0);
    inv.c2 = uniform(rng, 0.2, 3.0);
    const double g0 = uniform(rng, 0.2, 2.0);
    const double I0 = uniform(rng, 1e-3, inv.c() * (1 - 1e-3));
    const double psi0 = uniform(rng, -M_PI, M_PI);
    const KummerPoint kp = kummer_embed(I0, psi0, inv, g0);
    worst = std::max(worst, std::abs(casimir(kp, inv, g0)));
  }
  col.add("model/casimir-embed-zero", worst, 1e-10);
}

void check_classical_conservation(Collector& col, std::uint64_t) {
  ModelParams p{2.0, 1.0, 1.0, 1.0, 1.0};
  const ModeAmplitudes z0{{0.6, 0.0}, {0.8, 0.1}, {0.5, 0.0}};
  const double H0 = hamiltonian_classical(z0, p);
  const auto [I1, I2] = momentum_map(z0);
  std::vector<double> grid;
  for (int i = 0; i <= 500; ++i) grid.push_back(100.0 * i / 500.0);
  const OdeSolution sol =
      rk_integrate(threewave_ode(p), pack_state(z0), {0.0, 100.0}, 1e-10,
                   1e-12, &grid);
  double worst = 0.0;
  for (const auto& y : sol.states) {
    const ModeAmplitudes z = unpack_state(y);
    const auto [i1, i2] = momentum_map(z);
    worst = std::max(
        {worst, std::abs(hamiltonian_classical(z, p) - H0) / (1 + std::abs(H0)),
         std::abs(i1 - I1) / (1 + I1), std::abs(i2 - I2) / (1 + I2)});
  }
  col.add("classical/conservation-rk", worst, 1e-8);
}

void check_classical_cubic_identity(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 20; ++it) {
    const ModelParams p = random_params(rng);
    const ModeAmplitudes z0 = random_amplitudes(rng);
    const ActionAngle aa = to_action_angle(z0);
    const ReducedInvariants inv{aa.I1, aa.I2, {}};
    const double E = hamiltonian_classical(z0, p);
    const EnergyCubic cub = energy_cubic(E, inv, p, aa.I0);
    const double delta = p.detuning();
    const double W = p.omega1 * inv.c1 + p.omega2 * inv.c2;
    for (int k = 0; k < 20; ++k) {
      const double I = uniform(rng, -1.0, 3.0);
      const double direct = 4.0 * p.g0 * p.g0 * I * (inv.c1 - I) * (inv.c2 - I) -
                            std::pow(E - delta * I - W, 2);
      const double scale = std::max(
          {std::abs(cub.p3), std::abs(cub.p2), std::abs(cub.p1),
           std::abs(cub.p0)});
      worst = std::max(worst, std::abs(cub.value(I) - direct) / scale);
    }
  }
  col.add("classical/cubic-identity", worst, 1e-12);
}

void check_classical_exact_vs_rk(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  int done = 0, attempts = 0;
  while (done < 20 && attempts < 200) {
    ++attempts;
    const ModelParams p = random_params(rng);
    const ModeAmplitudes z0 = random_amplitudes(rng);
    ExactSolution sol;
    try {
      sol = exact_solution(z0, p);
    } catch (const degenerate_motion_error&) {
      continue;
    }
    if (sol.winv.discriminant() < 1e-4) continue;  // stay away from separatrix
    const double t_end = std::min(20.0, 5.0 * sol.period());
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(t_end * i / 400.0);
    const OdeSolution rk = rk_integrate(threewave_ode(p), pack_state(z0),
                                        {0.0, t_end}, 1e-10, 1e-12, &grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const ModeAmplitudes z = unpack_state(rk.states[k]);
      worst = std::max(worst, std::abs(sol.i0(grid[k]) - std::norm(z.z0)));
    }
    ++done;
  }
  col.add("classical/exact-vs-rk", worst, 1e-6,
          done < 20 ? "insufficient non-degenerate draws" : "");
  if (done < 20) col.out.back().pass = false;
}

void check_classical_containment(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst_c = 0.0, worst_e = 0.0;
  int done = 0, attempts = 0;
  while (done < 10 && attempts < 100) {
    ++attempts;
    const ModelParams p = random_params(rng);
    const ModeAmplitudes z0 = random_amplitudes(rng);
    ExactSolution sol;
    try {
      sol = exact_solution(z0, p);
    } catch (const degenerate_motion_error&) {
      continue;
    }
    if (sol.winv.discriminant() < 1e-4) continue;
    const ActionAngle aa0 = to_action_angle(z0);
    const double E = *sol.inv.E;
    std::vector<double> grid;
    const double t_end = std::min(10.0, 3.0 * sol.period());
    for (int i = 0; i <= 200; ++i) grid.push_back(t_end * i / 200.0);
    const PhaseTrajectory ph = phase_recovery(sol, aa0, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const KummerPoint kp =
          kummer_embed(ph.I0[k], ph.psi0[k], sol.inv, p.g0);
      worst_c = std::max(worst_c, std::abs(casimir(kp, sol.inv, p.g0)));
      const double hC = p.detuning() * kp.I0 + p.omega1 * sol.inv.c1 +
                        p.omega2 * sol.inv.c2 + 2.0 * kp.x;
      worst_e = std::max(worst_e, std::abs(hC - E));
    }
    ++done;
  }
  col.add("classical/casimir-containment", worst_c, 1e-10);
  col.add("classical/energy-containment", worst_e, 1e-9);
}

void check_weierstrass(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst_ode = 0.0, worst_per = 0.0;
  for (int it = 0; it < 40; ++it) {
    WeierstrassInvariants inv{uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
    if (std::abs(inv.discriminant()) < 0.1) continue;
    const double omega = real_half_period(inv);
    for (int k = 1; k < 40; ++k) {
      const double u = 2.0 * omega * k / 40.0;
      if (std::abs(std::remainder(u, 2.0 * omega)) < 1e-3 * omega) continue;
      const double wp = weierstrass_p(u, inv);
      const double wpp = weierstrass_p_prime(u, inv);
      const double res = wpp * wpp - (4.0 * wp * wp * wp - inv.g2 * wp - inv.g3);
      worst_ode = std::max(
          worst_ode, std::abs(res) / (1.0 + std::abs(wp * wp * wp)));
      worst_per =
          std::max(worst_per, std::abs(weierstrass_p(u + 2.0 * omega, inv) - wp) /
                                  (1.0 + std::abs(wp)));
      if (inv.discriminant() > 0.0) {
        const double wb = weierstrass_p_bounded(u, inv);
        const double wbp = weierstrass_p_bounded_prime(u, inv);
        const double resb =
            wbp * wbp - (4.0 * wb * wb * wb - inv.g2 * wb - inv.g3);
        worst_ode = std::max(
            worst_ode, std::abs(resb) / (1.0 + std::abs(wb * wb * wb)));
      }
    }
  }
  col.add("special/weierstrass-ode-residual", worst_ode, 1e-9);
  col.add("special/weierstrass-periodicity", worst_per, 1e-10);
}

// ------------------------------------------------------------------ quantum

void check_spectrum_symmetry(Collector& col, std::uint64_t, bool negate) {
  const ModelParams p{2.0, 1.0, 1.0, 1.0, 1.0};
  double worst = 0.0;
  for (int v1 = 0; v1 <= 8; ++v1)
    for (int v2 = 0; v2 <= 8; ++v2) {
      TridiagonalBlock block = build_block({v1, v2}, p);
      if (negate && block.dim() > 1)
        block.offdiag(block.dim() - 2) = -block.offdiag(block.dim() - 2);
      // b_k > 0 is the block invariant the parity argument rests on
      for (int k = 0; k + 1 < block.dim(); ++k)
        if (!(block.offdiag(k) > 0.0)) {
          col.add_flag("quantum/spectrum-symmetry", false,
                       "coupling positivity invariant violated (b_k <= 0)");
          return;
        }
      const BlockSpectrum sp = block_spectrum(block, SpectrumMethod::sturm);
      const int m = block.dim();
      for (int j = 0; j < m; ++j)
        worst = std::max(worst, std::abs(sp.eigenvalues(j) - block.shift +
                                         (sp.eigenvalues(m - 1 - j) - block.shift)));
      // zero-eigenvalue count: 1 iff L even, 0 iff L odd
      int zeros = 0;
      for (int j = 0; j < m; ++j)
        if (std::abs(sp.eigenvalues(j) - block.shift) < 1e-10) ++zeros;
      if (zeros != (m % 2 == 1 ? 1 : 0)) {
        col.add_flag("quantum/spectrum-symmetry", false,
                     "zero-eigenvalue parity count failed");
        return;
      }
    }
  col.add("quantum/spectrum-symmetry", worst, 1e-12);
}

void check_delta_recurrence(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 40; ++it) {
    const int v1 = int(uniform(rng, 0.0, 10.99));
    const int v2 = int(uniform(rng, 0.0, 10.99));
    ModelParams p = random_params(rng);
    if (it % 2 == 0) p.omega0 = p.omega1 + p.omega2;  // exercise resonance too
    const TridiagonalBlock block = build_block({v1, v2}, p);
    const double lambda = uniform(rng, -5.0, 5.0);
    const Eigen::VectorXd delta = char_poly_delta(lambda, block);
    const int m = block.dim();
    const Eigen::MatrixXd dense =
        block.interaction() - lambda * Eigen::MatrixXd::Identity(m, m);
    const double det = dense.determinant();
    const double scale = std::max(1.0, std::abs(det));
    worst = std::max(worst, std::abs(delta(m) - det) / scale);
  }
  col.add("quantum/delta-recurrence-vs-dense", worst, 1e-10);
}

void check_explicit_vs_sturm(Collector& col, std::uint64_t) {
  const ModelParams p{2.0, 1.0, 1.0, 1.0, 1.0};
  double worst = 0.0;
  for (int v1 = 0; v1 <= 10; ++v1)
    for (int v2 = 0; v2 <= 10; ++v2) {
      if (std::min(v1, v2) > 8) continue;
      const TridiagonalBlock block = build_block({v1, v2}, p);
      const BlockSpectrum a = block_spectrum(block, SpectrumMethod::explicit_roots);
      const BlockSpectrum b = block_spectrum(block, SpectrumMethod::sturm);
      worst = std::max(worst,
                       (a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff());
    }
  col.add("quantum/explicit-vs-sturm", worst, 1e-10);
}

void check_commutation_float(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 10; ++it) {
    const int v1 = int(uniform(rng, 0.0, 6.99));
    const int v2 = int(uniform(rng, 0.0, 6.99));
    const ModelParams p = random_params(rng);
    const BlockOperators ops = block_operators({v1, v2}, p);
    const double h = p.hbar;
    const double scale = std::max(1.0, ops.A.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd c1 = ops.A0 * ops.A - ops.A * ops.A0 + h * ops.A;
    const Eigen::MatrixXd c2 =
        ops.A0 * ops.Astar - ops.Astar * ops.A0 - h * ops.Astar;
    worst = std::max(worst, c1.cwiseAbs().maxCoeff() / scale);
    worst = std::max(worst, c2.cwiseAbs().maxCoeff() / scale);
  }
  col.add("quantum/commutation-float", worst, 1e-12);
}

void check_exact_algebra(Collector& col, std::uint64_t) {
  for (int v1 = 0; v1 <= 5; ++v1)
    for (int v2 = 0; v2 <= 5; ++v2) {
      const auto results =
          exact_block_relations(v1, v2, Rational(1, 2), Rational(3, 2));
      for (const auto& r : results)
        if (!r.exact) {
          col.add_flag("quantum/exact-algebra", false,
                       "failed: " + r.name + " at v1=" + std::to_string(v1) +
                           " v2=" + std::to_string(v2));
          return;
        }
    }
  col.add_flag("quantum/exact-algebra", true, "all relations exact, v <= 5");
}

void check_unitarity(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst_u = 0.0, worst_g = 0.0;
  for (int it = 0; it < 10; ++it) {
    const int v1 = int(uniform(rng, 0.0, 6.99));
    const int v2 = int(uniform(rng, 0.0, 6.99));
    const ModelParams p = random_params(rng);
    const TridiagonalBlock block = build_block({v1, v2}, p);
    const double t = uniform(rng, -5.0, 5.0), s = uniform(rng, -5.0, 5.0);
    const Eigen::MatrixXcd U = evolution_operator(t, block);
    const int m = block.dim();
    worst_u = std::max(
        worst_u, (U.adjoint() * U - Eigen::MatrixXcd::Identity(m, m)).norm());
    worst_g = std::max(worst_g, (evolution_operator(s, block) * U -
                                 evolution_operator(s + t, block))
                                    .norm());
  }
  col.add("quantum/unitarity", worst_u, 1e-11);
  col.add("quantum/group-law", worst_g, 1e-10);
}

void check_block_vs_fock(Collector& col, std::uint64_t) {
  const ModelParams p{2.2, 1.3, 0.7, 1.1, 1.0};
  const FockOracle oracle({4, 4, 4}, p);
  double worst_m = 0.0, worst_s = 0.0;
  for (int v1 = 0; v1 <= 4; ++v1)
    for (int v2 = 0; v2 <= 4; ++v2) {
      const BlockLabel label{v1, v2};
      const TridiagonalBlock block = build_block(label, p);
      const Eigen::MatrixXd sector = oracle.extract_block(label);
      worst_m = std::max(worst_m,
                         (sector - block.dense()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector);
      const BlockSpectrum sp = block_spectrum(block, SpectrumMethod::sturm);
      worst_s = std::max(
          worst_s, (es.eigenvalues() - sp.eigenvalues).cwiseAbs().maxCoeff());
    }
  worst_m = std::max(worst_m, oracle.invariant_commutator_defect());
  col.add("quantum/block-vs-fock", worst_m, 1e-12);
  col.add("quantum/block-vs-fock-spectra", worst_s, 1e-10);
}

void check_closed_forms(Collector& col, std::uint64_t) {
  const ModelParams p{2.0, 1.2, 0.8, 1.3, 1.0};
  double worst = 0.0;
  for (int v1 : {1, 2, 3, 5}) {
    const TridiagonalBlock b1 = build_block({v1, 1}, p);
    for (int i = 0; i <= 100; ++i) {
      const double t = -5.0 + 10.0 * i / 100.0;
      worst = std::max(worst, (closed_form_U_L1(t, v1, p) -
                               evolution_operator(t, b1))
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  for (int v1 : {2, 3, 4, 6}) {
    const TridiagonalBlock b2 = build_block({v1, 2}, p);
    const BlockOperators ops = block_operators({v1, 2}, p);
    for (int i = 0; i <= 100; ++i) {
      const double t = -5.0 + 10.0 * i / 100.0;
      const Eigen::MatrixXcd U = evolution_operator(t, b2);
      worst = std::max(worst, (closed_form_U_L2(t, v1, p) - U)
                                  .cwiseAbs()
                                  .maxCoeff());
      const Eigen::MatrixXcd a0t =
          U.adjoint() * ops.A0.cast<Complex>() * U;
      worst = std::max(worst, (closed_form_A0_L2(t, v1, p) - a0t)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  col.add("quantum/closed-forms-L1-L2", worst, 1e-10);
}

void check_transition(Collector& col, std::uint64_t) {
  const ModelParams p{2.0, 1.2, 0.8, 1.0, 1.0};
  double worst_eq = 0.0, worst_zero = 0.0;
  for (int v1 : {2, 3, 5}) {
    const TridiagonalBlock block = build_block({v1, 2}, p);
    const double nu = p.g0 * std::sqrt(2.0 * p.hbar * (2.0 * v1 - 1.0));
    for (int i = 0; i <= 60; ++i) {
      const double t = 8.0 * i / 60.0;
      worst_eq = std::max(worst_eq,
                          std::abs(transition_probability(t, v1, p) -
                                   transition_probability_matrix(t, block, 2, 0)));
    }
    for (int K = 1; K <= 5; ++K)
      worst_zero = std::max(worst_zero,
                            transition_probability(2.0 * K * M_PI / nu, v1, p));
  }
  // amplitude benchmark: v1 = 2, t = pi/nu -> 8/9
  {
    const int v1 = 2;
    const double nu = p.g0 * std::sqrt(2.0 * p.hbar * (2.0 * v1 - 1.0));
    worst_eq = std::max(worst_eq, std::abs(transition_probability(M_PI / nu, v1, p) -
                                           8.0 / 9.0) /
                                      1e2);  // separate tolerance below
    col.add("quantum/transition-amplitude",
            std::abs(transition_probability(M_PI / nu, v1, p) - 8.0 / 9.0),
            1e-10);
  }
  col.add("quantum/transition-closed-vs-matrix", worst_eq, 1e-12);
  col.add("quantum/transition-zeros", worst_zero, 1e-12);
}

void check_heisenberg(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 6; ++it) {
    const int v1 = int(uniform(rng, 1.0, 6.99));
    const int v2 = int(uniform(rng, 1.0, 6.99));
    ModelParams p = random_params(rng);
    if (it % 2 == 0) p.omega0 = p.omega1 + p.omega2;
    const TridiagonalBlock block = build_block({v1, v2}, p);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(-2.0 + 4.0 * i / 10.0);
    const HeisenbergResiduals r = heisenberg_residual(block, grid);
    const double hn = block.dense().norm();
    const double scale = std::max(1.0, hn * hn);
    worst = std::max({worst, r.a0_eq / scale, r.x_eq / scale, r.y_eq / scale,
                      r.a0_second / scale});
    // resonance: X is an integral of motion
    if (std::abs(p.detuning()) < 1e-12) {
      const BlockOperators ops = block_operators({v1, v2}, p);
      const Eigen::MatrixXcd U = evolution_operator(1.7, block);
      worst = std::max(worst, (U.adjoint() * ops.X.cast<Complex>() * U -
                               ops.X.cast<Complex>())
                                      .norm() /
                                  scale);
    }
  }
  col.add("quantum/heisenberg-residual", worst, 1e-10);
}

// ----------------------------------------------------------------- coherent

void check_star_relations(Collector& col, std::uint64_t) {
  const Rational g0(3, 2);
  const PolySymbol I0 = symbol_I0(), I1 = symbol_I1(), I2 = symbol_I2();
  const PolySymbol z = symbol_z(g0), zb = symbol_zbar(g0);
  const HbarPoly hbar = HbarPoly::hbar_power(1);
  const HbarPoly g2(CRational(g0 * g0));

  bool ok = true;
  std::string note;
  auto expect = [&](const char* name, const PolySymbol& lhs,
                    const PolySymbol& rhs) {
    if (!(lhs - rhs).is_zero()) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += name;
    }
  };

  expect("I0*z", star_product(I0, z) - star_product(z, I0),
         HbarPoly(CRational(Rational(-1))) * (hbar * z));
  expect("I0*zbar", star_product(I0, zb) - star_product(zb, I0), hbar * zb);
  {
    const PolySymbol poly =
        HbarPoly(CRational(Rational(3))) * (I0 * I0) -
        HbarPoly(CRational(Rational(2))) * ((I1 + I2) * I0) + I1 * I2 -
        hbar * I0;
    expect("z*zbar", star_product(z, zb) - star_product(zb, z),
           hbar * (g2 * poly));
  }
  expect("I1-central-z", star_product(I1, z), star_product(z, I1));
  expect("I2-central-z", star_product(I2, z), star_product(z, I2));
  expect("I1-central-zbar", star_product(I1, zb), star_product(zb, I1));
  expect("Ik-Il", star_product(I1, I2), star_product(I2, I1));
  expect("I0-I1", star_product(I0, I1), star_product(I1, I0));
  col.add_flag("star/relations-exact", ok, note);
}

void check_poisson_relations(Collector& col, std::uint64_t) {
  const Rational g0(3, 2);
  const PolySymbol I0 = symbol_I0(), I1 = symbol_I1(), I2 = symbol_I2();
  const PolySymbol z = symbol_z(g0), zb = symbol_zbar(g0);
  const HbarPoly half(CRational(Rational(1, 2)));
  const HbarPoly minus_i_half(CRational(Rational(0), Rational(-1, 2)));
  const PolySymbol x = half * (z + zb);
  const PolySymbol y = minus_i_half * (z - zb);

  bool ok = true;
  std::string note;
  auto expect = [&](const char* name, const PolySymbol& lhs,
                    const PolySymbol& rhs) {
    if (!(lhs - rhs).is_zero()) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += name;
    }
  };
  const PolySymbol zero;
  expect("{I0,x}=-y", poisson_bracket(I0, x),
         HbarPoly(CRational(Rational(-1))) * y);
  expect("{I0,y}=x", poisson_bracket(I0, y), x);
  {
    const HbarPoly half_g2(CRational(g0 * g0 * Rational(1, 2)));
    const PolySymbol rhs =
        half_g2 * (HbarPoly(CRational(Rational(3))) * (I0 * I0) -
                   HbarPoly(CRational(Rational(2))) * ((I1 + I2) * I0) +
                   I1 * I2);
    expect("{x,y}", poisson_bracket(x, y), rhs);
  }
  expect("{I1,x}=0", poisson_bracket(I1, x), zero);
  expect("{I2,y}=0", poisson_bracket(I2, y), zero);
  expect("{I0,I1}=0", poisson_bracket(I0, I1), zero);
  expect("{I1,I2}=0", poisson_bracket(I1, I2), zero);
  col.add_flag("star/poisson-relations", ok, note);
}

PolySymbol random_symbol(Rng& rng, int max_deg, int terms) {
  PolySymbol s;
  for (int t = 0; t < terms; ++t) {
    Exponents e;
    for (int i = 0; i < 6; ++i)
      e[i] = int(uniform(rng, 0.0, max_deg + 0.99));
    const long long num = (long long)(uniform(rng, -3.99, 3.99));
    const long long den = (long long)(uniform(rng, 1.0, 3.99));
    const long long imn = (long long)(uniform(rng, -2.99, 2.99));
    s = s + PolySymbol::monomial(e, CRational(Rational(num, den),
                                              Rational(imn, den)));
  }
  return s;
}

void check_star_associativity(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  bool ok = true;
  for (int it = 0; it < 6 && ok; ++it) {
    const PolySymbol F = random_symbol(rng, 2, 3);
    const PolySymbol G = random_symbol(rng, 2, 3);
    const PolySymbol H = random_symbol(rng, 2, 3);
    ok = (star_product(star_product(F, G), H) -
          star_product(F, star_product(G, H)))
             .is_zero();
  }
  // unit
  const PolySymbol one = PolySymbol::constant(CRational(Rational(1)));
  const PolySymbol F = random_symbol(rng, 2, 3);
  ok = ok && (star_product(one, F) - F).is_zero() &&
       (star_product(F, one) - F).is_zero();
  col.add_flag("star/associativity-and-unit", ok);
}

void check_classical_limit(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  const Rational g0(3, 2);
  std::vector<PolySymbol> gens = {symbol_I0(), symbol_I1(), symbol_I2(),
                                  symbol_z(g0), symbol_zbar(g0)};
  bool ok = true;
  for (std::size_t i = 0; i < gens.size() && ok; ++i)
    for (std::size_t j = 0; j < gens.size() && ok; ++j)
      ok = classical_limit_check(gens[i], gens[j]).is_zero();
  for (int it = 0; it < 50 && ok; ++it) {
    const auto pick = [&rng, &gens]() -> const PolySymbol& {
      return gens[std::size_t(uniform(rng, 0.0, 4.99))];
    };
    const PolySymbol F = star_product(pick(), pick());
    const PolySymbol G = star_product(pick(), pick());
    ok = classical_limit_check(F, G).is_zero();
  }
  col.add_flag("star/classical-limit", ok);
}

void check_coherent_eigenrelations(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 30; ++it) {
    const int v1 = int(uniform(rng, 0.0, 6.99));
    const int v2 = int(uniform(rng, 0.0, 6.99));
    ModelParams p = random_params(rng);
    const double r = uniform(rng, 0.0, 10.0);
    const Complex zhat = std::polar(r, uniform(rng, -M_PI, M_PI));
    const ReducedCoherentVector v =
        reduced_coherent_vector(zhat, {v1, v2}, p);
    const double scale =
        1.0 + v.amplitudes.cwiseAbs().maxCoeff() *
                  std::max(1.0, p.hbar * std::max(v1, v2) * p.hbar *
                                    std::max(v1, v2));
    worst = std::max(worst,
                     coherent_eigenrelation_residuals(v, p).maxCoeff() / scale);
  }
  col.add("coherent/eigenrelations", worst, 1e-12);
}

void check_kernel_consistency(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int it = 0; it < 50; ++it) {
    const int v1 = int(uniform(rng, 0.0, 5.99));
    const int v2 = int(uniform(rng, 0.0, 5.99));
    const ModelParams p = random_params(rng);
    const Complex zh = std::polar(uniform(rng, 0.0, 2.0), uniform(rng, -M_PI, M_PI));
    const Complex wh = std::polar(uniform(rng, 0.0, 2.0), uniform(rng, -M_PI, M_PI));
    const BlockLabel lb{v1, v2};
    const Complex k1 = reproducing_kernel(zh, wh, lb, p);
    const auto a = reduced_coherent_vector(zh, lb, p);
    const auto b = reduced_coherent_vector(wh, lb, p);
    const Complex dot = a.amplitudes.adjoint() * b.amplitudes;
    worst = std::max(worst, std::abs(k1 - dot));
    worst = std::max(worst,
                     std::abs(k1 - std::conj(reproducing_kernel(wh, zh, lb, p))));
    const Complex via_2f0 =
        hyp2f0_terminating(v1, v2, std::conj(zh) * wh * p.hbar / (p.g0 * p.g0)) /
        (std::tgamma(v1 + 1.0) * std::tgamma(v2 + 1.0));
    worst = std::max(worst, std::abs(k1 - via_2f0));
  }
  col.add("coherent/kernel-consistency", worst, 1e-14);
}

void check_moments(Collector& col, std::uint64_t) {
  const ModelParams p{2.0, 1.0, 1.0, 1.0, 1.0};
  double worst = 0.0;
  for (int v1 = 0; v1 <= 6; ++v1)
    for (int v2 = 0; v2 <= 6; ++v2) {
      const BlockLabel lb{v1, v2};
      for (int n = 0; n <= lb.L(); ++n)
        worst = std::max(worst, moment_check(n, lb, p));
    }
  col.add("coherent/moments", worst, 1e-6);
}

void check_ode_matrix(Collector& col, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int v1 = 0; v1 <= 6; ++v1)
    for (int v2 = 0; v2 <= 6; ++v2) {
      ModelParams p = random_params(rng);
      if ((v1 + v2) % 2 == 0) p.omega0 = p.omega1 + p.omega2;
      const BlockLabel lb{v1, v2};
      const Eigen::MatrixXd M = hamiltonian_ode_matrix(lb, p);
      Eigen::EigenSolver<Eigen::MatrixXd> es(M);
      Eigen::VectorXd ev = es.eigenvalues().real();
      std::sort(ev.data(), ev.data() + ev.size());
      const BlockSpectrum sp =
          block_spectrum(build_block(lb, p), SpectrumMethod::sturm);
      worst = std::max(worst, (ev - sp.eigenvalues).cwiseAbs().maxCoeff());
      worst = std::max(worst, es.eigenvalues().imag().cwiseAbs().maxCoeff());
    }
  col.add("coherent/ode-matrix-spectrum", worst, 1e-9);
}

void check_rho_positivity(Collector& col, std::uint64_t) {
  const ModelParams p{2.0, 1.0, 1.0, 1.0, 1.0};
  bool ok = true;
  for (int v1 : {0, 1, 3})
    for (int v2 : {0, 2, 3})
      for (double x : {1e-2, 0.1, 1.0, 10.0, 100.0})
        ok = ok && weight_rho(x, {v1, v2}, p) > 0.0;
  col.add_flag("coherent/rho-positivity", ok);
}

}  // namespace

std::vector<CheckResult> run_verification(Suite suite, std::uint64_t seed,
                                          const FaultInjection& fault) {
  std::vector<CheckResult> results;
  Collector col{results};

  const bool cls = suite == Suite::all || suite == Suite::classical;
  const bool qtm = suite == Suite::all || suite == Suite::quantum;
  const bool coh = suite == Suite::all || suite == Suite::coherent;

  if (cls) {
    check_model_round_trip(col, seed + 1);
    check_model_hamiltonian(col, seed + 2);
    check_model_torus(col, seed + 3);
    check_model_casimir_embed(col, seed + 4);
    check_classical_conservation(col, seed + 5);
    check_classical_cubic_identity(col, seed + 6);
    check_classical_exact_vs_rk(col, seed + 7);
    check_classical_containment(col, seed + 8);
    check_weierstrass(col, seed + 9);
  }
  if (qtm) {
    check_spectrum_symmetry(col, seed + 20, fault.negate_coupling);
    check_delta_recurrence(col, seed + 21);
    check_explicit_vs_sturm(col, seed + 22);
    check_commutation_float(col, seed + 23);
    check_exact_algebra(col, seed + 24);
    check_unitarity(col, seed + 25);
    check_block_vs_fock(col, seed + 26);
    check_closed_forms(col, seed + 27);
    check_transition(col, seed + 28);
    check_heisenberg(col, seed + 29);
  }
  if (coh) {
    check_star_relations(col, seed + 40);
    check_poisson_relations(col, seed + 41);
    check_star_associativity(col, seed + 42);
    check_classical_limit(col, seed + 43);
    check_coherent_eigenrelations(col, seed + 44);
    check_kernel_consistency(col, seed + 45);
    check_moments(col, seed + 46);
    check_ode_matrix(col, seed + 47);
    check_rho_positivity(col, seed + 48);
  }
  return results;
}

}  // namespace threewave
