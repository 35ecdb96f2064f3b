// threewave: simulate and verify the non-linearly coupled three-mode system.
//
// Subcommands: classical, spectrum, evolve-q, transition, measure, verify.
// Configuration is a single JSON document (path or "-" for stdin); outputs go
// to files named by --out. Exit codes: 0 ok, 1 verification failure,
// 2 config error, 3 degenerate dynamics, 4 capability error.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "threewave/classical.hpp"
#include "threewave/coherent.hpp"
#include "threewave/model.hpp"
#include "threewave/quantum.hpp"
#include "threewave/verify.hpp"

using json = nlohmann::json;
using namespace threewave;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitCapability = 4;

std::uint64_t run_seed() {
  if (const char* env = std::getenv("THREEWAVE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw std::invalid_argument("THREEWAVE_SEED is not an integer");
    }
  }
  return 20260809ull;
}

json load_config(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return json::parse(in);
}

ModelParams parse_params(const json& cfg) {
  const json& p = cfg.at("params");
  ModelParams mp;
  mp.omega0 = p.at("omega0").get<double>();
  mp.omega1 = p.at("omega1").get<double>();
  mp.omega2 = p.at("omega2").get<double>();
  mp.g0 = p.at("g0").get<double>();
  mp.hbar = p.value("hbar", 1.0);
  if (!std::isfinite(mp.omega0) || !std::isfinite(mp.omega1) ||
      !std::isfinite(mp.omega2) || !std::isfinite(mp.g0) ||
      !(mp.hbar > 0.0))
    throw std::invalid_argument("params: fields must be finite, hbar > 0");
  return mp;
}

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::pair<double, double> parse_span(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("t_span must be [t0, t1]");
  const double a = j[0].get<double>(), b = j[1].get<double>();
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
    throw std::invalid_argument("t_span must be finite and increasing");
  return {a, b};
}

int parse_samples(const json& j) {
  const int n = j.get<int>();
  if (n < 2) throw std::invalid_argument("n_samples must be >= 2");
  return n;
}

std::vector<double> time_grid(std::pair<double, double> span, int n) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = span.first + (span.second - span.first) * i / double(n - 1);
  return grid;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << body;
}

void write_json(const std::string& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

// ------------------------------------------------------------------ classical

int cmd_classical(const json& cfg, const std::string& out) {
  const ModelParams p = parse_params(cfg);
  const json& c = cfg.at("classical");
  const ModeAmplitudes z0{parse_complex(c.at("z0")), parse_complex(c.at("z1")),
                          parse_complex(c.at("z2"))};
  const auto span = parse_span(c.at("t_span"));
  const int n = parse_samples(c.at("n_samples"));
  const std::string method = c.value("method", "rk");
  if (method != "exact" && method != "rk" && method != "both")
    throw std::invalid_argument("classical.method must be exact|rk|both");

  const std::vector<double> grid = time_grid(span, n);
  const auto [c1, c2] = momentum_map(z0);
  const ReducedInvariants inv{c1, c2, hamiltonian_classical(z0, p)};

  std::vector<ModeAmplitudes> traj(n);
  if (method == "rk" || method == "both") {
    const OdeSolution rk =
        rk_integrate(threewave_ode(p), pack_state(z0), span, 1e-10, 1e-12, &grid);
    for (int i = 0; i < n; ++i) traj[i] = unpack_state(rk.states[i]);
  }

  ExactSolution sol;
  std::vector<double> i0_exact;
  if (method == "exact" || method == "both") {
    sol = exact_solution(z0, p);
    i0_exact.resize(n);
    for (int i = 0; i < n; ++i) i0_exact[i] = sol.i0(grid[i]);
    if (method == "exact") {
      const PhaseTrajectory ph = phase_recovery(sol, to_action_angle(z0), grid);
      for (int i = 0; i < n; ++i) {
        ActionAngle aa{ph.I0[i], c1, c2, ph.psi0[i], ph.psi1[i], ph.psi2[i]};
        traj[i] = from_action_angle(aa);
      }
    }
  }

  std::ostringstream csv;
  csv << "t,re_z0,im_z0,re_z1,im_z1,re_z2,im_z2,I0,psi0,H,C";
  if (method == "both") csv << ",I0_exact";
  csv << "\n";
  double drift_H = 0.0, drift_I1 = 0.0, drift_I2 = 0.0, max_dev = 0.0;
  for (int i = 0; i < n; ++i) {
    const ModeAmplitudes& z = traj[i];
    const double I0 = std::norm(z.z0);
    const Complex zc = p.g0 * z.z0 * std::conj(z.z1) * std::conj(z.z2);
    const double psi0 = (zc == Complex(0.0)) ? 0.0 : std::arg(zc);
    const double H = hamiltonian_classical(z, p);
    const double C = casimir({zc.real(), zc.imag(), I0}, inv, p.g0);
    csv << fmt(grid[i]) << ',' << fmt(z.z0.real()) << ',' << fmt(z.z0.imag())
        << ',' << fmt(z.z1.real()) << ',' << fmt(z.z1.imag()) << ','
        << fmt(z.z2.real()) << ',' << fmt(z.z2.imag()) << ',' << fmt(I0) << ','
        << fmt(psi0) << ',' << fmt(H) << ',' << fmt(C);
    if (method == "both") {
      csv << ',' << fmt(i0_exact[i]);
      max_dev = std::max(max_dev, std::abs(i0_exact[i] - I0));
    }
    csv << '\n';
    const auto [i1, i2] = momentum_map(z);
    drift_H = std::max(drift_H, std::abs(H - *inv.E) / (1 + std::abs(*inv.E)));
    drift_I1 = std::max(drift_I1, std::abs(i1 - c1) / (1 + c1));
    drift_I2 = std::max(drift_I2, std::abs(i2 - c2) / (1 + c2));
  }
  write_file(out + "_trajectory.csv", csv.str());

  json summary;
  summary["method"] = method;
  summary["E"] = *inv.E;
  summary["c1"] = c1;
  summary["c2"] = c2;
  if (method != "exact") {
    summary["drift_H"] = drift_H;
    summary["drift_I1"] = drift_I1;
    summary["drift_I2"] = drift_I2;
  }
  if (method != "rk") {
    summary["period"] =
        std::isfinite(sol.period()) ? json(sol.period()) : json();
  }
  if (method == "both") summary["max_dev_exact_rk"] = max_dev;
  write_json(out + "_summary.json", summary);
  return kExitOk;
}

// ------------------------------------------------------------------- spectrum

int cmd_spectrum(const json& cfg, const std::string& out) {
  const ModelParams p = parse_params(cfg);
  const json& c = cfg.at("spectrum");
  const BlockLabel label{c.at("v1").get<int>(), c.at("v2").get<int>()};
  if (label.v1 < 0 || label.v2 < 0)
    throw std::invalid_argument("spectrum: v1, v2 must be >= 0");
  const std::string method = c.value("method", "both");
  if (method != "explicit" && method != "sturm" && method != "both")
    throw std::invalid_argument("spectrum.method must be explicit|sturm|both");

  const TridiagonalBlock block = build_block(label, p);
  json j;
  j["v1"] = label.v1;
  j["v2"] = label.v2;
  j["shift"] = block.shift;

  const Eigen::VectorXd coeffs = char_poly_coefficients(block);
  j["char_poly_coeffs"] = std::vector<double>(coeffs.data(),
                                              coeffs.data() + coeffs.size());
  const bool resonant = std::abs(p.detuning()) <=
                        1e-12 * std::max({1.0, std::abs(p.omega0),
                                          std::abs(p.omega1),
                                          std::abs(p.omega2)});
  j["parity"] = !resonant ? "none" : (label.L() % 2 == 0 ? "odd" : "even");

  const BlockSpectrum sturm = block_spectrum(block, SpectrumMethod::sturm);
  j["eigenvalues_sturm"] = std::vector<double>(
      sturm.eigenvalues.data(),
      sturm.eigenvalues.data() + sturm.eigenvalues.size());

  const bool explicit_possible = resonant && label.L() <= 8;
  if (method == "explicit" && !explicit_possible)
    throw capability_error(
        "spectrum: explicit method requires resonance and L <= 8");
  if (method != "sturm" && explicit_possible) {
    const BlockSpectrum ex =
        block_spectrum(block, SpectrumMethod::explicit_roots);
    j["eigenvalues_explicit"] = std::vector<double>(
        ex.eigenvalues.data(), ex.eigenvalues.data() + ex.eigenvalues.size());
  }
  write_json(out + "_spectrum.json", j);
  return kExitOk;
}

// ------------------------------------------------------------------- evolve-q

int cmd_evolve_q(const json& cfg, const std::string& out) {
  const ModelParams p = parse_params(cfg);
  const json& c = cfg.at("quantum");
  const BlockLabel label{c.at("v1").get<int>(), c.at("v2").get<int>()};
  if (label.v1 < 0 || label.v2 < 0)
    throw std::invalid_argument("quantum: v1, v2 must be >= 0");
  const auto span = parse_span(c.at("t_span"));
  const int n = parse_samples(c.at("n_samples"));
  const int L = label.L();

  Eigen::VectorXcd psi0(L + 1);
  const json& init = c.at("initial");
  if (init.contains("basis")) {
    const int idx = init.at("basis").get<int>();
    if (idx < 0 || idx > L)
      throw std::invalid_argument("quantum.initial.basis outside [0, L]");
    psi0.setZero();
    psi0(idx) = 1.0;
  } else if (init.contains("coherent")) {
    const Complex zhat = parse_complex(init.at("coherent"));
    const ReducedCoherentVector v = reduced_coherent_vector(zhat, label, p);
    psi0 = v.amplitudes / v.amplitudes.norm();
  } else {
    throw std::invalid_argument("quantum.initial needs 'basis' or 'coherent'");
  }

  const TridiagonalBlock block = build_block(label, p);
  const BlockOperators ops = block_operators(label, p);
  std::ostringstream csv;
  csv << "t";
  for (int k = 0; k <= L; ++k) csv << ",pop_" << k;
  csv << ",mean_A0,mean_X,mean_Y\n";
  for (const double t : time_grid(span, n)) {
    const Eigen::VectorXcd psi = evolution_operator(t, block) * psi0;
    csv << fmt(t);
    for (int k = 0; k <= L; ++k) csv << ',' << fmt(std::norm(psi(k)));
    const Complex a0 = psi.adjoint() * ops.A0.cast<Complex>() * psi;
    const Complex x = psi.adjoint() * ops.X.cast<Complex>() * psi;
    const Complex y = psi.adjoint() * ops.Y * psi;
    csv << ',' << fmt(a0.real()) << ',' << fmt(x.real()) << ','
        << fmt(y.real()) << '\n';
  }
  write_file(out + "_evolution.csv", csv.str());
  return kExitOk;
}

// ----------------------------------------------------------------- transition

int cmd_transition(const json& cfg, const std::string& out) {
  const ModelParams p = parse_params(cfg);
  const json& c = cfg.at("quantum");
  const int v1 = c.at("v1").get<int>();
  const auto span = parse_span(c.at("t_span"));
  const int n = parse_samples(c.at("n_samples"));

  const TridiagonalBlock block = build_block({v1, 2}, p);
  std::ostringstream csv;
  csv << "t,p_closed,p_matrix\n";
  for (const double t : time_grid(span, n)) {
    const double closed = transition_probability(t, v1, p);
    const double matrix = transition_probability_matrix(t, block, 2, 0);
    csv << fmt(t) << ',' << fmt(closed) << ',' << fmt(matrix) << '\n';
  }
  write_file(out + "_transition.csv", csv.str());
  return kExitOk;
}

// -------------------------------------------------------------------- measure

int cmd_measure(const json& cfg, const std::string& out) {
  const ModelParams p = parse_params(cfg);
  const json& c = cfg.at("measure");
  const BlockLabel label{c.at("v1").get<int>(), c.at("v2").get<int>()};
  if (label.v1 < 0 || label.v2 < 0)
    throw std::invalid_argument("measure: v1, v2 must be >= 0");
  const int n_max = std::min(c.value("n_max", label.L()), label.L());

  json j;
  j["v1"] = label.v1;
  j["v2"] = label.v2;
  json moments = json::array();
  for (int n = 0; n <= n_max; ++n)
    moments.push_back({{"n", n}, {"residual", moment_check(n, label, p)}});
  j["moments"] = moments;
  json samples = json::array();
  for (double x : {0.01, 0.0316, 0.1, 0.316, 1.0, 3.16, 10.0, 31.6, 100.0})
    samples.push_back({{"x", x}, {"rho", weight_rho(x, label, p)}});
  j["rho_samples"] = samples;
  write_json(out + "_measure.json", j);
  return kExitOk;
}

// --------------------------------------------------------------------- verify

int cmd_verify(const std::string& suite_name, const std::string& fault_name) {
  const Suite suite = suite_from_string(suite_name);
  FaultInjection fault;
  if (!fault_name.empty()) {
    if (fault_name == "negate-coupling")
      fault.negate_coupling = true;
    else
      throw std::invalid_argument("unknown fault: " + fault_name);
  }
  const std::uint64_t seed = run_seed();
  std::printf("threewave verify: suite=%s seed=%llu\n", suite_name.c_str(),
              (unsigned long long)seed);
  const auto results = run_verification(suite, seed, fault);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-38s residual=%-12.3e tol=%-9.0e %s\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.residual,
                r.tolerance, r.note.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%d/%zu checks passed\n", int(results.size()) - failed,
              results.size());
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

// ------------------------------------------------------------------- plumbing

struct RunOpts {
  std::vector<std::string> configs;
  std::string out = "out";
  int jobs = 1;
};

void add_run_options(CLI::App* cmd, RunOpts& opts) {
  cmd->add_option("--config", opts.configs,
                  "JSON config path(s); '-' reads standard input")
      ->required();
  cmd->add_option("--out", opts.out, "output file prefix");
  cmd->add_option("--jobs", opts.jobs, "parallel workers for multiple configs")
      ->check(CLI::PositiveNumber);
}

int run_many(const RunOpts& opts, int (*fn)(const json&, const std::string&)) {
  // parse everything up front so config errors win over partial output
  std::vector<json> cfgs;
  for (const auto& path : opts.configs) cfgs.push_back(load_config(path));
  std::vector<std::string> outs;
  for (std::size_t i = 0; i < cfgs.size(); ++i)
    outs.push_back(cfgs.size() == 1 ? opts.out
                                    : opts.out + "_" + std::to_string(i));

  std::vector<int> codes(cfgs.size(), kExitOk);
  if (opts.jobs <= 1 || cfgs.size() <= 1) {
    for (std::size_t i = 0; i < cfgs.size(); ++i) codes[i] = fn(cfgs[i], outs[i]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < opts.jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cfgs.size();
             i = next.fetch_add(1))
          codes[i] = fn(cfgs[i], outs[i]);
      });
    for (auto& th : pool) th.join();
  }
  for (int code : codes)
    if (code != kExitOk) return code;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-mode non-linear system: simulation and verification"};
  app.require_subcommand(1);

  RunOpts classical_opts, spectrum_opts, evolve_opts, transition_opts,
      measure_opts;
  std::string suite = "all", fault;

  add_run_options(app.add_subcommand("classical",
                                     "integrate the classical three-wave system"),
                  classical_opts);
  add_run_options(app.add_subcommand("spectrum", "block spectra"), spectrum_opts);
  add_run_options(app.add_subcommand("evolve-q", "quantum block evolution"),
                  evolve_opts);
  add_run_options(
      app.add_subcommand("transition", "up/down-conversion probability"),
      transition_opts);
  add_run_options(app.add_subcommand("measure", "reproducing-measure checks"),
                  measure_opts);
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite, "all|classical|quantum|coherent")
      ->check(CLI::IsMember({"all", "classical", "quantum", "coherent"}));
  verify->add_option("--inject-fault", fault,
                     "test mode: corrupt an internal quantity by name");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("classical"))
      return run_many(classical_opts, cmd_classical);
    if (app.got_subcommand("spectrum"))
      return run_many(spectrum_opts, cmd_spectrum);
    if (app.got_subcommand("evolve-q"))
      return run_many(evolve_opts, cmd_evolve_q);
    if (app.got_subcommand("transition"))
      return run_many(transition_opts, cmd_transition);
    if (app.got_subcommand("measure"))
      return run_many(measure_opts, cmd_measure);
    if (app.got_subcommand("verify")) return cmd_verify(suite, fault);
  } catch (const degenerate_motion_error& e) {
    std::fprintf(stderr, "degenerate dynamics: %s\n", e.what());
    return kExitDegenerate;
  } catch (const capability_error& e) {
    std::fprintf(stderr, "capability error: %s\n", e.what());
    return kExitCapability;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
