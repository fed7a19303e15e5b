// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Usage: acceptance <mcqsim-binary> <config-file>
//
// Criteria 1-9 run in-process against the library; criterion 10 runs the
// full CLI suite twice and byte-compares every output file.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mcq/config.hpp"
#include "mcq/entangle.hpp"
#include "mcq/io.hpp"
#include "mcq/labframe.hpp"
#include "mcq/readout.hpp"

namespace fs = std::filesystem;
using namespace mcq;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++g_failures;
}

// ---- criterion 1: operator algebra for all S in {1/2, ..., 25} ------------

bool check_operator_algebra(std::string& detail) {
  const Complex i(0, 1);
  for (int ts = 1; ts <= 50; ++ts) {
    const SpinValue s{ts};
    const double sv = s.s();
    const auto ops = spin_operators(s);
    const double c1 =
        (ops.sx * ops.sy - ops.sy * ops.sx - i * ops.sz).cwiseAbs().maxCoeff();
    const double c2 =
        (ops.sy * ops.sz - ops.sz * ops.sy - i * ops.sx).cwiseAbs().maxCoeff();
    const double c3 =
        (ops.sz * ops.sx - ops.sx * ops.sz - i * ops.sy).cwiseAbs().maxCoeff();
    const Operator casimir = ops.sx * ops.sx + ops.sy * ops.sy + ops.sz * ops.sz;
    const double c4 =
        (casimir - sv * (sv + 1) * Operator::Identity(s.dim(), s.dim()))
            .cwiseAbs().maxCoeff();
    const Operator lhs = project_two_level(ops.sz * ops.sz, s);
    const Operator rhs = (2 * sv - 1) * project_two_level(ops.sz, s) -
                         sv * (sv - 1) * Operator::Identity(2, 2);
    const double c5 = (lhs - rhs).cwiseAbs().maxCoeff();
    const bool exact_ok =
        ts % 2 != 0 || (lhs.array() == rhs.array()).all();  // integer S: exact
    if (c1 > 1e-10 || c2 > 1e-10 || c3 > 1e-10 || c4 > 1e-10 || c5 > 1e-10 ||
        !exact_ok) {
      detail = "algebra identity broke at 2S = " + std::to_string(ts);
      return false;
    }
  }
  detail = "commutators, Casimir, subspace identity for S = 1/2 .. 25 (tol 1e-10)";
  return true;
}

// ---- criterion 2: adjacent C-NOT for every S up to 20 ---------------------

bool check_cnot(std::string& detail) {
  const double j = 0.01;
  const Operator target = std::exp(Complex(0, -0.25 * pi)) * ideal_cnot(2, 0, 1);
  for (int ts = 1; ts <= 40; ++ts) {
    ChainSpec chain;
    ClusterParams q;
    q.s = SpinValue{ts};
    chain.qubits = {q, q};
    chain.couplings = {j};
    const Operator u = compose(compile_cnot(q.s, j), chain);
    if (fidelity(u, target) < 1.0 - 1e-9) {
      detail = "fidelity below 1 - 1e-9 at 2S = " + std::to_string(ts);
      return false;
    }
  }
  detail = "compiled C-NOT fidelity >= 1 - 1e-9 vs e^{-i pi/4} CNOT for all S <= 20";
  return true;
}

// ---- criterion 3: Z-gate composite, 50 random (S, alpha) pairs ------------

bool check_z_gate(std::string& detail) {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> spin(1, 50);
  std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
  for (int trial = 0; trial < 50; ++trial) {
    const SpinValue s{spin(rng)};
    const double alpha = angle(rng);
    const Operator z = gate_z(s, alpha);
    const double off = std::max(std::abs(z(0, 1)), std::abs(z(1, 0)));
    const double phase = std::arg(z(0, 0) / z(1, 1));
    const double want = std::abs(std::remainder(alpha, 2 * pi));
    if (off > 1e-10 || std::abs(std::abs(phase) - want) > 1e-10) {
      detail = "trial " + std::to_string(trial) + " off-diag " + format_number(off);
      return false;
    }
  }
  detail = "composite Z diagonal with relative phase ±alpha, 50 random (S, alpha)";
  return true;
}

// ---- criterion 4: routed C-NOT over distance 2 and 3 ----------------------

bool check_routing(std::string& detail) {
  ClusterParams q;  // defaults, S = 10
  ChainSpec chain3;
  chain3.qubits = {q, q, q};
  chain3.couplings = {0.01, 0.01};
  const Operator u3 = compose(route_cnot(chain3, 0, 2), chain3);
  for (int in = 0; in < 8; ++in) {
    const int out = (in & 4) ? (in ^ 1) : in;  // q2 ^= q0, q1 untouched
    for (int row = 0; row < 8; ++row) {
      const double want = (row == out) ? 1.0 : 0.0;
      if (std::abs(std::abs(u3(row, in)) - want) > 1e-9) {
        detail = "3-qubit truth table broke at basis state " + std::to_string(in);
        return false;
      }
    }
  }
  ChainSpec chain4;
  chain4.qubits = {q, q, q, q};
  chain4.couplings = {0.01, 0.01, 0.01};
  const Operator u4 = compose(route_cnot(chain4, 0, 3), chain4);
  if (fidelity(u4, ideal_cnot(4, 0, 3)) < 1.0 - 1e-8) {
    detail = "4-qubit distance-3 routing below 1 - 1e-8";
    return false;
  }
  detail = "3-qubit truth table exact; distance-3 routing within 1e-8";
  return true;
}

// ---- criterion 5: interaction phases vs direct exponentiation -------------

bool check_interaction_phases(std::string& detail) {
  const double j = 0.01;
  const double t = pi * hbar / j;
  for (int ts1 = 2; ts1 <= 20; ts1 += 2) {
    for (int ts2 = 2; ts2 <= 20; ts2 += 2) {
      const SpinValue s1{ts1}, s2{ts2};
      // independent oracle: exponentiate the full diagonal of -J Sz Sz over
      // every (m1, m2) pair, then restrict to the qubit corner
      const Operator u = interaction_unitary(s1, s2, j, t);
      int idx = 0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b, ++idx) {
          const double m1 = s1.s() - a, m2 = s2.s() - b;
          const Complex direct = std::exp(Complex(0, -(-j * m1 * m2) * t / hbar));
          if (std::abs(u(idx, idx) - direct) > 1e-10) {
            detail = "phase mismatch at 2S = " + std::to_string(ts1) + ", 2S' = " +
                     std::to_string(ts2);
            return false;
          }
        }
      }
    }
  }
  const Operator u = interaction_unitary(SpinValue{20}, SpinValue{20}, j, t);
  const bool spot = std::abs(u(0, 0) - 1.0) < 1e-10 && std::abs(u(1, 1) - 1.0) < 1e-10 &&
                    std::abs(u(2, 2) - 1.0) < 1e-10 && std::abs(u(3, 3) + 1.0) < 1e-10;
  if (!spot) {
    detail = "S = S' = 10 wait is not diag(1, 1, 1, -1)";
    return false;
  }
  detail = "wait phases match direct exponentiation, S, S' <= 10; diag(1,1,1,-1) spot";
  return true;
}

// ---- criterion 6: lab-frame pi pulse in the weak-drive regime -------------

bool check_lab_frame(std::string& detail) {
  ClusterParams p;
  p.s = SpinValue{20};
  p.k_aniso = 0.1;
  p.g = 0.06;
  p.b0 = 1.0;
  const double w0 = larmor_frequency(p);
  p.b1 = hbar * 1e-3 * w0 / p.g;  // omega_1 / omega_0 = 1e-3
  LabFrameResult res;
  try {
    res = simulate_lab_frame(p, gate_time(p), 0.0, 0.0, 1e-8);
  } catch (const IntegrationError& e) {
    detail = std::string("integrator: ") + e.what();
    return false;
  }
  const double transfer = std::norm(res.propagator(1, 0));
  const double leaked =
      1.0 - std::norm(res.propagator(0, 0)) - std::norm(res.propagator(1, 0));
  std::ostringstream msg;
  msg << "transfer " << format_number(transfer) << ", leakage "
      << format_number(leaked) << ", drift " << format_number(res.unitarity_drift);
  detail = msg.str();
  return transfer >= 0.999 && leaked < 1e-3 && res.unitarity_drift < 1e-8;
}

// ---- criterion 7: readout crossing voltages --------------------------------

bool check_readout(std::string& detail) {
  ReadoutParams rp;
  rp.cluster.s = SpinValue{20};
  rp.cluster.k_aniso = 0.1;
  rp.cluster.g = 0.06;
  rp.cluster.b0 = 1.0;
  rp.j_lumo = 0.01;
  for (int ts : {5, 20, 31}) {
    rp.cluster.s = SpinValue{ts};
    const double s = rp.cluster.s.s();
    const CrossingVoltages an = crossing_voltages(rp);
    const CrossingVoltages bi = crossing_voltages_bisect(rp);
    const double printed_v0 = 0.5 * rp.cluster.g * rp.cluster.b0 + 0.5 * rp.j_lumo * s;
    if (std::abs(an.v0 - bi.v0) > 1e-12 || std::abs(an.v1 - bi.v1) > 1e-12) {
      detail = "bisection and analytic crossings disagree at 2S = " + std::to_string(ts);
      return false;
    }
    if (an.v0 != printed_v0) {
      detail = "v0 deviates from g*B0/2 + J*S/2 at 2S = " + std::to_string(ts);
      return false;
    }
    if (std::abs(an.v1_literature_discrepancy - rp.cluster.k_aniso) > 1e-12) {
      detail = "v1 discrepancy is not exactly K at 2S = " + std::to_string(ts);
      return false;
    }
  }
  detail = "bisection = analytic within 1e-12; v0 exact; v1 discrepancy exactly K";
  return true;
}

// ---- criterion 8: thermal initialization ratios -----------------------------

bool check_initialization(std::string& detail) {
  ClusterParams p;
  p.k_aniso = 0.1;
  p.g = 0.06;
  p.b0 = 1.0;
  for (int ts : {10, 20, 30, 40}) {
    p.s = SpinValue{ts};
    for (double t : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const auto pops = thermal_populations(p, t, 2);
      const double gap = energy_table(p, 2)[0].excitation_gap;
      const double want = std::exp(-gap / (k_boltzmann * t));
      if (std::abs(pops[1] / pops[0] - want) > 1e-12 * want) {
        detail = "Boltzmann ratio broke at 2S = " + std::to_string(ts);
        return false;
      }
    }
  }
  p.s = SpinValue{20};
  const auto pops = thermal_populations(p, 4.0, 2);
  const double spot = 3.392412181922199e-3;  // exp(-1.96 meV / k_B * 4 K)
  if (std::abs(pops[1] / pops[0] - spot) > 1e-12 * spot) {
    detail = "S = 10, T = 4 K spot value off: " + format_number(pops[1] / pops[0]);
    return false;
  }
  detail = "population ratios = exp(-dE/kT) within 1e-12; spot 3.3924e-3 at S=10, T=4K";
  return true;
}

// ---- criterion 9: decoherence pipeline --------------------------------------

bool check_decoherence(std::string& detail) {
  DecoherenceQuery q;
  q.cluster.k_aniso = 0.1;
  q.cluster.g = 0.06;
  q.cluster.b0 = 1.0;
  for (int ts : {10, 20, 30}) {
    q.cluster.s = SpinValue{ts};
    for (double t : {1.0, 2.0, 5.0}) {
      q.temperature = t;
      const double s = q.cluster.s.s();
      const double n = phonon_occupation(q.gap_frequency(), q.temperature);
      const double reduced = hbar_si * s * s * n /
                             (12.0 * pi * q.lattice.cell_mass *
                              q.lattice.lattice_const * q.lattice.lattice_const);
      const double full = transition_rate_per_s(q, XiMode::Paper);
      if (std::abs(full - reduced) > 1e-12 * reduced) {
        detail = "reduced closed form deviates at 2S = " + std::to_string(ts);
        return false;
      }
    }
  }
  // temperature-ratio law
  q.cluster.s = SpinValue{20};
  const double hw = hbar * q.gap_frequency();
  for (auto [ta, tb] : std::vector<std::pair<double, double>>{{1, 2}, {2, 5}, {0.5, 8}}) {
    DecoherenceQuery qa = q, qb = q;
    qa.temperature = ta;
    qb.temperature = tb;
    const double lhs = decoherence_time_s(qa, XiMode::Paper) /
                       decoherence_time_s(qb, XiMode::Paper);
    const double rhs = std::expm1(hw / (k_boltzmann * ta)) /
                       std::expm1(hw / (k_boltzmann * tb));
    if (std::abs(lhs - rhs) > 1e-9 * rhs) {
      detail = "temperature ratio law broke";
      return false;
    }
  }
  // sweep monotone decreasing in T for every S
  const SweepTable sweep = lifetime_sweep(q, {5, 10, 15, 20}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  for (std::size_t r = 1; r < sweep.rows.size(); ++r) {
    if (sweep.rows[r][0] != sweep.rows[r - 1][0]) continue;
    if (sweep.rows[r][2] >= sweep.rows[r - 1][2]) {
      detail = "sweep not monotone decreasing in T";
      return false;
    }
  }
  detail = "reduced form within 1e-12; T-ratio law within 1e-9; sweep monotone in T";
  return true;
}

// ---- criterion 10: byte-identical CLI outputs -------------------------------

bool run_cli_suite(const std::string& binary, const std::string& config,
                   const fs::path& root, std::string& detail) {
  const std::vector<std::string> subs = {"levels", "gates", "pulse-sim", "cnot",
                                         "route", "readout", "init",
                                         "decoherence", "sweep", "audit"};
  for (const auto& sub : subs) {
    const fs::path out = root / sub;
    const std::string cmd = "\"" + binary + "\" " + sub + " --config \"" + config +
                            "\" --out \"" + out.string() + "\"";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      detail = "subcommand " + sub + " exited with " + std::to_string(rc);
      return false;
    }
  }
  return true;
}

bool check_determinism(const std::string& binary, const std::string& config,
                       std::string& detail) {
  const fs::path root = fs::temp_directory_path() / "mcq_acceptance";
  std::error_code ec;
  fs::remove_all(root, ec);
  const fs::path run_a = root / "run_a";
  const fs::path run_b = root / "run_b";
  if (!run_cli_suite(binary, config, run_a, detail)) return false;
  if (!run_cli_suite(binary, config, run_b, detail)) return false;

  // the audit must flag the gate-time numeric claim (criterion 9 tail)
  {
    std::ifstream in(run_a / "audit" / "report.txt");
    std::stringstream buf;
    buf << in.rdbuf();
    if (buf.str().find("Gate-time numeric claim") == std::string::npos) {
      detail = "audit report does not flag the gate-time numeric claim";
      return false;
    }
  }

  int compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(run_a)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), run_a);
    const fs::path twin = run_b / rel;
    std::ifstream a(entry.path(), std::ios::binary);
    std::ifstream b(twin, std::ios::binary);
    if (!b) {
      detail = "second run is missing " + rel.string();
      return false;
    }
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str() != sb.str()) {
      detail = rel.string() + " differs between runs";
      return false;
    }
    ++compared;
  }
  detail = "two full CLI runs byte-identical across " + std::to_string(compared) +
           " output files";
  return compared >= 20;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: acceptance <mcqsim-binary> <config-file>\n");
    return 2;
  }
  const std::string binary = argv[1];
  const std::string config = argv[2];

  std::string detail;
  report(1, check_operator_algebra(detail), detail);
  report(2, check_cnot(detail), detail);
  report(3, check_z_gate(detail), detail);
  report(4, check_routing(detail), detail);
  report(5, check_interaction_phases(detail), detail);
  report(6, check_lab_frame(detail), detail);
  report(7, check_readout(detail), detail);
  report(8, check_initialization(detail), detail);
  report(9, check_decoherence(detail), detail);
  report(10, check_determinism(binary, config, detail), detail);

  if (g_failures) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 10 criteria passed\n");
  return 0;
}
