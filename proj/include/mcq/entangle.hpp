#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "mcq/dynamics.hpp"
#include "mcq/pulse.hpp"

namespace mcq {

/// Nearest-neighbor coupling chain. couplings[i] is J between qubits i, i+1.
struct ChainSpec {
  std::vector<ClusterParams> qubits;
  std::vector<double> couplings;  // meV, length n-1

  int size() const { return static_cast<int>(qubits.size()); }

  void validate() const {
    if (qubits.empty()) throw std::invalid_argument("ChainSpec: empty chain");
    for (const auto& q : qubits) q.validate();
    if (couplings.size() + 1 != qubits.size())
      throw std::invalid_argument("ChainSpec: couplings length must be n-1");
    for (double j : couplings)
      if (j <= 0) throw std::invalid_argument("ChainSpec: couplings must be > 0");
  }
};

/// RWA-condition warnings: hbar|w0_i - w0_j| / J should stay >= 20 for each
/// coupled pair. There is no canonical threshold; 20 is the one used here.
inline std::vector<std::string> chain_warnings(const ChainSpec& chain) {
  chain.validate();
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < chain.qubits.size(); ++i) {
    const double dw = std::abs(larmor_frequency(chain.qubits[i]) -
                               larmor_frequency(chain.qubits[i + 1]));
    const double ratio = hbar * dw / chain.couplings[i];
    if (ratio < 20.0)
      out.push_back("pair (" + std::to_string(i) + "," + std::to_string(i + 1) +
                    "): hbar|w0_i - w0_j|/J = " + std::to_string(ratio) +
                    " below the 20x rotating-frame margin");
  }
  return out;
}

/// Free evolution under -J Sz1 Sz2 for time t, restricted to the qubit
/// subspace {|00>, |01>, |10>, |11>}. Diagonal with phases e^{i t J m1 m2 / hbar}.
inline Operator interaction_unitary(SpinValue s1, SpinValue s2, double j, double t) {
  if (j <= 0) throw std::invalid_argument("interaction_unitary: j must be > 0");
  if (t < 0) throw std::invalid_argument("interaction_unitary: t must be >= 0");
  Operator u = Operator::Zero(4, 4);
  int idx = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double m1 = s1.s() - a;
      const double m2 = s2.s() - b;
      u(idx, idx) = std::exp(Complex(0, t * j * m1 * m2 / hbar));
      ++idx;
    }
  }
  return u;
}

/// Phase left on each qubit by the pi*hbar/J wait relative to the ideal ZZ
/// core: zeta = pi (S - 1/2) mod 2pi. Zero exactly when S = 1/2, 5/2, 9/2, ...
/// where the bare five-operation sequence is already a C-NOT.
inline double cnot_phase_correction(SpinValue s) {
  const double zeta = std::fmod(pi * (s.s() - 0.5), 2.0 * pi);
  // snap exact multiples of 2pi to zero (S - 1/2 is a multiple of 2)
  if ((s.twice_s - 1) % 4 == 0) return 0.0;
  return zeta < 0 ? zeta + 2.0 * pi : zeta;
}

/// C-NOT pulse sequence for an adjacent pair sharing spin S, control flips
/// target. Time order:
///   Z_c(pi/2 + zeta), Z_t(pi/2), X_t(kappa pi/2), ZZ wait pi*hbar/J,
///   [Z_t(zeta)], Y_t(kappa pi/2)
/// with kappa = sqrt(1/2S). The Z_t(zeta) correction and the extra zeta on
/// the control cancel the residual per-qubit wait phase; both vanish for
/// S = 1/2, 5/2, ... where the sequence reduces to the bare five operations.
inline PulseProgram compile_cnot(SpinValue s, double j, int control = 0, int target = 1) {
  if (j <= 0) throw std::invalid_argument("compile_cnot: j must be > 0");
  if (std::abs(control - target) != 1)
    throw std::invalid_argument("compile_cnot: control and target must be adjacent");
  const double kappa = std::sqrt(1.0 / (2.0 * s.s()));
  const double zeta = cnot_phase_correction(s);
  const int pair = std::min(control, target);
  PulseProgram prog;
  prog.instructions.push_back({PulseKind::RZ, control, 0.5 * pi + zeta, 0});
  prog.instructions.push_back({PulseKind::RZ, target, 0.5 * pi, 0});
  prog.instructions.push_back({PulseKind::RX, target, 0.5 * kappa * pi, 0});
  prog.instructions.push_back({PulseKind::ZZ_WAIT, pair, pi * hbar / j, 0});
  if (zeta != 0.0)
    prog.instructions.push_back({PulseKind::RZ, target, zeta, 0});
  prog.instructions.push_back({PulseKind::RY, target, 0.5 * kappa * pi, 0.5 * pi});
  return prog;
}

/// Lower RZ instructions to the X/Y composite, leaving only RX/RY/ZZ_WAIT.
inline PulseProgram expand_z(const PulseProgram& prog, SpinValue s) {
  const double root = std::sqrt(2.0 * s.s());
  PulseProgram out;
  for (const auto& ins : prog.instructions) {
    if (ins.kind != PulseKind::RZ) {
      out.instructions.push_back(ins);
      continue;
    }
    // time order is the reverse of the matrix product X Y X^dag
    out.instructions.push_back({PulseKind::RX, ins.target, -0.5 * pi / root, 0});
    out.instructions.push_back({PulseKind::RY, ins.target, ins.value / root, 0.5 * pi});
    out.instructions.push_back({PulseKind::RX, ins.target, 0.5 * pi / root, 0});
  }
  return out;
}

namespace detail {

inline Operator embed_single(const Operator& g, int qubit, int n) {
  const int dim = 1 << n;
  Operator u = Operator::Zero(dim, dim);
  const int stride = 1 << (n - 1 - qubit);  // qubit 0 is the most significant
  for (int row = 0; row < dim; ++row) {
    const int bit = (row / stride) & 1;
    const int base = row - bit * stride;
    for (int b2 = 0; b2 < 2; ++b2) u(row, base + b2 * stride) = g(bit, b2);
  }
  return u;
}

}  // namespace detail

/// Ordered product of gate matrices in the n-qubit subspace model, basis
/// |q0 q1 ... q_{n-1}> with qubit 0 as the most significant factor.
inline Operator compose(const PulseProgram& prog, const ChainSpec& chain) {
  chain.validate();
  const int n = chain.size();
  if (n > 10) throw std::invalid_argument("compose: chain longer than 10 qubits");
  const int dim = 1 << n;
  Operator u = Operator::Identity(dim, dim);
  for (const auto& ins : prog.instructions) {
    if (ins.kind == PulseKind::ZZ_WAIT) {
      if (ins.target < 0 || ins.target + 1 >= n)
        throw std::invalid_argument("compose: ZZ_WAIT pair out of range");
      const Operator pair =
          interaction_unitary(chain.qubits[ins.target].s,
                              chain.qubits[ins.target + 1].s,
                              chain.couplings[ins.target], ins.value);
      const int s1 = 1 << (n - 1 - ins.target);
      const int s2 = 1 << (n - 2 - ins.target);
      for (int row = 0; row < dim; ++row) {
        const int a = (row / s1) & 1;
        const int b = (row / s2) & 1;
        u.row(row) *= pair(2 * a + b, 2 * a + b);
      }
      continue;
    }
    if (ins.target < 0 || ins.target >= n)
      throw std::invalid_argument("compose: target out of range");
    const SpinValue s = chain.qubits[ins.target].s;
    Operator g;
    switch (ins.kind) {
      case PulseKind::RX: g = gate_x(s, ins.value); break;
      case PulseKind::RY: g = gate_y(s, ins.value); break;
      case PulseKind::RZ: g = gate_z(s, ins.value); break;
      default: g = Operator::Identity(2, 2); break;
    }
    u = detail::embed_single(g, ins.target, n) * u;
  }
  return u;
}

/// Ideal n-qubit C-NOT matrix, for verification.
inline Operator ideal_cnot(int n, int control, int target) {
  const int dim = 1 << n;
  Operator u = Operator::Zero(dim, dim);
  const int cbit = 1 << (n - 1 - control);
  const int tbit = 1 << (n - 1 - target);
  for (int row = 0; row < dim; ++row)
    u((row & cbit) ? (row ^ tbit) : row, row) = 1.0;
  return u;
}

/// Long-range C-NOT routed through adjacent pairs:
/// C_{t,c} = C_{t,m} C_{m,c} C_{t,m} C_{m,c} with m the neighbor of t,
/// recursively expanded along the chain.
inline PulseProgram route_cnot(const ChainSpec& chain, int control, int target) {
  chain.validate();
  const int n = chain.size();
  if (control == target || control < 0 || target < 0 || control >= n || target >= n)
    throw std::invalid_argument("route_cnot: invalid control/target");
  for (std::size_t i = 0; i + 1 < chain.qubits.size(); ++i)
    if (chain.qubits[i].s.twice_s != chain.qubits[i + 1].s.twice_s)
      throw std::invalid_argument("route_cnot: chain qubits must share S");

  const auto append = [](PulseProgram& dst, const PulseProgram& src) {
    dst.instructions.insert(dst.instructions.end(), src.instructions.begin(),
                            src.instructions.end());
  };
  const std::function<PulseProgram(int, int)> build = [&](int c, int t) {
    if (std::abs(c - t) == 1) {
      const int pair = std::min(c, t);
      return compile_cnot(chain.qubits[pair].s, chain.couplings[pair], c, t);
    }
    const int m = (t > c) ? t - 1 : t + 1;
    const PulseProgram a = build(c, m);
    const PulseProgram b = build(m, t);
    PulseProgram out;
    append(out, a);
    append(out, b);
    append(out, a);
    append(out, b);
    return out;
  };
  return build(control, target);
}

}  // namespace mcq
