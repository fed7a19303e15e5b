#pragma once

#include <string>
#include <vector>

#include "mcq/spin.hpp"

namespace mcq {

/// Physical constants of one magnetic-cluster qubit. g is the Zeeman
/// coefficient in meV/T, so Zeeman energies are g*B*m.
struct ClusterParams {
  SpinValue s{20};
  double k_aniso = 0.1;   // meV
  double g = 0.06;        // meV / T
  double b0 = 1.0;        // tesla
  double b1 = 0.05;       // tesla
  double omega_mf = 0.0;  // rad/ps; 0 means resonant with the Larmor frequency
  int zeeman_sign = +1;   // +1 deepens the m = +S well

  void validate() const {
    if (s.twice_s < 1) throw std::invalid_argument("ClusterParams: twice_s must be >= 1");
    if (k_aniso <= 0) throw std::invalid_argument("ClusterParams: k_aniso must be > 0");
    if (zeeman_sign != 1 && zeeman_sign != -1)
      throw std::invalid_argument("ClusterParams: zeeman_sign must be +1 or -1");
    if (b1 < 0) throw std::invalid_argument("ClusterParams: b1 must be >= 0");
  }
};

struct EnergyLevel {
  std::string label;
  double m_s = 0;
  int n_electrons = 0;
  double energy = 0;          // meV
  double excitation_gap = 0;  // E(m-1) - E(m), meV
};

/// Single energy function all level diagrams derive from: E(m) = -K m^2 - sign*g*B0*m.
inline double level_energy(const ClusterParams& p, double m) {
  return -p.k_aniso * m * m - p.zeeman_sign * p.g * p.b0 * m;
}

inline Operator static_hamiltonian(const ClusterParams& p) {
  p.validate();
  const int d = p.s.dim();
  Operator h = Operator::Zero(d, d);
  for (int i = 0; i < d; ++i) h(i, i) = level_energy(p, p.s.m(i));
  return h;
}

inline std::vector<EnergyLevel> energy_table(const ClusterParams& p, int n_levels) {
  p.validate();
  if (n_levels < 1 || n_levels > p.s.dim())
    throw std::invalid_argument("energy_table: n_levels out of range");
  std::vector<EnergyLevel> levels;
  for (int i = 0; i < n_levels; ++i) {
    const double m = p.s.m(i);
    EnergyLevel lv;
    lv.label = "|" + std::to_string(i) + ">";
    lv.m_s = m;
    lv.n_electrons = 0;
    lv.energy = level_energy(p, m);
    lv.excitation_gap = level_energy(p, m - 1) - level_energy(p, m);
    levels.push_back(lv);
  }
  return levels;
}

/// omega_0 = (E1 - E0) / hbar, always taken from the energy function.
inline double larmor_frequency(const ClusterParams& p) {
  p.validate();
  return (level_energy(p, p.s.s() - 1) - level_energy(p, p.s.s())) / hbar;
}

inline double rabi_frequency(const ClusterParams& p) { return p.g * p.b1 / hbar; }

/// Resonant drive frequency for the |0> <-> |1> transition under a rotating
/// transverse field of amplitude B1: the Larmor frequency plus the
/// second-order shift of |1> from off-resonantly driving |1> -> |2>,
/// Omega_12^2 / (w0 - w12) with Omega_12 = w1 * sqrt(4S - 2)/2 and
/// w0 - w12 = 2K/hbar. Reduces to the bare Larmor frequency for S = 1/2 or
/// an undriven system.
inline double resonant_drive_frequency(const ClusterParams& p) {
  const double w0 = larmor_frequency(p);
  if (p.s.twice_s < 2 || p.b1 <= 0) return w0;
  const double s = p.s.s();
  const double omega12 = rabi_frequency(p) * 0.5 * std::sqrt(4.0 * s - 2.0);
  return w0 + omega12 * omega12 * hbar / (2.0 * p.k_aniso);
}

inline void check_drive_regime(const ClusterParams& p) {
  const double gap = level_energy(p, p.s.s() - 1) - level_energy(p, p.s.s());
  if (p.b1 * p.g >= 0.1 * gap)
    throw std::invalid_argument("drive too strong: g*B1 must be < 0.1*(E1-E0)");
}

/// Resonant two-level control Hamiltonian hbar*omega_1*(cos(phi) Sx + sin(phi) Sy)
/// restricted to the qubit subspace.
inline Operator rwa_hamiltonian(const ClusterParams& p, double phase) {
  p.validate();
  check_drive_regime(p);
  const SpinOperators ops = spin_operators(p.s);
  const double w1 = rabi_frequency(p);
  const Operator h = hbar * w1 *
      (std::cos(phase) * ops.sx + std::sin(phase) * ops.sy);
  return project_two_level(h, p.s);
}

inline Operator gate_x(SpinValue s, double alpha) {
  const Operator sx = project_two_level(spin_operators(s).sx, s);
  return expm(Complex(0, -alpha) * sx);
}

inline Operator gate_y(SpinValue s, double alpha) {
  const Operator sy = project_two_level(spin_operators(s).sy, s);
  return expm(Complex(0, -alpha) * sy);
}

/// Z(alpha) = X(pi/(2 sqrt(2S))) Y(alpha/sqrt(2S)) X^dag(pi/(2 sqrt(2S))).
/// Diagonal in the qubit basis with relative phase of magnitude alpha.
inline Operator gate_z(SpinValue s, double alpha) {
  const double root = std::sqrt(2.0 * s.s());
  const Operator x = gate_x(s, 0.5 * pi / root);
  return x * gate_y(s, alpha / root) * x.adjoint();
}

/// Duration of a rotation by alpha: sqrt(1/2S) * alpha / omega_1. The gate
/// time tau_g is the alpha = pi case.
inline double gate_time(const ClusterParams& p, double alpha = pi) {
  p.validate();
  if (p.b1 <= 0) throw std::invalid_argument("gate_time: b1 must be > 0");
  return std::sqrt(1.0 / (2.0 * p.s.s())) * alpha / rabi_frequency(p);
}

}  // namespace mcq
