#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mcq/dynamics.hpp"

namespace mcq {

/// Crystal-cell parameters, SI units. Defaults marked < 0 are resolved per
/// query: cell volume l_c^3, sound speed omega_fi * l_c.
struct LatticeParams {
  double cell_mass = 1.66e-25;    // kg
  double lattice_const = 3e-10;   // m
  double cell_volume = -1;        // m^3
  double sound_speed = -1;        // m/s

  void validate() const {
    if (cell_mass <= 0 || lattice_const <= 0)
      throw std::invalid_argument("LatticeParams: mass and lattice constant must be > 0");
  }
};

struct DecoherenceQuery {
  ClusterParams cluster;
  LatticeParams lattice;
  double temperature = 2.0;  // K
  double omega_fi = -1;      // rad/ps; < 0 means the 2KS/hbar gap default

  double gap_frequency() const {
    return omega_fi > 0 ? omega_fi
                        : 2.0 * cluster.k_aniso * cluster.s.s() / hbar;
  }
  void validate() const {
    cluster.validate();
    lattice.validate();
    if (temperature <= 0) throw std::invalid_argument("DecoherenceQuery: T must be > 0");
  }
};

/// Which spin matrix element enters the rate: the exact |S> -> |S-1> ladder
/// element (|Xi|^2 = hbar^2 w^2 * 2S/4) or the S^2 proportionality
/// (|Xi|^2 = hbar^2 S^2 w^2).
enum class XiMode { Exact, Paper };

inline XiMode xi_mode_from_string(const std::string& s) {
  if (s == "exact") return XiMode::Exact;
  if (s == "paper") return XiMode::Paper;
  throw std::invalid_argument("xi mode must be `exact` or `paper`");
}

/// Bose-Einstein occupation at energy hbar*omega.
inline double phonon_occupation(double omega, double temperature) {
  if (omega <= 0 || temperature <= 0)
    throw std::invalid_argument("phonon_occupation: omega and T must be > 0");
  return 1.0 / std::expm1(hbar * omega / (k_boltzmann * temperature));
}

/// |Xi|^2 in meV^2 for the transition out of the qubit subspace.
inline double spin_matrix_element_sq(const DecoherenceQuery& q, XiMode mode) {
  q.validate();
  const double s = q.cluster.s.s();
  const double hw = hbar * q.gap_frequency();  // meV
  switch (mode) {
    case XiMode::Exact: return hw * hw * (2.0 * s) / 4.0;
    case XiMode::Paper: return hw * hw * s * s;
  }
  return 0;
}

/// Golden-rule transition rate Gamma = (V / 12 pi hbar) |Xi|^2 w^3 n / (M v_t^5),
/// evaluated in SI and reported in 1/ps.
inline double transition_rate_per_ps(const DecoherenceQuery& q, XiMode mode) {
  q.validate();
  const double w_si = q.gap_frequency() * 1e12;  // rad/s
  const double lc = q.lattice.lattice_const;
  const double volume =
      q.lattice.cell_volume > 0 ? q.lattice.cell_volume : lc * lc * lc;
  const double vt =
      q.lattice.sound_speed > 0 ? q.lattice.sound_speed : w_si * lc;
  const double xi2_si = spin_matrix_element_sq(q, mode) * mev_to_joule * mev_to_joule;
  const double n = phonon_occupation(q.gap_frequency(), q.temperature);
  const double gamma_si = volume / (12.0 * pi * hbar_si) * xi2_si *
                          w_si * w_si * w_si * n /
                          (q.lattice.cell_mass * std::pow(vt, 5));
  return gamma_si * 1e-12;
}

inline double transition_rate_per_s(const DecoherenceQuery& q, XiMode mode) {
  return transition_rate_per_ps(q, mode) * 1e12;
}

/// tau = 1/Gamma in seconds; +infinity when the rate vanishes.
inline double decoherence_time_s(const DecoherenceQuery& q, XiMode mode) {
  const double gamma = transition_rate_per_s(q, mode);
  if (gamma == 0) return std::numeric_limits<double>::infinity();
  return 1.0 / gamma;
}

/// Operations budget tau / tau_g, dimensionless.
inline double ops_budget(const DecoherenceQuery& q, XiMode mode) {
  const double tau_g_s = gate_time(q.cluster) * 1e-12;
  return decoherence_time_s(q, mode) / tau_g_s;
}

/// Rectangular numeric result set emitted as CSV.
struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Decoherence-time sweep over (S, T) with the gap tied to 2KS and lattice
/// defaults re-resolved per S. Uses paper-mode Xi.
inline SweepTable lifetime_sweep(const DecoherenceQuery& base,
                             const std::vector<double>& s_list,
                             const std::vector<double>& t_grid) {
  base.validate();
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("lifetime_sweep: t_grid must be ascending");
  for (double t : t_grid)
    if (t <= 0) throw std::invalid_argument("lifetime_sweep: temperatures must be > 0");

  SweepTable table;
  table.header = {"S", "T_K", "tau_s", "log10_tau", "ops_budget"};
  for (double s : s_list) {
    DecoherenceQuery q = base;
    q.cluster.s = SpinValue::from_s(s);
    q.omega_fi = -1;          // gap follows 2KS
    q.lattice.sound_speed = base.lattice.sound_speed;  // default re-resolves per S
    for (double t : t_grid) {
      q.temperature = t;
      const double tau = decoherence_time_s(q, XiMode::Paper);
      table.rows.push_back({s, t, tau, std::log10(tau), ops_budget(q, XiMode::Paper)});
    }
  }
  return table;
}

}  // namespace mcq
