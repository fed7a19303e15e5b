#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mcq/dynamics.hpp"

namespace mcq {

/// LUMO-charging model parameters. The swept variable everywhere is
/// script-V = eps - e*V_device; conversion to device voltage is left to the
/// caller. u_ee is stored only, no n = 2 state enters any energy.
struct ReadoutParams {
  ClusterParams cluster;
  double eps_lumo = 0;  // meV
  double j_lumo = 0.01; // meV, exchange J
  double u_ee = 0;      // meV, stored only
  double g_e = -1;      // meV/T, electron Zeeman coefficient; < 0 means cluster.g

  double electron_g() const { return g_e < 0 ? cluster.g : g_e; }
  void validate() const {
    cluster.validate();
    if (j_lumo < 0) throw std::invalid_argument("ReadoutParams: j_lumo must be >= 0");
  }
};

/// |n, s_z>_e (x) |m_s>_MC composite state.
struct ReadoutState {
  int n_electrons = 0;
  double electron_sz = 0;  // meaningful only when n_electrons = 1
  double m_s = 0;
};

/// Energy of one of the three states entering the crossing argument:
/// (n=0, m=S), (n=0, m=S-1), (n=1, sz=+1/2, m=S). All other states have
/// larger energies and are excluded.
inline double composite_energy(const ReadoutParams& rp, const ReadoutState& st,
                               double script_v) {
  rp.validate();
  const double s = rp.cluster.s.s();
  const bool ok =
      (st.n_electrons == 0 && (st.m_s == s || st.m_s == s - 1)) ||
      (st.n_electrons == 1 && st.electron_sz == 0.5 && st.m_s == s);
  if (!ok) throw std::invalid_argument("composite_energy: unsupported state");
  double e = level_energy(rp.cluster, st.m_s);
  if (st.n_electrons == 1) {
    e += script_v - rp.cluster.zeeman_sign * rp.electron_g() * rp.cluster.b0 * st.electron_sz;
    e += -0.5 * rp.j_lumo * (2.0 * st.electron_sz) * st.m_s;
  }
  return e;
}

struct CrossingVoltages {
  double v0 = 0;  // ground-state crossing, script-V in meV
  double v1 = 0;  // excited-state crossing
  double v1_literature_discrepancy = 0;  // v1 minus the printed 2K(S-1) form
};

/// Level-crossing voltages solved analytically from composite_energy:
/// v0: E0 = E0^1, v1: E1 = E0^1.
inline CrossingVoltages crossing_voltages(const ReadoutParams& rp) {
  rp.validate();
  const ClusterParams& c = rp.cluster;
  const double s = c.s.s();
  const double gb0 = c.zeeman_sign * c.g * c.b0;
  const double geb0 = c.zeeman_sign * rp.electron_g() * c.b0;
  CrossingVoltages out;
  out.v0 = 0.5 * geb0 + 0.5 * rp.j_lumo * s;
  out.v1 = c.k_aniso * (2.0 * s - 1.0) + gb0 + 0.5 * geb0 + 0.5 * rp.j_lumo * s;
  const double printed =
      2.0 * c.k_aniso * (s - 1.0) + 1.5 * gb0 + 0.5 * rp.j_lumo * s;
  out.v1_literature_discrepancy = out.v1 - printed;
  return out;
}

/// Same crossings found by bisection on the energy difference, using only
/// composite_energy. Confirms the analytic route.
inline CrossingVoltages crossing_voltages_bisect(const ReadoutParams& rp,
                                                 double tol = 1e-14) {
  rp.validate();
  const double s = rp.cluster.s.s();
  const ReadoutState ground{0, 0, s};
  const ReadoutState excited{0, 0, s - 1};
  const ReadoutState charged{1, 0.5, s};
  const auto solve = [&](const ReadoutState& n0) {
    // E(charged) - E(n0) is affine in script-V with slope 1: decreasing V
    // lowers the charged level through the occupied one.
    double lo = -1e4, hi = 1e4;
    const auto diff = [&](double v) {
      return composite_energy(rp, charged, v) - composite_energy(rp, n0, v);
    };
    if (diff(lo) >= 0 || diff(hi) <= 0)
      throw std::runtime_error("crossing_voltages_bisect: bracket failed");
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  CrossingVoltages out = crossing_voltages(rp);
  out.v0 = solve(ground);
  out.v1 = solve(excited);
  return out;
}

struct PeakEvent {
  double voltage = 0;   // exact crossing script-V, not the grid point
  std::string label;
};

struct ReadoutTrace {
  std::vector<PeakEvent> peaks;
  bool transition_observed = false;
};

/// dI/dV peak schedule for a descending script-V sweep: one peak where the
/// occupied n = 0 level crosses E_0^1 (at v1 if the qubit collapsed to |1>,
/// at v0 if it collapsed to |0>).
inline ReadoutTrace readout_trace(const ReadoutParams& rp, int collapsed_state,
                                  const std::vector<double>& v_sweep) {
  rp.validate();
  if (collapsed_state != 0 && collapsed_state != 1)
    throw std::invalid_argument("readout_trace: collapsed_state must be 0 or 1");
  const CrossingVoltages cv = crossing_voltages(rp);
  if (v_sweep.size() < 2) throw std::invalid_argument("readout_trace: sweep too short");
  for (std::size_t i = 1; i < v_sweep.size(); ++i)
    if (v_sweep[i] >= v_sweep[i - 1])
      throw std::invalid_argument("readout_trace: sweep must be strictly descending");
  if (v_sweep.front() <= cv.v1)
    throw std::invalid_argument("readout_trace: sweep must start above v1");

  const double crossing = (collapsed_state == 1) ? cv.v1 : cv.v0;
  ReadoutTrace out;
  for (double v : v_sweep) {
    if (v <= crossing) {
      out.transition_observed = true;
      out.peaks.push_back({crossing, collapsed_state == 1 ? "v1" : "v0"});
      break;
    }
  }
  return out;  // empty peak list marks "no transition observed"
}

/// Boltzmann weights over the lowest n_levels of the energy table.
inline std::vector<double> thermal_populations(const ClusterParams& p,
                                               double temperature, int n_levels) {
  if (temperature <= 0) throw std::invalid_argument("thermal_populations: T must be > 0");
  const auto levels = energy_table(p, n_levels);
  std::vector<double> w(levels.size());
  const double e0 = levels.front().energy;
  double total = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    w[i] = std::exp(-(levels[i].energy - e0) / (k_boltzmann * temperature));
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace mcq
