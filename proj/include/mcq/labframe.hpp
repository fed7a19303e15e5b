#pragma once

#include <algorithm>
#include <vector>

#include "mcq/dynamics.hpp"

namespace mcq {

/// Raised when the fixed-step integrator leaves the requested quality band.
struct IntegrationError : std::runtime_error {
  double drift;
  IntegrationError(const std::string& what, double d)
      : std::runtime_error(what), drift(d) {}
};

struct TrajectorySample {
  double t;
  double p0, p1;    // populations of |0>, |1> starting from |0>
  double leak;      // population outside the qubit subspace
};

struct LabFrameResult {
  Operator propagator;      // full (2S+1)-dimensional, t = 0 .. duration
  double leakage = 0;       // worst case over qubit-subspace initial states
  double unitarity_drift = 0;  // ||U^dag U - I||_max
  std::vector<TrajectorySample> samples;  // filled when sample_stride > 0
};

namespace detail {

// dU/dt = -(i/hbar) (D + H_drive(t)) U with diagonal D and a tridiagonal
// transverse drive whose super-diagonal coupling is `cpl * sx_upper`.
inline void schrodinger_rhs(const Eigen::VectorXd& diag,
                            const Eigen::VectorXd& sx_upper,  // Sx(i, i+1) = Sx(i+1, i)
                            Complex cpl,  // meV, complex drive coefficient
                            const Operator& u, Operator& du) {
  const int d = static_cast<int>(u.rows());
  const Complex minus_i_over_hbar(0, -1.0 / hbar);
  const Complex cpl_conj = std::conj(cpl);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      Complex acc = diag(r) * u(r, c);
      if (r > 0) acc += cpl_conj * sx_upper(r - 1) * u(r - 1, c);
      if (r + 1 < d) acc += cpl * sx_upper(r) * u(r + 1, c);
      du(r, c) = minus_i_over_hbar * acc;
    }
  }
}

}  // namespace detail

/// Time-ordered lab-frame propagator for a circularly polarized transverse
/// drive of amplitude B1 rotating at w_mf:
///   H(t) = -K Sz^2 - sign*g*B0*Sz
///          + hbar*w1*[cos(w_mf t - phi) Sx + sin(w_mf t - phi) Sy]
/// in the full (2S+1)-dimensional space, integrated with fixed-step RK4.
/// The zero of energy is shifted to mid-spectrum; a constant shift only
/// changes the global phase and keeps the step-stability margin symmetric.
inline LabFrameResult simulate_lab_frame(const ClusterParams& p, double duration,
                                         double phase, double dt = 0.0,
                                         double drift_limit = 1e-6,
                                         int sample_stride = 0) {
  p.validate();
  if (p.b1 > 0) check_drive_regime(p);
  if (duration <= 0) throw std::invalid_argument("simulate_lab_frame: duration must be > 0");
  const double w0 = larmor_frequency(p);
  const double period = 2.0 * pi / w0;
  const double w_mf = (p.omega_mf > 0) ? p.omega_mf : resonant_drive_frequency(p);
  const double w1 = rabi_frequency(p);

  const int d = p.s.dim();
  Eigen::VectorXd diag(d);
  for (int i = 0; i < d; ++i) diag(i) = level_energy(p, p.s.m(i));
  const double shift = 0.5 * (diag.maxCoeff() + diag.minCoeff());
  diag.array() -= shift;

  if (dt <= 0) {
    // The RK4 amplification on an eigenphase theta = (E/hbar) dt loses
    // norm at theta^6/72 per step; size dt so the accumulated loss stays
    // a factor of ~30 under the drift limit.
    const double w_max = diag.cwiseAbs().maxCoeff() / hbar;
    const double budget = drift_limit / 30.0;
    const double dt_drift =
        std::pow(budget * 72.0 / (duration * std::pow(w_max, 6)), 0.2);
    dt = std::min(period / 100.0, dt_drift);
  }
  if (dt > period / 50.0)
    throw std::invalid_argument("simulate_lab_frame: dt must be <= (2 pi / w0)/50");

  Eigen::VectorXd sx_upper(d - 1);
  {
    const Operator sx = spin_operators(p.s).sx;
    for (int i = 0; i + 1 < d; ++i) sx_upper(i) = sx(i, i + 1).real();
  }

  // Rotating transverse field: the super-diagonal coupling of
  // cos(theta) Sx + sin(theta) Sy is e^{-i theta} times the Sx element.
  const auto drive_at = [&](double t) {
    const double theta = w_mf * t - phase;
    return hbar * w1 * std::exp(Complex(0, theta));
  };

  const long n_steps = std::max<long>(1, static_cast<long>(std::ceil(duration / dt)));
  const double h = duration / static_cast<double>(n_steps);

  Operator u = Operator::Identity(d, d);
  Operator k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  LabFrameResult out;

  const auto record = [&](double t) {
    TrajectorySample s;
    s.t = t;
    s.p0 = std::norm(u(0, 0));
    s.p1 = std::norm(u(1, 0));
    s.leak = 0;
    for (int r = 2; r < d; ++r) s.leak += std::norm(u(r, 0));
    out.samples.push_back(s);
  };
  if (sample_stride > 0) record(0.0);

  for (long step = 0; step < n_steps; ++step) {
    const double t = step * h;
    detail::schrodinger_rhs(diag, sx_upper, drive_at(t), u, k1);
    tmp = u + (0.5 * h) * k1;
    detail::schrodinger_rhs(diag, sx_upper, drive_at(t + 0.5 * h), tmp, k2);
    tmp = u + (0.5 * h) * k2;
    detail::schrodinger_rhs(diag, sx_upper, drive_at(t + 0.5 * h), tmp, k3);
    tmp = u + h * k3;
    detail::schrodinger_rhs(diag, sx_upper, drive_at(t + h), tmp, k4);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (sample_stride > 0 && ((step + 1) % sample_stride == 0 || step + 1 == n_steps))
      record((step + 1) * h);
  }

  out.propagator = u;
  out.unitarity_drift =
      (u.adjoint() * u - Operator::Identity(d, d)).cwiseAbs().maxCoeff();

  // Worst-case final population outside {|S>, |S-1>} over initial states in
  // the qubit subspace: largest eigenvalue of B^dag B with B = Q U P.
  const Operator b = u.bottomLeftCorner(d - 2, 2);
  Eigen::SelfAdjointEigenSolver<Operator> es(b.adjoint() * b);
  out.leakage = es.eigenvalues().maxCoeff();

  if (out.unitarity_drift > drift_limit)
    throw IntegrationError("simulate_lab_frame: unitarity drift exceeds limit, reduce dt",
                           out.unitarity_drift);
  return out;
}

}  // namespace mcq
