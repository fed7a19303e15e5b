#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mcq/constants.hpp"

namespace mcq {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Spin quantum number stored as 2S so half-integer spins stay exact.
struct SpinValue {
  int twice_s = 1;

  static SpinValue from_s(double s) {
    const double ts = 2.0 * s;
    const int rounded = static_cast<int>(std::lround(ts));
    if (std::abs(ts - rounded) > 1e-9 || rounded < 1)
      throw std::invalid_argument("spin must be a positive half-integer");
    return SpinValue{rounded};
  }

  double s() const { return twice_s / 2.0; }
  int dim() const { return twice_s + 1; }
  /// Projection quantum number of basis row i, ordered m = S, S-1, ..., -S.
  double m(int i) const { return s() - i; }
};

struct SpinOperators {
  Operator sx, sy, sz;
};

/// Spin matrices in the S_z eigenbasis ordered m = S down to -S, so the
/// qubit subspace is always rows/columns 0 and 1.
inline SpinOperators spin_operators(SpinValue sv) {
  const int d = sv.dim();
  const double s = sv.s();
  Operator sz = Operator::Zero(d, d);
  Operator sp = Operator::Zero(d, d);  // ladder S+
  for (int i = 0; i < d; ++i) sz(i, i) = sv.m(i);
  for (int i = 1; i < d; ++i) {
    const double m = sv.m(i);
    sp(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const Operator sm = sp.adjoint();
  SpinOperators out;
  out.sx = 0.5 * (sp + sm);
  out.sy = Complex(0, -0.5) * (sp - sm);
  out.sz = sz;
  return out;
}

inline bool is_hermitian(const Operator& a, double tol = 1e-10) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Operator& a, double tol = 1e-10) {
  const Operator gram = a.adjoint() * a;
  return (gram - Operator::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Matrix exponential. Skew-Hermitian input gives a unitary result.
inline Operator expm(const Operator& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  return a.exp();
}

/// Restriction of an operator to the span of |m=S> and |m=S-1>.
inline Operator project_two_level(const Operator& op, SpinValue sv) {
  if (op.rows() != sv.dim() || op.cols() != sv.dim())
    throw std::invalid_argument("project_two_level: operator dimension does not match spin");
  return op.topLeftCorner(2, 2);
}

/// |Tr(U^dag V)| / d without unitarity checks.
inline double overlap(const Operator& u, const Operator& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("overlap: dimension mismatch");
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

/// Global-phase-insensitive fidelity between unitaries.
inline double fidelity(const Operator& u, const Operator& v, double unitary_tol = 1e-8) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  if (!is_unitary(u, unitary_tol) || !is_unitary(v, unitary_tol))
    throw std::invalid_argument("fidelity: inputs must be unitary");
  return overlap(u, v);
}

}  // namespace mcq
