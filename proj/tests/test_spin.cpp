#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mcq/spin.hpp"

using namespace mcq;

namespace {

// Independent matrix-exponential oracle: scale by a power of two, sum 60
// Taylor terms, square back up.
Operator taylor_expm(const Operator& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;
  const Operator scaled = a / std::pow(2.0, squarings);
  Operator term = Operator::Identity(a.rows(), a.cols());
  Operator sum = term;
  for (int k = 1; k <= 60; ++k) {
    term = (scaled * term) / double(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Operator random_skew_hermitian(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Operator h(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) h(r, c) = Complex(uni(rng), uni(rng));
  return 0.5 * (h - h.adjoint());
}

}  // namespace

TEST_CASE("spin-1/2 operators are the Pauli matrices over two") {
  const auto ops = spin_operators(SpinValue{1});
  Operator sx(2, 2), sz(2, 2);
  sx << 0, 0.5, 0.5, 0;
  sz << 0.5, 0, 0, -0.5;
  REQUIRE((ops.sx - sx).cwiseAbs().maxCoeff() < 1e-15);
  REQUIRE((ops.sz - sz).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("commutation relations hold up to S = 25") {
  for (int ts = 1; ts <= 50; ++ts) {
    const auto ops = spin_operators(SpinValue{ts});
    const Complex i(0, 1);
    REQUIRE((ops.sx * ops.sy - ops.sy * ops.sx - i * ops.sz).cwiseAbs().maxCoeff() < 1e-11);
    REQUIRE((ops.sy * ops.sz - ops.sz * ops.sy - i * ops.sx).cwiseAbs().maxCoeff() < 1e-11);
    REQUIRE((ops.sz * ops.sx - ops.sx * ops.sz - i * ops.sy).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("Casimir S(S+1) for S = 10") {
  const SpinValue s{20};
  const auto ops = spin_operators(s);
  const Operator casimir = ops.sx * ops.sx + ops.sy * ops.sy + ops.sz * ops.sz;
  REQUIRE((casimir - 110.0 * Operator::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("expm basics") {
  REQUIRE((expm(Operator::Zero(3, 3)) - Operator::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);

  Operator d = Operator::Zero(2, 2);
  d(0, 0) = Complex(0, -pi * 0.5);
  d(1, 1) = Complex(0, pi * 0.5);
  const Operator e = expm(d);
  REQUIRE(std::abs(e(0, 0) - Complex(0, -1)) < 1e-14);
  REQUIRE(std::abs(e(1, 1) - Complex(0, 1)) < 1e-14);

  REQUIRE_THROWS_AS(expm(Operator::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("expm matches the Taylor oracle on random skew-Hermitian input") {
  for (unsigned seed : {7u, 19u, 42u}) {
    const Operator a = random_skew_hermitian(4, seed);
    const Operator viaTaylor = taylor_expm(a);
    const Operator e = expm(a);
    REQUIRE((e - viaTaylor).cwiseAbs().maxCoeff() < 1e-11);
    REQUIRE(is_unitary(e, 1e-10));
  }
}

TEST_CASE("two-level restriction of Sz^2 satisfies the subspace identity") {
  // (2S-1) P(Sz) - S(S-1) I, entries integer for integer S: compare exactly.
  for (int ts = 2; ts <= 100; ts += 2) {
    const SpinValue s{ts};
    const double sv = s.s();
    const auto ops = spin_operators(s);
    const Operator lhs = project_two_level(ops.sz * ops.sz, s);
    const Operator rhs = (2 * sv - 1) * project_two_level(ops.sz, s) -
                         sv * (sv - 1) * Operator::Identity(2, 2);
    REQUIRE((lhs.array() == rhs.array()).all());
  }
  // half-integer spins within tolerance
  for (int ts = 1; ts <= 49; ts += 2) {
    const SpinValue s{ts};
    const double sv = s.s();
    const auto ops = spin_operators(s);
    const Operator lhs = project_two_level(ops.sz * ops.sz, s);
    const Operator rhs = (2 * sv - 1) * project_two_level(ops.sz, s) -
                         sv * (sv - 1) * Operator::Identity(2, 2);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("two-level projection examples") {
  const SpinValue s{20};
  REQUIRE((project_two_level(Operator::Identity(21, 21), s) - Operator::Identity(2, 2))
              .cwiseAbs().maxCoeff() == 0.0);

  const Operator px = project_two_level(spin_operators(s).sx, s);
  REQUIRE(std::abs(px(0, 1) - std::sqrt(20.0) / 2.0) < 1e-13);
  REQUIRE(std::abs(px(1, 0) - std::sqrt(20.0) / 2.0) < 1e-13);
  REQUIRE(std::abs(px(0, 0)) == 0);

  REQUIRE_THROWS_AS(project_two_level(Operator::Identity(4, 4), s), std::invalid_argument);
}

TEST_CASE("projection is linear") {
  const SpinValue s{9};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  Operator a(s.dim(), s.dim()), b(s.dim(), s.dim());
  for (int r = 0; r < s.dim(); ++r)
    for (int c = 0; c < s.dim(); ++c) {
      a(r, c) = Complex(uni(rng), uni(rng));
      b(r, c) = Complex(uni(rng), uni(rng));
    }
  const Operator lhs = project_two_level(1.7 * a - 0.3 * b, s);
  const Operator rhs = 1.7 * project_two_level(a, s) - 0.3 * project_two_level(b, s);
  REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("fidelity properties") {
  const Operator u = expm(random_skew_hermitian(4, 11));
  REQUIRE(fidelity(u, u) == Catch::Approx(1.0).margin(1e-12));

  // phase invariance
  const Operator v = std::exp(Complex(0, 0.813)) * u;
  REQUIRE(fidelity(u, v) == Catch::Approx(1.0).margin(1e-12));

  // sigma_x (x) I against identity on two qubits: traceless product
  Operator sx(2, 2);
  sx << 0, 1, 1, 0;
  Operator big = Operator::Zero(4, 4);
  big.topRightCorner(2, 2) = Operator::Identity(2, 2);
  big.bottomLeftCorner(2, 2) = Operator::Identity(2, 2);
  REQUIRE(fidelity(Operator::Identity(4, 4), big) == Catch::Approx(0.0).margin(1e-14));

  REQUIRE_THROWS_AS(fidelity(u, 2.0 * u), std::invalid_argument);
  REQUIRE_THROWS_AS(fidelity(u, Operator::Identity(3, 3)), std::invalid_argument);
}
