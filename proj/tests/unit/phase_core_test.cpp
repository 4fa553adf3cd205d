#include <doctest.h>

#include <cmath>
#include <random>

#include "hadamard/phase_core.hpp"

using namespace hadamard;

namespace {

const double kPi = pi<double>();

PhaseVector f4(double a) {
  return PhaseVector::make(4, {a + kPi / 2, kPi, a + 3 * kPi / 2, kPi, 0, kPi, a + 3 * kPi / 2, kPi, a + kPi / 2});
}

}  // namespace

TEST_SUITE("phase-core") {
  TEST_CASE("build_matrix small cases") {
    const auto h2 = build_matrix(PhaseVector::make(2, {kPi}));
    CHECK(h2.re(0, 0) == 1);
    CHECK(h2.re(0, 1) == 1);
    CHECK(h2.re(1, 0) == 1);
    CHECK(h2.re(1, 1) == doctest::Approx(-1));
    CHECK(std::abs(h2.im(1, 1)) < 1e-15);

    const auto h3 = build_matrix(PhaseVector::make(3, std::vector<double>(4, 0.0)));
    CHECK(h3.re.isOnes());
    CHECK(h3.im.isZero());
  }

  TEST_CASE("make validates shape") {
    CHECK_THROWS_AS(PhaseVector::make(3, {0.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(PhaseVector::make(1, {}), InvalidInput);
    CHECK(order_from_core_dimension(25) == 6);
    CHECK_THROWS_AS(order_from_core_dimension(8), InvalidInput);
  }

  TEST_CASE("potential values") {
    CHECK(potential(PhaseVector::make(2, {kPi})) == doctest::Approx(0).epsilon(1e-14));
    CHECK(potential(PhaseVector::make(2, {0.0})) == doctest::Approx(8));
    CHECK(potential(PhaseVector::make(4, std::vector<double>(9, 0.0))) == doctest::Approx(192));
    for (double a : {0.0, 0.4, 1.3, kPi / 2}) CHECK(potential(f4(a)) < 1e-26);
  }

  TEST_CASE("potential is invariant under 2 pi shifts") {
    auto p = PhaseVector::make(3, {0.3, 1.1, -0.7, 2.9});
    auto q = p;
    q.theta[2] += 2 * kPi;
    CHECK(potential(p) == doctest::Approx(potential(q)).epsilon(1e-13));
    CHECK(p.normalized().theta[2] == doctest::Approx(-0.7 + 2 * kPi));
  }

  TEST_CASE("d = 2 closed forms") {
    // V(phi) = 4 + 4 cos(phi), so the field is 4 sin(phi) and its derivative 4 cos(phi).
    for (double phi : {kPi / 2, 0.3, 2.5, kPi}) {
      const auto p = PhaseVector::make(2, {phi});
      CHECK(potential(p) == doctest::Approx(4 + 4 * std::cos(phi)).epsilon(1e-13));
      CHECK(gradient(p)(0) == doctest::Approx(4 * std::sin(phi)).epsilon(1e-13));
      CHECK(jacobian(p)(0, 0) == doctest::Approx(4 * std::cos(phi)).epsilon(1e-13));
    }
    CHECK(gradient(PhaseVector::make(2, {kPi / 2}))(0) == doctest::Approx(4));
    CHECK(jacobian(PhaseVector::make(2, {kPi}))(0, 0) == doctest::Approx(-4));
  }

  TEST_CASE("gradient and Jacobian against finite differences near F3") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0, 0.05);
    const double w = 2 * kPi / 3;
    std::vector<double> th{w, 2 * w, 2 * w, 4 * w};
    for (auto& x : th) x += noise(rng);
    const auto p = PhaseVector::make(3, th);
    const auto g = gradient(p);
    const auto J = jacobian(p);
    const double h = 1e-6;
    for (int k = 0; k < 4; ++k) {
      auto plus = p;
      auto minus = p;
      plus.theta[k] += h;
      minus.theta[k] -= h;
      CHECK(g(k) == doctest::Approx(-(potential(plus) - potential(minus)) / (2 * h)).epsilon(1e-6));
      const Eigen::VectorXd col = (gradient(plus) - gradient(minus)) / (2 * h);
      CHECK((J.col(k) - col).norm() < 1e-6 * J.norm());
    }
  }

  TEST_CASE("F4 family is a curve of fixed points") {
    for (double a : {0.0, 0.7, 2.0}) CHECK(gradient(f4(a)).norm() < 1e-13);
  }

  TEST_CASE("Jacobian pattern on the F4 family") {
    const double a = 0.9;
    const auto J = jacobian(f4(a));
    CHECK(J.isApprox(J.transpose()));
    CHECK(J(0, 0) == doctest::Approx(-12));
    CHECK(J(0, 4) == doctest::Approx(-4 * std::sin(a)));
    CHECK(J(1, 3) == doctest::Approx(-4 * std::sin(a)));
    CHECK(J(0, 1) == doctest::Approx(4));
  }

  TEST_CASE("permutation sigma_2") {
    const std::vector<int> rows{0, 2, 1, 3};
    const std::vector<int> cols{0, 1, 3, 2};
    CHECK(core_permutation(4, rows, cols) == std::vector<int>{3, 5, 4, 0, 2, 1, 6, 8, 7});

    const auto v1 = PhaseVector::make(4, {1, 0, 1, 0, 0, 0, 1, 0, 1});
    CHECK(permute_core(v1, rows, cols).theta == std::vector<double>{0, 0, 0, 1, 1, 0, 1, 1, 0});

    const std::vector<int> id{0, 1, 2, 3};
    const auto p = f4(0.3);
    CHECK(permute_core(p, id, id).theta == p.theta);
  }

  TEST_CASE("permutations must fix the first index") {
    const auto p = f4(0.3);
    const std::vector<int> bad{1, 0, 2, 3};
    const std::vector<int> id{0, 1, 2, 3};
    CHECK_THROWS_AS(permute_core(p, bad, id), InvalidInput);
    CHECK_THROWS_AS(permute_core(p, std::vector<int>{0, 1, 1, 3}, id), InvalidInput);
  }

  TEST_CASE("permuted matrix equals the permuted entries") {
    const auto p = PhaseVector::make(4, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    const std::vector<int> rows{0, 3, 1, 2};
    const std::vector<int> cols{0, 2, 3, 1};
    const auto h = build_matrix(p);
    const auto hp = build_matrix(permute_core(p, rows, cols));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        CHECK(hp.re(r, c) == doctest::Approx(h.re(rows[r], cols[c])));
        CHECK(hp.im(r, c) == doctest::Approx(h.im(rows[r], cols[c])));
      }
  }

  TEST_CASE("arbitrary precision potential at a Hadamard point") {
    DigitsScope scope(60);
    const BigReal P = pi<BigReal>();
    const auto p = BigPhaseVector::make(4, {P, P, 2 * P, P, BigReal(0), P, 2 * P, P, P});
    CHECK(potential(p) < BigReal("1e-100"));
    CHECK(to_double(potential(convert<BigReal>(PhaseVector::make(2, {0.0})))) == doctest::Approx(8));
  }
}
