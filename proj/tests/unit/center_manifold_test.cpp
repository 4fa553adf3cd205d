#include <doctest.h>

#include <cmath>
#include <random>

#include "hadamard/catalog.hpp"
#include "hadamard/center_manifold.hpp"
#include "hadamard/family_search.hpp"

using namespace hadamard;

namespace {

const double kPi = pi<double>();

Mat<double> columns(const std::vector<IntVector>& vecs) {
  Mat<double> b(static_cast<Eigen::Index>(vecs[0].size()), static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t k = 0; k < vecs.size(); ++k)
    for (std::size_t r = 0; r < vecs[k].size(); ++r) b(r, k) = static_cast<double>(vecs[k][r]);
  return b;
}

PhaseVector f4(double a) { return to_phase_vector<double>(catalog::get("F4_1").matrix, {{"a", a}}); }

CMExpansion<double> f4_expansion(int order) {
  return expand(f4(kPi / 2), columns(catalog::known_vectors("F4_1")), order);
}

}  // namespace

TEST_SUITE("center-manifold") {
  TEST_CASE("jet space layout") {
    const JetSpace s(3, 2);
    CHECK(s.size() == 10);
    CHECK(s.monomial(0) == Monomial{0, 0, 0});
    CHECK(s.monomial(1) == Monomial{1, 0, 0});
    CHECK(s.monomial(4) == Monomial{2, 0, 0});
    CHECK(s.degree_range(2) == std::pair<std::size_t, std::size_t>{4, 10});
    CHECK(s.index_of({0, 1, 1}) == 8);
    CHECK_THROWS_AS(s.index_of({0, 3, 0}), InvalidInput);
  }

  TEST_CASE("jet arithmetic matches direct evaluation") {
    auto space = std::make_shared<const JetSpace>(2, 4);
    const auto t1 = Jet<double>::variable(space, 0);
    const auto t2 = Jet<double>::variable(space, 1);
    const auto one = Jet<double>::constant(space, 1.0);
    const auto p = (one + t1 * 2) * (t2 - t1 * t2);  // degree 3, exact
    for (auto [a, b] : {std::pair{0.3, -0.2}, std::pair{1.5, 0.7}})
      CHECK(p.evaluate({a, b}) == doctest::Approx((1 + 2 * a) * (b - a * b)));

    const auto d = (t1 * t1 * t2).derivative(0);
    CHECK(d[space->index_of({1, 1})] == 2);
    CHECK(d.degree_part(2).evaluate({1, 1}) == 2);

    // cos/sin through the truncation order: error O(|t|^5).
    const auto x = one * 0.3 + t1 + t2 * 2;
    const auto [c, s] = cos_sin(x);
    for (double h : {1e-2, 5e-3}) {
      CHECK(std::abs(c.evaluate({h, -h}) - std::cos(0.3 - h)) < 10 * std::pow(h, 5));
      CHECK(std::abs(s.evaluate({h, -h}) - std::sin(0.3 - h)) < 10 * std::pow(h, 5));
    }
  }

  TEST_CASE("cubic flow at F4(pi/2)") {
    const auto e = f4_expansion(3);
    CHECK(e.center_dim() == 3);
    CHECK(e.alpha_coeff(0, {1, 2, 0}) == doctest::Approx(-20.0 / 9).epsilon(1e-10));
    CHECK(e.alpha_coeff(0, {2, 1, 0}) == doctest::Approx(4.0 / 9).epsilon(1e-10));
    CHECK(e.alpha_coeff(0, {1, 2, 0}) / e.alpha_coeff(0, {2, 1, 0}) == doctest::Approx(-5).epsilon(1e-12));
    for (int i = 0; i < 3; ++i) {
      for (const auto& m : {Monomial{3, 0, 0}, Monomial{0, 3, 0}, Monomial{0, 0, 3}})
        CHECK(std::abs(e.alpha_coeff(i, m)) < 1e-12);
      const auto [first, last] = e.space->degree_range(2);
      for (std::size_t idx = first; idx < last; ++idx) CHECK(std::abs(e.alpha[idx](i)) < 1e-12);
    }
  }

  TEST_CASE("the ratio under basis scaling") {
    const Mat<double> b = columns(catalog::known_vectors("F4_1"));
    const auto uniform = expand(f4(kPi / 2), Mat<double>(2.5 * b), 3);
    CHECK(uniform.alpha_coeff(0, {1, 2, 0}) / uniform.alpha_coeff(0, {2, 1, 0}) == doctest::Approx(-5).epsilon(1e-10));
    // v1 -> s1 v1, v2 -> s2 v2 turns the ratio into -5 s2 / s1.
    Mat<double> skew = b;
    skew.col(0) *= 2.5;
    skew.col(1) *= 0.5;
    const auto e = expand(f4(kPi / 2), skew, 3);
    CHECK(e.alpha_coeff(0, {1, 2, 0}) / e.alpha_coeff(0, {2, 1, 0}) == doctest::Approx(-5 * 0.5 / 2.5).epsilon(1e-10));
  }

  TEST_CASE("w is orthogonal to the center basis") {
    const auto e = f4_expansion(4);
    for (std::size_t idx = 0; idx < e.space->size(); ++idx) {
      if (e.space->degree(idx) < 2) continue;
      const double n = e.w[idx].norm();
      for (int i = 0; i < 3; ++i) CHECK(std::abs(e.basis.col(i).dot(e.w[idx])) <= 1e-10 * n + 1e-300);
    }
  }

  TEST_CASE("tangency residual shrinks like |t|^(K+1)") {
    const auto e = f4_expansion(4);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> t(3);
      for (auto& x : t) x = g(rng);
      const double n = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
      // Large enough that the O(|t|^5) term dominates rounding.
      for (auto& x : t) x *= 2e-2 / n;
      std::vector<double> half = t;
      for (auto& x : half) x /= 2;
      const double ratio = tangency_residual(e, t).norm() / tangency_residual(e, half).norm();
      CHECK(ratio == doctest::Approx(32).epsilon(0.2));
    }
  }

  TEST_CASE("embedding along v1 follows the family parameter") {
    const auto e = f4_expansion(3);
    const auto at0 = evaluate_embedding(e, {0.0, 0.0, 0.0});
    CHECK(at0.theta == e.base.theta);
    double prev = 0;
    for (double s : {1e-2, 5e-3}) {
      const auto x = evaluate_embedding(e, {s, 0.0, 0.0});
      const auto y = f4(kPi / 2 + s);
      double gap = 0;
      for (std::size_t k = 0; k < x.size(); ++k) gap = std::max(gap, std::abs(wrap_difference(x.theta[k] - y.theta[k])));
      CHECK(gap < 10 * s * s);
      if (prev > 0) CHECK(gap < prev);
      prev = gap;
    }
  }

  TEST_CASE("F6 has no flow through fifth order") {
    const auto base = to_phase_vector<double>(catalog::get("F6").matrix, {});
    const auto e = expand(base, columns(catalog::known_vectors("F6")), 5);
    const auto v = detect_flow(e, 1e-8);
    CHECK_FALSE(v.flow_detected);
    CHECK(v.max_abs_by_order.size() == 6);
    const auto x = evaluate_embedding(e, {1e-2, 0.0, 0.0, 0.0});
    CHECK(potential(x) < 1e-20);
  }

  TEST_CASE("F4 flow is first seen at a mixed cubic") {
    const auto v = detect_flow(f4_expansion(3), 1e-8);
    REQUIRE(v.flow_detected);
    CHECK(v.first_nonzero->order == 3);
    const auto& m = v.first_nonzero->monomial;
    CHECK(std::count_if(m.begin(), m.end(), [](int k) { return k > 0; }) >= 2);
  }

  TEST_CASE("flow rates match the alpha polynomials") {
    const auto e = f4_expansion(3);
    const double t1 = 0.01;
    const double t2 = -0.02;
    const auto r = flow_rates(e, {t1, t2, 0.0});
    CHECK(r[0] == doctest::Approx(-20.0 / 9 * t1 * t2 * t2 + 4.0 / 9 * t1 * t1 * t2).epsilon(1e-8));
  }

  TEST_CASE("expansion preconditions") {
    const auto b = columns(catalog::known_vectors("F4_1"));
    CHECK_THROWS_AS(expand(f4(kPi / 2), b, 1), InvalidInput);
    CHECK_THROWS_AS(expand(f4(0.3), b, 3), PreconditionFailed);
    const auto base = PhaseVector::make(4, std::vector<double>(9, 0.0));
    CHECK_THROWS_AS(expand(base, b, 3), PreconditionFailed);
    CHECK_THROWS_AS(expand(f4(kPi / 2), Mat<double>(b.leftCols(2)), 3), PreconditionFailed);
  }

  TEST_CASE("arbitrary precision agrees with machine precision") {
    dispatch(Precision::arbitrary(40), [](auto zero) {
      using Real = decltype(zero);
      const auto base = to_phase_vector<Real>(catalog::get("F4_1").matrix, {{"a", pi<Real>() / 2}});
      Mat<Real> b = columns(catalog::known_vectors("F4_1")).cast<Real>();
      const auto e = expand(base, b, 3);
      const Real x = e.alpha_coeff(0, {1, 2, 0});
      using std::abs;
      CHECK(abs(x + Real(20) / 9) < parse_real<Real>("1e-30"));
    });
  }
}
