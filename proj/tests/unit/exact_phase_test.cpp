#include <doctest.h>

#include <cmath>

#include "hadamard/catalog.hpp"
#include "hadamard/exact_phase.hpp"
#include "hadamard/family_search.hpp"

using namespace hadamard;

namespace {

const double kPi = pi<double>();

double angle_gap(double x, double y) { return std::abs(wrap_difference(x - y)); }

}  // namespace

TEST_SUITE("exact-phase") {
  TEST_CASE("rationals") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational::parse("6/8").str() == "3/4");
    CHECK(Rational::parse("-2").num() == -2);
    CHECK(Rational(-1, 4).mod_one() == Rational(3, 4));
    CHECK(Rational(7, 3).mod_one() == Rational(1, 3));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInput);
    CHECK_THROWS_AS(Rational::parse("x"), InvalidInput);
  }

  TEST_CASE("phase arithmetic") {
    const ExactPhase a(Rational(3, 4), {{"a", 1}});
    const ExactPhase b(Rational(1, 2), {{"a", -1}});
    const auto s = a + b;
    CHECK(s.base == Rational(1, 4));
    CHECK(s.is_constant());
    CHECK((-a).base == Rational(1, 4));
    CHECK((-a).linear.at("a") == -1);
  }

  TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<std::int64_t>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_polynomial(10) == std::vector<std::int64_t>{1, -1, 1, -1, 1});
  }

  TEST_CASE("root sums") {
    auto zero = [](const std::vector<std::int64_t>& v) {
      return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
    };
    CHECK(zero(reduce_root_sum({0, 1, 2, 3, 4, 5}, 6)));
    CHECK(zero(reduce_root_sum({0, 5}, 10)));              // 1 + (-1)
    CHECK(zero(reduce_root_sum({1, 3, 5, 7, 9}, 10)));     // minus the fifth roots of unity
    CHECK_FALSE(zero(reduce_root_sum({0}, 6)));
    CHECK_FALSE(zero(reduce_root_sum({0, 1}, 4)));
    CHECK(reduce_root_sum({0}, 12).size() == 4);
  }

  TEST_CASE("gram terms of F4_1 and D6") {
    const auto& f4 = catalog::get("F4_1").matrix;
    const auto t = gram_terms(f4, 1, 2);
    REQUIRE(t.groups.size() == 2);
    auto g0 = t.groups.at({0});
    auto g1 = t.groups.at({1});
    std::sort(g0.begin(), g0.end());
    std::sort(g1.begin(), g1.end());
    CHECK(g0 == std::vector<Rational>{Rational(0), Rational(1, 2)});
    CHECK(g1 == std::vector<Rational>{Rational(1, 4), Rational(3, 4)});
    CHECK(t.term_count() == 4);

    const auto d6 = gram_terms(catalog::get("D6").matrix, 1, 2);
    REQUIRE(d6.groups.size() == 1);
    CHECK(d6.groups.begin()->second.size() == 6);
    CHECK_THROWS_AS(gram_terms(f4, 0, 0), InvalidInput);
    CHECK_THROWS_AS(gram_terms(f4, 0, 4), InvalidInput);
  }

  TEST_CASE("verification verdicts") {
    CHECK(verify_affine_family(catalog::get("F4_1").matrix).verdict);
    const auto m10 = verify_affine_family(catalog::get("M10_1").matrix);
    CHECK(m10.verdict);
    for (const auto& c : m10.certificate) CHECK(c.vanishes);

    const auto d10 = catalog::get("D10").matrix;
    auto v = catalog::known_vectors("D10");
    const auto four = lift_to_family(d10, {v[0], v[1], v[2], v[3]}, {"a", "b", "c", "e"});
    const auto r = verify_affine_family(four);
    CHECK_FALSE(r.verdict);
    CHECK(std::any_of(r.certificate.begin(), r.certificate.end(), [](const auto& c) { return !c.vanishes; }));
  }

  TEST_CASE("modulus limit") {
    CHECK_THROWS_AS(verify_affine_family(catalog::get("B9_0").matrix, 5), LimitExceeded);
  }

  TEST_CASE("to_phase_vector") {
    const auto& f4 = catalog::get("F4_1").matrix;
    // The real point [0, pi, pi, pi, 0, pi, pi, pi, 0] sits at a = -pi/2 in this parametrization.
    const auto p = to_phase_vector<double>(f4, {{"a", -kPi / 2}});
    const std::vector<double> expect{0, kPi, kPi, kPi, 0, kPi, kPi, kPi, 0};
    for (int k = 0; k < 9; ++k) CHECK(angle_gap(p.theta[k], expect[k]) < 1e-14);

    const auto d6 = to_phase_vector<double>(catalog::get("D6_1").matrix, {{"c", 0.0}});
    const auto d6b = to_phase_vector<double>(catalog::get("D6").matrix, {});
    for (std::size_t k = 0; k < d6.size(); ++k) CHECK(angle_gap(d6.theta[k], d6b.theta[k]) < 1e-14);

    const auto b9 = to_phase_vector<double>(catalog::get("B9_0").matrix, {});
    CHECK(b9.size() == 64);
    for (double x : b9.theta) {
      const double steps = x / (2 * kPi / 10);
      CHECK(std::abs(steps - std::round(steps)) < 1e-12);
    }
    CHECK_THROWS_AS(to_phase_vector<double>(f4, {}), InvalidInput);
  }

  TEST_CASE("evaluate agrees with the phase-vector path") {
    const auto& m = catalog::get("M10_2").matrix;
    const Assignment<double> at{{"a", 0.37}, {"b", -1.2}};
    const auto h1 = evaluate(m, at);
    const auto h2 = build_matrix(to_phase_vector(m, at));
    CHECK((h1.re - h2.re).norm() < 1e-13);
    CHECK((h1.im - h2.im).norm() < 1e-13);
    CHECK(unitarity_defect(h1) < 1e-13);
  }

  TEST_CASE("make rejects malformed matrices") {
    std::vector<ExactPhase> e(4, ExactPhase(Rational(0)));
    e[3] = ExactPhase(Rational(1, 2), {{"z", 1}});
    CHECK_THROWS_AS(ExactAffineMatrix::make(2, {"a"}, e), InvalidInput);
    e[3] = ExactPhase(Rational(1, 2));
    e[1] = ExactPhase(Rational(1, 2));
    CHECK_THROWS_AS(ExactAffineMatrix::make(2, {}, e), InvalidInput);
    CHECK_THROWS_AS(ExactAffineMatrix::make(3, {}, e), InvalidInput);
  }

  TEST_CASE("permute keeps the verdict") {
    const auto& m = catalog::get("D6_1").matrix;
    const auto p = permute(m, {0, 2, 1, 3, 5, 4}, {0, 1, 3, 2, 4, 5});
    CHECK(verify_affine_family(p).verdict);
    CHECK(p.at(1, 1) == m.at(2, 1));
  }
}
