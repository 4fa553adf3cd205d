#include <doctest.h>

#include <cmath>

#include "hadamard/catalog.hpp"
#include "hadamard/spectral.hpp"

using namespace hadamard;

namespace {

const double kPi = pi<double>();

PhaseVector f4(double a) { return to_phase_vector<double>(catalog::get("F4_1").matrix, {{"a", a}}); }

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("1x1 spectrum") {
    Mat<double> j(1, 1);
    j << -4;
    const auto s = spectrum(j);
    CHECK(s.eigenvalues(0) == doctest::Approx(-4));
    CHECK(s.center_dim == 0);
  }

  TEST_CASE("asymmetric input is rejected") {
    Mat<double> j(2, 2);
    j << 1, 2, 3, 4;
    CHECK_THROWS_AS(spectrum(j), InvalidInput);
  }

  TEST_CASE("F4 family away from the real point") {
    const auto s = spectrum(jacobian(f4(kPi / 3)));
    CHECK(s.center_dim == 1);
    int negative = 0;
    bool has_minus_8 = false;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
      negative += s.eigenvalues(k) < -s.tol ? 1 : 0;
      has_minus_8 = has_minus_8 || std::abs(s.eigenvalues(k) + 8) < 1e-10;
    }
    CHECK(negative == 8);
    CHECK(has_minus_8);
    CHECK(s.max_residual < 1e-12);
  }

  TEST_CASE("F4 at the real point has a triple zero") {
    const auto s = spectrum(jacobian(f4(kPi / 2)));
    CHECK(s.center_dim == 3);
    CHECK(s.center_basis.cols() == 3);
    const Mat<double> gram = s.center_basis.transpose() * s.center_basis;
    CHECK(gram.isIdentity(1e-12));
  }

  TEST_CASE("defect by the flow kernel") {
    CHECK(defect_flow(f4(kPi / 3)).defect == 1);
    CHECK(defect_flow(f4(kPi / 2)).defect == 3);
    CHECK(defect_flow(to_phase_vector<double>(catalog::get("F6").matrix, {})).defect == 4);
    CHECK(defect_flow(PhaseVector::make(2, {kPi})).defect == 0);
  }

  TEST_CASE("non-Hadamard points are rejected") {
    CHECK_THROWS_AS(defect_flow(PhaseVector::make(2, {0.3})), PreconditionFailed);
    CHECK_THROWS_AS(defect_linear_system(build_matrix(PhaseVector::make(2, {0.3}))), PreconditionFailed);
  }

  TEST_CASE("linearized conditions") {
    const auto h = build_matrix(f4(0.4));
    const auto a = linearized_conditions(h);
    CHECK(a.rows() == 16 + 4 - 1);
    CHECK(a.cols() == 16);
    CHECK(defect_linear_system(h).defect == 1);
  }

  TEST_CASE("defect by the linear system") {
    CHECK(defect_linear_system(build_matrix(to_phase_vector<double>(catalog::get("G10_1").matrix, {{"a", 0.0}})))
              .defect == 8);
    CHECK(defect_linear_system(build_matrix(to_phase_vector<double>(catalog::get("D10").matrix, {}))).defect == 16);
    dispatch(Precision::arbitrary(40), [](auto zero) {
      using Real = decltype(zero);
      const auto p = to_phase_vector<Real>(catalog::get("B9_0").matrix, {});
      CHECK(defect_linear_system(build_matrix(p)).defect == 2);
    });
  }

  TEST_CASE("both methods agree") {
    const auto r = cross_check_defect(f4(kPi / 2));
    CHECK(r.method == DefectMethod::both);
    CHECK(r.agreement);
    CHECK(r.defect == 3);
    for (double c : {0.0, 0.3, 1.1}) {
      const auto d = cross_check_defect(to_phase_vector<double>(catalog::get("D6_1").matrix, {{"c", c}}));
      CHECK(d.agreement);
      CHECK(d.defect == 4);
      CHECK(*d.flow_kernel == *d.linear_system);
    }
    CHECK(cross_check_defect(to_phase_vector<double>(catalog::get("F6").matrix, {})).defect == 4);
  }

  TEST_CASE("method names") {
    CHECK(parse_defect_method("flow") == DefectMethod::flow_kernel);
    CHECK(parse_defect_method("linsys") == DefectMethod::linear_system);
    CHECK(parse_defect_method("both") == DefectMethod::both);
    CHECK_THROWS_AS(parse_defect_method("svd"), InvalidInput);
  }

  TEST_CASE("default tolerances") {
    CHECK(default_zero_tolerance(32.0) == doctest::Approx(3.2e-8));
    DigitsScope scope(40);
    CHECK(to_double(default_zero_tolerance(BigReal(32))) == doctest::Approx(1e-20));
  }
}
