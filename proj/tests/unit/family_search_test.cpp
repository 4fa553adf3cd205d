#include <doctest.h>

#include <Eigen/LU>
#include <set>

#include "hadamard/catalog.hpp"
#include "hadamard/family_search.hpp"

using namespace hadamard;

namespace {

Eigen::MatrixXd as_matrix(const std::vector<IntVector>& vecs) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vecs[0].size()), static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t k = 0; k < vecs.size(); ++k)
    for (std::size_t r = 0; r < vecs[k].size(); ++r) m(r, k) = static_cast<double>(vecs[k][r]);
  return m;
}

long rank_of(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return lu.rank();
}

// Same span: rank of each part equals rank of the concatenation.
bool same_span(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  Eigen::MatrixXd ma = as_matrix(a);
  Eigen::MatrixXd mb = as_matrix(b);
  Eigen::MatrixXd both(ma.rows(), ma.cols() + mb.cols());
  both << ma, mb;
  return rank_of(ma) == rank_of(mb) && rank_of(both) == rank_of(ma);
}

Mat<double> jac_of(const std::string& name, const Assignment<double>& at = {}) {
  return jacobian(to_phase_vector<double>(catalog::get(name).matrix, at));
}

}  // namespace

TEST_SUITE("family-search") {
  TEST_CASE("LLL keeps the lattice and shortens") {
    std::vector<IntVector> b{{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
    const double det = as_matrix(b).determinant();
    lll_reduce(b);
    CHECK(std::abs(as_matrix(b).determinant()) == doctest::Approx(std::abs(det)));
    std::multiset<std::int64_t> norms;
    for (const auto& v : b) norms.insert(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    CHECK(norms == std::multiset<std::int64_t>{1, 2, 5});
  }

  TEST_CASE("integer rounding") {
    CHECK(to_integer_vector({1.0, -2.0, 0.0}) == IntVector{1, -2, 0});
    CHECK_THROWS_AS(to_integer_vector({0.5}), InvalidInput);
  }

  TEST_CASE("F6 kernel has the 0/1 basis") {
    const auto b = integer_kernel_basis(jac_of("F6"));
    REQUIRE(b.integral);
    CHECK(b.vectors.size() == 4);
    CHECK(same_span(b.vectors, catalog::known_vectors("F6")));
    for (double r : b.residuals) CHECK(r < 1e-12);
  }

  TEST_CASE("D10 kernel matches the table up to basis change") {
    const auto b = integer_kernel_basis(jac_of("D10"));
    REQUIRE(b.integral);
    CHECK(b.vectors.size() == 16);
    CHECK_FALSE(b.height_exceeded);
    for (const auto& v : b.vectors)
      for (auto x : v) CHECK(std::abs(x) <= 1);
    CHECK(same_span(b.vectors, catalog::known_vectors("D10")));
  }

  TEST_CASE("trivial kernel") {
    Mat<double> j(1, 1);
    j << -4;
    const auto b = integer_kernel_basis(j);
    CHECK(b.vectors.empty());
    CHECK(b.integral);
  }

  TEST_CASE("lifting G10 directions gives the M10 families") {
    const auto g0 = catalog::at_origin(catalog::get("G10_1").matrix);
    const auto vuw = catalog::known_vectors("G10_1");
    const auto m1 = lift_to_family(g0, {vuw[0]}, {"a"});
    const auto& ref1 = catalog::get("M10_1").matrix;
    CHECK(m1.entries == ref1.entries);
    CHECK(verify_affine_family(m1).verdict);

    const auto m2 = lift_to_family(g0, {vuw[1], vuw[2]}, {"a", "b"});
    CHECK(m2.entries == catalog::get("M10_2").matrix.entries);

    const auto same = lift_to_family(g0, {IntVector(81, 0)}, {"z"});
    CHECK(same.entries == g0.entries);

    CHECK_THROWS_AS(lift_to_family(g0, {IntVector(80, 0)}, {"z"}), InvalidInput);
    CHECK_THROWS_AS(lift_to_family(catalog::get("M10_1").matrix, {vuw[1]}, {"a"}), InvalidInput);
  }

  TEST_CASE("search results are closed under subsets") {
    SearchOptions o;
    o.max_arity = 3;
    const auto r = search_subsets(catalog::get("D10").matrix, catalog::known_vectors("D10"), o);
    std::set<std::vector<int>> found;
    for (const auto& v : r.verified) found.insert(v.indices);
    CHECK(r.verified_by_arity[1] == 16);
    CHECK(found.count({0, 1, 2}));
    CHECK(found.count({3, 14, 15}));
    for (const auto& s : found) {
      if (s.size() < 2) continue;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        auto sub = s;
        sub.erase(sub.begin() + static_cast<long>(drop));
        CHECK(found.count(sub));
      }
    }
    CHECK(subset_parameter(0) == "s1");
  }

  TEST_CASE("prefilter and threads do not change the answer") {
    SearchOptions o;
    o.max_arity = 2;
    const auto base = catalog::get("D10").matrix;
    const auto basis = catalog::known_vectors("D10");
    const auto a = search_subsets(base, basis, o);
    o.prefilter = false;
    o.threads = 3;
    const auto b = search_subsets(base, basis, o);
    REQUIRE(a.verified.size() == b.verified.size());
    for (std::size_t k = 0; k < a.verified.size(); ++k) CHECK(a.verified[k].indices == b.verified[k].indices);
    CHECK(b.prefilter_rejected == 0);
    CHECK(a.tested == 16 + 120);
  }

  TEST_CASE("budget") {
    SearchOptions o;
    o.max_arity = 4;
    o.budget = 100;
    CHECK_THROWS_AS(search_subsets(catalog::get("D10").matrix, catalog::known_vectors("D10"), o), LimitExceeded);
  }
}
