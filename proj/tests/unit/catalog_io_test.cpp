#include <doctest.h>

#include <algorithm>

#include "hadamard/catalog.hpp"
#include "hadamard/io.hpp"

using namespace hadamard;

TEST_SUITE("catalog") {
  TEST_CASE("names") {
    const std::vector<std::string> expect{"F4_1",  "F6",    "F6_2",  "F6_2T", "D6",  "D6_1",
                                          "B9_0",  "G10_1", "M10_1", "M10_2", "D10", "D10_3"};
    CHECK(catalog::names() == expect);
    for (const auto& e : catalog::entries()) CHECK_FALSE(e.provenance.empty());
  }

  TEST_CASE("sample entries (1-based positions)") {
    const auto& f4 = catalog::get("F4_1").matrix;
    CHECK(f4.at(1, 1).base == Rational(1, 4));
    CHECK(to_phase_vector<double>(f4, {{"a", 0.0}}).theta[0] == doctest::Approx(pi<double>() / 2));
    CHECK(catalog::get("B9_0").matrix.at(1, 2).base == Rational(3, 10));
    CHECK(catalog::get("D10").matrix.at(1, 1).base == Rational(1, 2));
  }

  TEST_CASE("every entry verifies") {
    for (const auto& e : catalog::entries()) {
      CAPTURE(e.name);
      CHECK(verify_affine_family(e.matrix).verdict);
    }
  }

  TEST_CASE("unknown names list the catalog") {
    try {
      catalog::get("NOPE");
      FAIL("expected an exception");
    } catch (const InvalidInput& e) {
      CHECK(std::string(e.what()).find("D10_3") != std::string::npos);
    }
    CHECK_THROWS_AS(catalog::known_vectors("B9_0"), InvalidInput);
  }

  TEST_CASE("row tokens") {
    const auto m = catalog::parse_rows(2, {"a"}, {"1 1", "1 -ie(a)"});
    CHECK(m.at(1, 1).base == Rational(3, 4));
    CHECK(m.at(1, 1).linear.at("a") == 1);
    const auto w = catalog::parse_rows(3, {}, {"1 1 1", "1 w2 w4", "1 w4 w2"});
    CHECK(w.at(1, 1).base == Rational(1, 3));
    CHECK(verify_affine_family(w).verdict);
    const auto e = catalog::parse_rows(2, {"b"}, {"1 1", "1 -E3e(-b)"});
    CHECK(e.at(1, 1).base == Rational(4, 5));
    CHECK(e.at(1, 1).linear.at("b") == -1);
    CHECK_THROWS_AS(catalog::parse_rows(2, {}, {"1 1", "1 q"}), InvalidInput);
    CHECK_THROWS_AS(catalog::parse_rows(2, {}, {"1 1"}), InvalidInput);
  }

  TEST_CASE("known vectors are kernel vectors") {
    for (const auto& [name, at] : std::vector<std::pair<std::string, Assignment<double>>>{
             {"F4_1", {{"a", pi<double>() / 2}}}, {"F6", {}}, {"G10_1", {{"a", 0.0}}}, {"D10", {}}}) {
      const auto j = jacobian(to_phase_vector<double>(catalog::get(name).matrix, at));
      for (const auto& v : catalog::known_vectors(name)) {
        Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
        for (std::size_t k = 0; k < v.size(); ++k) x(k) = static_cast<double>(v[k]);
        CHECK((j * x).norm() < 1e-10 * x.norm());
      }
    }
  }
}

TEST_SUITE("io") {
  TEST_CASE("phase vector round trip at high precision") {
    DigitsScope scope(50);
    const auto p = to_phase_vector<BigReal>(catalog::get("F4_1").matrix, {{"a", pi<BigReal>() / 3}});
    const auto j = io::to_json(p, 50);
    CHECK(j.at("theta")[0].is_string());
    const auto q = io::phase_vector_from_json<BigReal>(j);
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(abs(p.theta[k] - q.theta[k]) < BigReal("1e-48"));
  }

  TEST_CASE("phase vector from plain numbers infers d") {
    const auto p = io::phase_vector_from_json<double>(io::json::parse(R"({"theta": [3.141592653589793]})"));
    CHECK(p.d == 2);
    CHECK_THROWS_AS(io::phase_vector_from_json<double>(io::json::parse(R"({"theta": [1, 2]})")), InvalidInput);
    CHECK_THROWS_AS(io::phase_vector_from_json<double>(io::json::parse(R"({"phases": []})")), InvalidInput);
  }

  TEST_CASE("exact matrix round trip") {
    for (const auto& e : catalog::entries()) {
      const auto back = io::exact_matrix_from_json(io::to_json(e));
      CHECK(back.entries == e.matrix.entries);
      CHECK(back.params == e.matrix.params);
    }
    CHECK_THROWS_AS(io::exact_matrix_from_json(io::json::parse(R"({"d": 2, "entries": [[{"q": "0"}]]})")),
                    InvalidInput);
  }

  TEST_CASE("integer vectors") {
    const auto v = io::vectors_from_json(io::json::parse(R"({"vectors": [[1, 0, -1], [2, 2, 0]]})"));
    CHECK(v == std::vector<IntVector>{{1, 0, -1}, {2, 2, 0}});
    CHECK_THROWS_AS(io::vectors_from_json(io::json::parse("[[0.5]]")), InvalidInput);
  }

  TEST_CASE("reports") {
    const auto r = verify_affine_family(catalog::get("F4_1").matrix);
    const auto j = io::to_json(r);
    CHECK(j.at("verdict") == true);
    CHECK(j.at("modulus") == 4);
    CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), InvalidInput);
  }
}
