#include "hadamard/catalog.hpp"

#include <cctype>
#include <sstream>

namespace hadamard::catalog {

namespace {

ExactPhase parse_token(const std::string& token, const std::vector<std::string>& params) {
  std::string s = token;
  Rational q(0);
  std::map<std::string, std::int64_t> lin;
  auto bad = [&] { return InvalidInput("cannot parse catalog token '" + token + "'"); };
  if (!s.empty() && s[0] == '-') {
    q = q + Rational(1, 2);
    s.erase(0, 1);
  }
  if (s == "1") return ExactPhase(q);
  if (!s.empty() && s[0] == 'i') {
    q = q + Rational(1, 4);
    s.erase(0, 1);
  }
  if (!s.empty() && (s[0] == 'w' || s[0] == 'E')) {
    const std::int64_t den = s[0] == 'w' ? 6 : 10;
    std::size_t pos = 1;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == 1) throw bad();
    q = q + Rational(std::stoll(s.substr(1, pos - 1)), den);
    s.erase(0, pos);
  }
  if (s.rfind("e(", 0) == 0 && s.back() == ')') {
    std::string name = s.substr(2, s.size() - 3);
    std::int64_t sign = 1;
    if (!name.empty() && name[0] == '-') {
      sign = -1;
      name.erase(0, 1);
    }
    if (std::find(params.begin(), params.end(), name) == params.end()) throw bad();
    lin[name] = sign;
    s.clear();
  }
  if (!s.empty()) throw bad();
  return ExactPhase(q, lin);
}

IntVector core_from_rows(const std::vector<std::vector<int>>& rows) {
  IntVector v;
  for (const auto& r : rows)
    for (int x : r) v.push_back(x);
  return v;
}

// Table of one-parameter directions at D10: 1-based core coordinates with
// value +1, then with value -1.
const int kD10Plus[16][8] = {
    {2, 3, 7, 8, 74, 75, 79, 80},     {10, 12, 16, 18, 64, 66, 70, 72}, {28, 29, 35, 36, 46, 47, 53, 54},
    {4, 8, 24, 25, 40, 44, 78, 79},   {37, 40, 47, 54, 55, 58, 65, 72}, {4, 9, 12, 14, 48, 50, 67, 72},
    {19, 27, 29, 34, 38, 43, 64, 72}, {37, 39, 43, 45, 46, 48, 52, 54}, {2, 8, 20, 26, 43, 45, 52, 54},
    {47, 48, 49, 50, 74, 75, 76, 77}, {2, 6, 30, 32, 65, 69, 75, 77},   {12, 14, 30, 32, 48, 50, 75, 77},
    {47, 50, 56, 59, 65, 68, 74, 77}, {25, 26, 34, 35, 47, 50, 74, 77}, {19, 23, 28, 32, 64, 68, 73, 77},
    {19, 23, 49, 53, 58, 62, 73, 77}};
const int kD10Minus[16][8] = {
    {10, 18, 19, 27, 55, 63, 64, 72}, {2, 8, 20, 26, 56, 62, 74, 80},   {4, 6, 13, 15, 67, 69, 76, 78},
    {28, 32, 48, 54, 57, 63, 64, 68}, {5, 7, 15, 17, 32, 34, 78, 80},   {20, 24, 28, 35, 38, 42, 73, 80},
    {3, 8, 13, 14, 58, 59, 75, 80},   {5, 6, 23, 24, 59, 60, 77, 78},   {10, 12, 59, 60, 64, 66, 77, 78},
    {15, 18, 24, 27, 33, 36, 42, 45}, {10, 17, 22, 27, 40, 45, 46, 53}, {20, 22, 24, 27, 38, 40, 42, 45},
    {15, 16, 17, 18, 42, 43, 44, 45}, {15, 18, 42, 45, 57, 58, 66, 67}, {3, 4, 8, 9, 39, 40, 44, 45},
    {3, 9, 33, 34, 39, 45, 69, 70}};

std::vector<IntVector> d10_directions() {
  std::vector<IntVector> out;
  for (int k = 0; k < 16; ++k) {
    IntVector v(81, 0);
    for (int j = 0; j < 8; ++j) {
      v[kD10Plus[k][j] - 1] = 1;
      v[kD10Minus[k][j] - 1] = -1;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<IntVector> f6_vectors() {
  return {{1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0},
          {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1},
          {1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0},
          {0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1}};
}

std::vector<IntVector> g10_vectors() {
  const IntVector v = core_from_rows({{-1, 0, -1, -1, 0, 0, 0, 0, -1},
                                      {0, 0, -1, -1, 0, 0, 0, 0, 0},
                                      {0, 0, -1, -1, 0, 0, 0, 0, 0},
                                      {0, 1, 0, 0, 0, 0, 1, 0, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 1, 0, 0, 1, 1, 1, 0, 0},
                                      {0, 1, 0, 0, 1, 1, 1, 0, 0},
                                      {-1, 0, -1, -1, 0, 0, 0, 0, -1},
                                      {0, 1, 0, 0, 0, 0, 1, 0, 0}});
  const IntVector u = core_from_rows({{0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 0, 1, 1, 0, 1, 1, 1, 1},
                                      {0, 0, 1, 0, 0, 1, 0, 0, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 0, 1, 0, 0, 1, 0, 0, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 0, 1, 1, 0, 1, 1, 1, 1},
                                      {0, 0, 1, 0, 0, 1, 0, 0, 0},
                                      {0, 0, 1, 0, 0, 1, 0, 0, 0}});
  const IntVector w = core_from_rows({{0, 1, 1, 0, 1, 1, 1, 1, 0},
                                      {0, 1, 0, 0, 1, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0, 0},
                                      {0, 1, 1, 0, 1, 1, 1, 1, 0},
                                      {0, 1, 0, 0, 1, 0, 0, 0, 0},
                                      {0, 1, 0, 0, 1, 0, 0, 0, 0},
                                      {0, 1, 0, 0, 1, 0, 0, 0, 0}});
  return {v, u, w};
}

std::vector<Entry> build() {
  std::vector<Entry> out;
  auto add = [&](std::string name, ExactAffineMatrix m, std::vector<ParamRange> params, std::string provenance) {
    out.push_back({std::move(name), std::move(m), std::move(params), std::move(provenance)});
  };

  add("F4_1",
      parse_rows(4, {"a"}, {"1 1 1 1", "1 ie(a) -1 -ie(a)", "1 -1 1 -1", "1 -ie(a) -1 ie(a)"}),
      {{"a", "[0, pi]"}}, "one-parameter family containing every 4x4 complex Hadamard up to equivalence; real at a = pi/2");

  const ExactAffineMatrix f6 = parse_rows(6, {},
                                          {"1 1 1 1 1 1", "1 w1 w2 w3 w4 w5", "1 w2 w4 1 w2 w4", "1 w3 1 w3 1 w3",
                                           "1 w4 w2 1 w4 w2", "1 w5 w4 w3 w2 w1"});
  add("F6", f6, {}, "Fourier matrix of order 6");
  const auto fv = f6_vectors();
  add("F6_2", lift_to_family(f6, {fv[0], fv[1]}, {"a", "b"}), {{"a", "real"}, {"b", "real"}},
      "two-parameter affine Fourier family F6 o EXP(i R(a,b))");
  add("F6_2T", lift_to_family(f6, {fv[2], fv[3]}, {"a", "b"}), {{"a", "real"}, {"b", "real"}},
      "transposed two-parameter affine Fourier family F6 o EXP(i R(a,b)^T)");

  const ExactAffineMatrix d6 = parse_rows(6, {},
                                          {"1 1 1 1 1 1", "1 -1 i -i -i i", "1 i -1 i -i -i", "1 -i i -1 i -i",
                                           "1 -i -i i -1 i", "1 i -i -i i -1"});
  add("D6", d6, {}, "symmetric order-6 matrix at the base of a one-parameter affine family");
  const IntVector rc = core_from_rows(
      {{0, 0, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, -1, 0, 0, -1}, {0, -1, 0, 0, -1}, {0, 0, 1, 1, 0}});
  add("D6_1", lift_to_family(d6, {rc}, {"c"}), {{"c", "real"}}, "one-parameter affine family D6 o EXP(i R(c))");

  add("B9_0",
      parse_rows(9, {},
                 {"1 1 1 1 1 1 1 1 1", "1 -1 E3 E3 -1 E9 E8 E7 E1", "1 E4 -1 E7 E1 E3 -1 E9 E9",
                  "1 E3 E7 -1 E1 E8 E9 E3 -1", "1 E9 E1 -1 -1 E3 E7 E2 E7", "1 E9 -1 E1 E3 -1 E1 E7 E6",
                  "1 E1 E7 E9 E6 E1 -1 -1 E3", "1 E7 E9 E4 E9 -1 E3 -1 E1", "1 -1 E2 E9 E7 E7 E3 E1 -1"}),
      {}, "order-9 matrix over tenth roots of unity with defect 2 and no affine family");

  add("G10_1",
      parse_rows(10, {"a"},
                 {"1 1 1 1 1 1 1 1 1 1",
                  "1 ie(a) ie(a) e(a) -ie(a) -1 e(a) -ie(a) -e(a) -e(a)",
                  "1 -1 -ie(a) -e(a) e(a) i -i e(a) -e(a) ie(a)",
                  "1 i -i -ie(a) ie(a) -i i -1 -e(a) e(a)",
                  "1 1 i -1 ie(a) i -1 -i -i -ie(a)",
                  "1 -ie(a) -e(a) e(a) e(a) -1 -e(a) -e(a) e(a) ie(a)",
                  "1 i e(a) -e(a) -ie(a) -i -1 ie(a) e(a) -e(a)",
                  "1 -1 -i ie(a) -e(a) i 1 -1 e(a) -ie(a)",
                  "1 -i i i -e(a) -i -i i -1 e(a)",
                  "1 -i -1 -i -1 1 i 1 i -1"}),
      {{"a", "real"}}, "one-parameter family built from Golay sequences, dephased");

  add("M10_1",
      parse_rows(10, {"a"},
                 {"1 1 1 1 1 1 1 1 1 1",
                  "1 ie(-a) i e(-a) -ie(-a) -1 1 -i -1 -e(-a)",
                  "1 -1 -i -e(-a) e(-a) i -i 1 -1 i",
                  "1 i -i -ie(-a) ie(-a) -i i -1 -1 1",
                  "1 1 ie(a) -1 i i -1 -ie(a) -i -i",
                  "1 -i -1 1 1 -1 -1 -1 1 i",
                  "1 i e(a) -1 -i -ie(a) -e(a) ie(a) 1 -1",
                  "1 -1 -ie(a) i -1 ie(a) e(a) -e(a) 1 -i",
                  "1 -ie(-a) i ie(-a) -e(-a) -i -i i -1 e(-a)",
                  "1 -i -e(a) -i -1 1 i e(a) i -1"}),
      {{"a", "real"}}, "one-parameter affine family G10_1(0) o EXP(i a V)");

  add("M10_2",
      parse_rows(10, {"a", "b"},
                 {"1 1 1 1 1 1 1 1 1 1",
                  "1 i ie(b) e(b) -i -e(b) e(b) -ie(b) -e(b) -1",
                  "1 -1 -ie(b) -e(a) e(a) ie(b) -ie(a) e(a) -e(a) ie(a)",
                  "1 i -i -ie(a) i -i ie(a) -1 -1 1",
                  "1 1 i -1 i i -1 -i -i -i",
                  "1 -i -1 e(a) 1 -1 -e(a) -1 1 i",
                  "1 i e(b) -e(b) -i -ie(b) -e(b) ie(b) e(b) -1",
                  "1 -1 -ie(b) ie(a) -e(a) ie(b) e(a) -e(a) e(a) -ie(a)",
                  "1 -i ie(b) ie(a) -1 -ie(b) -ie(a) i -1 1",
                  "1 -i -e(b) -ie(a) -1 e(b) ie(a) 1 i -1"}),
      {{"a", "real"}, {"b", "real"}}, "two-parameter affine family G10_1(0) o EXP(i (a U + b W))");

  const ExactAffineMatrix d10 = parse_rows(10, {},
                                           {"1 1 1 1 1 1 1 1 1 1", "1 -1 -i -i -i -i i i i i",
                                            "1 -i -1 i i -i -i -i i i", "1 -i i -1 -i i -i i -i i",
                                            "1 -i i -i -1 i i -i i -i", "1 -i -i i i -1 i i -i -i",
                                            "1 i -i -i i i -1 -i -i i", "1 i -i i -i i -i -1 i -i",
                                            "1 i i -i i -i -i i -1 -i", "1 i i i -i -i i -i -i -1"});
  add("D10", d10, {}, "order-10 matrix over fourth roots of unity with defect 16");
  const auto dv = d10_directions();
  add("D10_3", lift_to_family(d10, {dv[0], dv[1], dv[2]}, {"a", "b", "c"}),
      {{"a", "real"}, {"b", "real"}, {"c", "real"}}, "three-parameter affine family D10 o EXP(i (a V1 + b V2 + c V3))");
  return out;
}

}  // namespace

ExactAffineMatrix parse_rows(int d, std::vector<std::string> params, const std::vector<std::string>& rows) {
  if (static_cast<int>(rows.size()) != d) throw InvalidInput("expected " + std::to_string(d) + " rows");
  std::vector<ExactPhase> entries;
  entries.reserve(static_cast<std::size_t>(d) * d);
  for (const auto& row : rows) {
    std::istringstream is(row);
    std::string tok;
    int count = 0;
    while (is >> tok) {
      entries.push_back(parse_token(tok, params));
      ++count;
    }
    if (count != d) throw InvalidInput("row '" + row + "' has " + std::to_string(count) + " entries");
  }
  return ExactAffineMatrix::make(d, std::move(params), std::move(entries));
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = build();
  return all;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.push_back(e.name);
  return out;
}

const Entry& get(const std::string& name) {
  for (const auto& e : entries())
    if (e.name == name) return e;
  std::string list;
  for (const auto& n : names()) list += (list.empty() ? "" : ", ") + n;
  throw InvalidInput("unknown catalog entry '" + name + "'; available: " + list);
}

std::vector<IntVector> known_vectors(const std::string& name) {
  if (name == "F4_1")
    return {{1, 0, 1, 0, 0, 0, 1, 0, 1}, {0, 0, 0, 1, 1, 0, 1, 1, 0}, {0, 1, 1, 0, 1, 1, 0, 0, 0}};
  if (name == "F6") return f6_vectors();
  if (name == "G10_1") return g10_vectors();
  if (name == "D10") return d10_directions();
  throw InvalidInput("no vectors are recorded for '" + name + "'");
}

ExactAffineMatrix at_origin(const ExactAffineMatrix& m) {
  std::vector<ExactPhase> entries;
  entries.reserve(m.entries.size());
  for (const auto& e : m.entries) entries.emplace_back(e.base);
  return ExactAffineMatrix::make(m.d, {}, std::move(entries));
}

}  // namespace hadamard::catalog
