#pragma once

// Named exact matrices and affine families.

#include <string>
#include <vector>

#include "hadamard/exact_phase.hpp"
#include "hadamard/family_search.hpp"

namespace hadamard::catalog {

struct ParamRange {
  std::string name;
  std::string range;
};

struct Entry {
  std::string name;
  ExactAffineMatrix matrix;
  std::vector<ParamRange> params;
  std::string provenance;
};

/// Throws InvalidInput listing the available names when `name` is unknown.
const Entry& get(const std::string& name);
const std::vector<Entry>& entries();
std::vector<std::string> names();

/// Parses one whitespace-separated token per entry. Tokens: "1", "-1", "i",
/// "-i", "w<k>" (w = exp(2 pi i/6)), "E<k>" (exp(2 pi i/10)) and a trailing
/// parameter factor "e(<p>)" or "e(-<p>)", e.g. "-ie(a)". Every token may be
/// prefixed by "-" and then "i".
ExactAffineMatrix parse_rows(int d, std::vector<std::string> params, const std::vector<std::string>& rows);

/// Core vectors that accompany some entries:
///  "F4_1": tangents v1..v3 of the three families through F4_1(pi/2);
///  "F6":   kernel vectors v1..v4;
///  "G10_1": directions V, U, W at G10_1(0);
///  "D10":  the 16 one-parameter directions V1..V16.
/// Throws InvalidInput for other names.
std::vector<IntVector> known_vectors(const std::string& name);

/// Zero-parameter base of an entry with the given parameter values set to 0.
ExactAffineMatrix at_origin(const ExactAffineMatrix& m);

}  // namespace hadamard::catalog
