#pragma once

// From center-subspace bases to affine families: integer kernel bases,
// lifting integer directions to exact parametrized matrices, and exhaustive
// search over parameter subsets with exact verification.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hadamard/exact_phase.hpp"
#include "hadamard/spectral.hpp"

namespace hadamard {

using IntVector = std::vector<std::int64_t>;

struct IntegerKernelBasis {
  std::vector<IntVector> vectors;
  std::vector<double> residuals;  // ||J v|| / (||J|| ||v||)
  bool integral = true;           // false: integerization failed, see numeric
  bool height_exceeded = false;   // some entry exceeds the bound
  Mat<double> numeric;            // orthonormal kernel basis (columns)
  std::string note;
};

/// Lattice-reduces `basis` in place (LLL with parameter delta).
void lll_reduce(std::vector<IntVector>& basis, double delta = 0.99);

/// Integer basis of ker J: RREF of a numeric kernel basis, continued-fraction
/// rationalization, denominator clearing and LLL reduction. Each vector is
/// accepted when ||J v|| < 1e-6 ||J|| ||v||.
template <class Real>
IntegerKernelBasis integer_kernel_basis(const Mat<Real>& jac, int height_bound = 8,
                                        std::optional<Real> tol = std::nullopt);

/// Exact rounding of a real vector; throws InvalidInput unless every entry is
/// an integer.
IntVector to_integer_vector(const std::vector<double>& v);

/// base o EXP(i sum_k p_k V_k): the phase of core entry (r, c) gains
/// V_k[(r-1)(d-1) + (c-1)] * p_k. Throws InvalidInput on a length mismatch or
/// a parameter name already used by base.
ExactAffineMatrix lift_to_family(const ExactAffineMatrix& base, const std::vector<IntVector>& vectors,
                                 const std::vector<std::string>& params);

struct SearchOptions {
  int max_arity = 1;
  std::size_t budget = 100'000;  // cap on subsets enumerated
  bool prefilter = true;
  double prefilter_tol = 1e-10;
  int prefilter_points = 3;
  std::uint64_t seed = 1;
  unsigned threads = 1;  // 0: hardware concurrency
  std::int64_t max_modulus = kDefaultMaxModulus;
};

struct VerifiedSubset {
  std::vector<int> indices;  // 0-based into the basis, ascending
  VerificationResult certificate;
};

struct SearchResult {
  std::vector<VerifiedSubset> verified;  // lexicographic by (arity, indices)
  std::size_t tested = 0;
  std::size_t prefilter_rejected = 0;
  std::vector<std::size_t> verified_by_arity;  // index = arity
};

/// Parameter name used for basis vector k (0-based) in lifted families.
std::string subset_parameter(int k);

/// Enumerates subsets of size 1..max_arity in lexicographic order and keeps
/// those whose lifted family verifies exactly. Throws LimitExceeded when the
/// number of subsets exceeds the budget.
SearchResult search_subsets(const ExactAffineMatrix& base, const std::vector<IntVector>& basis,
                            const SearchOptions& opts);

}  // namespace hadamard
