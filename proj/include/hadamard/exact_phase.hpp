#pragma once

// Exact phase matrices and symbolic verification of affine Hadamard families.
//
// An entry is exp(2*pi*i*q) * exp(i * sum_p m_p a_p) with q rational and
// integer coefficients m_p on named parameters a_p. A Gram entry
// [H H^*]_{ij} is then a sum of d such terms; grouping them by their
// frequency vector m, the matrix is Hadamard for all parameter values iff
// every group's roots of unity sum to zero. That test is exact: each sum is
// mapped to Z[x]/(Phi_N(x)) with N the lcm of all phase denominators.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hadamard/errors.hpp"
#include "hadamard/phase_core.hpp"

namespace hadamard {

/// Reduced fraction num/den with den > 0.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Accepts "p/q" or an integer literal.
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Representative of this value modulo 1 in [0, 1).
  Rational mod_one() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// exp(2*pi*i*base) * exp(i * sum linear[p] * p); base is kept in [0, 1) and
/// zero coefficients are dropped.
struct ExactPhase {
  Rational base;
  std::map<std::string, std::int64_t> linear;

  ExactPhase() = default;
  explicit ExactPhase(Rational q, std::map<std::string, std::int64_t> lin = {});

  bool is_constant() const { return linear.empty(); }
  friend bool operator==(const ExactPhase&, const ExactPhase&) = default;
};

/// Product of phases: bases add modulo 1, linear forms add.
ExactPhase operator+(const ExactPhase& a, const ExactPhase& b);
/// Conjugate: negated base and linear form.
ExactPhase operator-(const ExactPhase& a);

/// Dephased matrix of exact phases over an ordered parameter list.
struct ExactAffineMatrix {
  int d = 0;
  std::vector<std::string> params;
  std::vector<ExactPhase> entries;  // row-major d*d

  /// Validates shape, dephasing and that every parameter used is declared.
  static ExactAffineMatrix make(int d, std::vector<std::string> params, std::vector<ExactPhase> entries);

  const ExactPhase& at(int r, int c) const { return entries[static_cast<std::size_t>(r) * d + c]; }
  ExactPhase& at(int r, int c) { return entries[static_cast<std::size_t>(r) * d + c]; }

  /// Integer frequency vector of an entry, one coordinate per parameter.
  std::vector<std::int64_t> frequency(int r, int c) const;
};

using FrequencyVector = std::vector<std::int64_t>;

/// Gram-entry terms grouped by frequency vector.
struct FrequencyTable {
  std::map<FrequencyVector, std::vector<Rational>> groups;

  std::size_t term_count() const;
};

/// [H H^*]_{ij} = sum_k h_ik conj(h_jk) as grouped terms. Rows are 0-based.
/// Throws InvalidInput when i == j or a row is out of range.
FrequencyTable gram_terms(const ExactAffineMatrix& m, int i, int j);

/// Coefficients (constant term first) of the N-th cyclotomic polynomial.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n);

/// Reduces sum_k x^{e_k} modulo Phi_N; `exponents` are taken mod N.
/// The result has length phi(N).
std::vector<std::int64_t> reduce_root_sum(const std::vector<std::int64_t>& exponents, std::int64_t n);

struct CertificateEntry {
  int i = 0;
  int j = 0;
  FrequencyVector frequency;
  std::vector<std::int64_t> reduced;  // coefficients in Z[x]/(Phi_N)
  bool vanishes = false;
};

struct VerificationResult {
  bool verdict = false;
  std::int64_t modulus = 1;  // N
  std::vector<CertificateEntry> certificate;
};

inline constexpr std::int64_t kDefaultMaxModulus = 1'000'000;

/// Exact check that the family is Hadamard for all parameter values, treating
/// parameters as algebraically independent. Throws LimitExceeded when the
/// common denominator N exceeds `max_modulus`.
VerificationResult verify_affine_family(const ExactAffineMatrix& m, std::int64_t max_modulus = kDefaultMaxModulus);

template <class Real>
using Assignment = std::map<std::string, Real>;

/// Numeric core phases at a parameter assignment (phase = 2*pi*q + m.a).
/// Throws InvalidInput when a parameter is not assigned.
template <class Real>
BasicPhaseVector<Real> to_phase_vector(const ExactAffineMatrix& m, const Assignment<Real>& assignment);

/// Entrywise numeric evaluation, independent of the phase-vector path.
template <class Real>
ComplexMatrix<Real> evaluate(const ExactAffineMatrix& m, const Assignment<Real>& assignment);

/// Applies H -> P_r H P_c with the conventions of permute_core.
ExactAffineMatrix permute(const ExactAffineMatrix& m, const std::vector<int>& row_perm,
                          const std::vector<int>& col_perm);

}  // namespace hadamard
