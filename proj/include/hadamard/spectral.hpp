#pragma once

// Eigenanalysis of the flow Jacobian and the defect, computed two ways:
// as the dimension of the center subspace (kernel of D(Phi)) and as the
// nullity of the linearized dephased Hadamard conditions on H o EXP(iR).

#include <optional>
#include <string>

#include "hadamard/phase_core.hpp"

namespace hadamard {

template <class Real>
struct SpectralData {
  Vec<Real> eigenvalues;   // ascending
  Mat<Real> eigenvectors;  // orthonormal columns, same order
  int center_dim = 0;
  Mat<Real> center_basis;  // columns for |lambda| < tol
  Real tol{};
  Real max_residual{};  // max_k ||J v_k - lambda_k v_k||

  Real max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// Default zero threshold: 1e-9 * spectral radius at machine precision,
/// 10^-(digits/2) at arbitrary precision.
template <class Real>
Real default_zero_tolerance(const Real& spectral_radius);

/// Full symmetric eigendecomposition. Throws InvalidInput when J is not
/// symmetric.
template <class Real>
SpectralData<Real> spectrum(const Mat<Real>& jac, std::optional<Real> tol = std::nullopt);

enum class DefectMethod { flow_kernel, linear_system, both };

std::string to_string(DefectMethod m);
DefectMethod parse_defect_method(const std::string& text);

struct DefectReport {
  int defect = 0;
  DefectMethod method = DefectMethod::flow_kernel;
  bool agreement = true;
  std::optional<int> flow_kernel;
  std::optional<int> linear_system;
  std::string diagnostic;
};

/// Center dimension of D(Phi) at p. Throws PreconditionFailed unless
/// potential(p) < tol.
template <class Real>
DefectReport defect_flow(const BasicPhaseVector<Real>& p, std::optional<Real> tol = std::nullopt);

/// Real (d^2 + d - 1) x d^2 linear system in the unknown phase perturbation
/// R: R_{i,1} = 0, R_{1,j} = 0 and, for i < j, real and imaginary parts of
/// sum_k H_ik conj(H_jk) (R_ik - R_jk) = 0.
template <class Real>
Mat<Real> linearized_conditions(const ComplexMatrix<Real>& h);

/// Nullity of linearized_conditions by singular-value thresholding. Throws
/// PreconditionFailed when H is not Hadamard within tol.
template <class Real>
DefectReport defect_linear_system(const ComplexMatrix<Real>& h, std::optional<Real> tol = std::nullopt);

/// Runs both methods; on mismatch, agreement is false and diagnostic explains.
template <class Real>
DefectReport cross_check_defect(const BasicPhaseVector<Real>& p, std::optional<Real> tol = std::nullopt);

}  // namespace hadamard
