#pragma once

// Polynomial center-manifold reduction of the flow at a Hadamard point.
//
// With X(t) = sum_i t_i v_i + w(t), w of order >= 2 and orthogonal to
// span(v_i), we solve the tangency identity
//   Phi(theta0 + X(t)) = sum_i alpha_i(t) dX/dt_i
// order by order. At each multi-index m of degree k the unknowns w_m and
// alpha_m enter as J w_m + V alpha_m = [rhs]_m, which splits into the center
// part (solved for alpha_m through the Gram matrix of V) and the complement
// (solved for w_m with the pseudo-inverse of J restricted to its range).

#include <optional>
#include <string>
#include <vector>

#include "hadamard/jet.hpp"
#include "hadamard/phase_core.hpp"
#include "hadamard/spectral.hpp"

namespace hadamard {

template <class Real>
struct CMExpansion {
  BasicPhaseVector<Real> base;
  Mat<Real> basis;  // n x c, columns v_i
  int order = 0;
  std::shared_ptr<const JetSpace> space;
  std::vector<Vec<Real>> w;        // per monomial index, zero below degree 2
  std::vector<Vec<Real>> alpha;    // per monomial index, length c
  Real kernel_tol{};               // zero threshold used for the base spectrum

  int center_dim() const { return static_cast<int>(basis.cols()); }
  /// Coefficient of t^m in alpha_i (i is 0-based).
  const Real& alpha_coeff(int i, const Monomial& m) const { return alpha[space->index_of(m)](i); }
  const Vec<Real>& w_coeff(const Monomial& m) const { return w[space->index_of(m)]; }
};

/// Builds the expansion through total degree `order` (>= 2). Throws
/// PreconditionFailed when the base is not Hadamard, when the basis does not
/// span ker J within tolerance, or when J is singular off the kernel.
template <class Real>
CMExpansion<Real> expand(const BasicPhaseVector<Real>& base, const Mat<Real>& basis, int order,
                         std::optional<Real> tol = std::nullopt);

struct FlowHit {
  int order = 0;
  Monomial monomial;
  int component = 0;  // 0-based index i of alpha_i
  double value = 0;
  std::string value_text;  // full-precision decimal
};

struct FlowVerdict {
  bool flow_detected = false;
  std::optional<FlowHit> first_nonzero;  // lowest order, then monomial order
  std::vector<double> max_abs_by_order;  // index k = degree, entries 0 and 1 unused
};

/// Scans alpha coefficients by increasing degree for |coeff| > tol.
template <class Real>
FlowVerdict detect_flow(const CMExpansion<Real>& e, const Real& tol);

/// theta0 + sum t_i v_i + w(t), evaluated without reducing angles.
template <class Real>
BasicPhaseVector<Real> evaluate_embedding(const CMExpansion<Real>& e, const std::vector<Real>& t);

/// alpha(t) for each component.
template <class Real>
std::vector<Real> flow_rates(const CMExpansion<Real>& e, const std::vector<Real>& t);

/// Phi(X(t)) - sum_i alpha_i(t) dX/dt_i at a point; O(|t|^(K+1)).
template <class Real>
Vec<Real> tangency_residual(const CMExpansion<Real>& e, const std::vector<Real>& t);

}  // namespace hadamard
