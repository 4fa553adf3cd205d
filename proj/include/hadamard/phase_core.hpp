#pragma once

// Torus coordinates of dephased matrices and the Hadamard potential.
//
// A dephased d x d matrix has ones in its first row and column. The remaining
// (d-1)^2 entries, the core, are exp(i*theta_k) with k running row-major over
// the core: core entry (r, c) (0-based) is theta[r*(d-1) + c].
//
// potential(theta) = sum_{i != j} |[H H^*]_{ij}|^2 vanishes exactly on
// Hadamard matrices. gradient() returns the flow field -grad V in closed form:
// with G = H H^* and M = G H, the field at core entry (a, b) is
// 4 * Im(h_ab * conj(M_ab)).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hadamard/errors.hpp"
#include "hadamard/precision.hpp"

namespace hadamard {

/// A point of the (d-1)^2-torus: the core phases of a dephased matrix.
template <class Real>
struct BasicPhaseVector {
  int d = 2;
  std::vector<Real> theta;

  /// Validates d >= 2 and theta.size() == (d-1)^2.
  static BasicPhaseVector make(int d, std::vector<Real> theta);

  std::size_t size() const { return theta.size(); }
  const Real& core(int row, int col) const { return theta[row * (d - 1) + col]; }
  Real& core(int row, int col) { return theta[row * (d - 1) + col]; }

  /// Copy with every angle reduced to [0, 2*pi).
  BasicPhaseVector normalized() const;
};

using PhaseVector = BasicPhaseVector<double>;
using BigPhaseVector = BasicPhaseVector<BigReal>;

inline int core_dimension(int d) { return (d - 1) * (d - 1); }

/// Order d with (d-1)^2 == n; throws InvalidInput if n is not a square.
int order_from_core_dimension(std::size_t n);

template <class To, class From>
BasicPhaseVector<To> convert(const BasicPhaseVector<From>& p) {
  std::vector<To> theta;
  theta.reserve(p.theta.size());
  for (const auto& x : p.theta) theta.emplace_back(To(x));
  return {p.d, std::move(theta)};
}

/// d x d complex matrix stored as separate real and imaginary parts.
template <class Real>
struct ComplexMatrix {
  Mat<Real> re;
  Mat<Real> im;

  int order() const { return static_cast<int>(re.rows()); }
};

template <class Real>
ComplexMatrix<Real> build_matrix(const BasicPhaseVector<Real>& p);

/// max_{ij} |[H H^*]_{ij} - d * delta_ij|.
template <class Real>
Real unitarity_defect(const ComplexMatrix<Real>& h);

template <class Real>
Real potential(const BasicPhaseVector<Real>& p);

template <class Real>
Vec<Real> gradient(const BasicPhaseVector<Real>& p);

/// D(Phi) at p; symmetric by construction (upper triangle mirrored).
template <class Real>
Mat<Real> jacobian(const BasicPhaseVector<Real>& p);

/// Phases theta' with H(theta') = P_r H(theta) P_c, where
/// (P_r H P_c)_{r,c} = H_{row_perm[r], col_perm[c]}. Permutations are 0-based
/// over {0..d-1} and must fix 0 so the result stays dephased.
template <class Real>
BasicPhaseVector<Real> permute_core(const BasicPhaseVector<Real>& p, std::span<const int> row_perm,
                                    std::span<const int> col_perm);

/// The coordinate map induced by permute_core: result[k] is the source index
/// of new coordinate k.
std::vector<int> core_permutation(int d, std::span<const int> row_perm, std::span<const int> col_perm);

/// Flow field evaluated over any commutative ring T (reals or truncated
/// power series). `cos_core` and `sin_core` hold cos/sin of the core phases.
/// Returns the (d-1)^2 field components.
template <class T>
std::vector<T> field_from_trig(int d, const std::vector<T>& cos_core, const std::vector<T>& sin_core,
                               const T& zero, const T& one) {
  const int n = d - 1;
  const std::size_t dd = static_cast<std::size_t>(d) * d;
  std::vector<T> c(dd, one);
  std::vector<T> s(dd, zero);
  for (int r = 1; r < d; ++r) {
    for (int k = 1; k < d; ++k) {
      c[r * d + k] = cos_core[(r - 1) * n + (k - 1)];
      s[r * d + k] = sin_core[(r - 1) * n + (k - 1)];
    }
  }

  // G = H H^* is Hermitian with constant diagonal d.
  std::vector<T> g_re(dd, zero);
  std::vector<T> g_im(dd, zero);
  for (int i = 0; i < d; ++i) {
    g_re[i * d + i] = one * d;
    for (int j = i + 1; j < d; ++j) {
      T re = zero;
      T im = zero;
      for (int k = 0; k < d; ++k) {
        re = re + c[i * d + k] * c[j * d + k] + s[i * d + k] * s[j * d + k];
        im = im + s[i * d + k] * c[j * d + k] - c[i * d + k] * s[j * d + k];
      }
      g_re[i * d + j] = re;
      g_re[j * d + i] = re;
      g_im[j * d + i] = zero - im;
      g_im[i * d + j] = std::move(im);
    }
  }

  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 1; a < d; ++a) {
    for (int b = 1; b < d; ++b) {
      // M = G H at (a, b)
      T m_re = zero;
      T m_im = zero;
      for (int j = 0; j < d; ++j) {
        m_re = m_re + g_re[a * d + j] * c[j * d + b] - g_im[a * d + j] * s[j * d + b];
        m_im = m_im + g_re[a * d + j] * s[j * d + b] + g_im[a * d + j] * c[j * d + b];
      }
      // Im(h * conj(M)) = s * Re(M) - c * Im(M)
      out.push_back((s[a * d + b] * m_re - c[a * d + b] * m_im) * 4);
    }
  }
  return out;
}

}  // namespace hadamard
