#include "hadamard/phase_core.hpp"

#include <algorithm>
#include <cmath>

#include "hadamard/detail/complex.hpp"

namespace hadamard {

using detail::Cx;

int order_from_core_dimension(std::size_t n) {
  int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (m < 1 || static_cast<std::size_t>(m) * m != n) {
    throw InvalidInput("core length " + std::to_string(n) + " is not a positive square");
  }
  return m + 1;
}

template <class Real>
BasicPhaseVector<Real> BasicPhaseVector<Real>::make(int d, std::vector<Real> theta) {
  if (d < 2) throw InvalidInput("matrix order must be >= 2, got " + std::to_string(d));
  if (theta.size() != static_cast<std::size_t>(core_dimension(d))) {
    throw InvalidInput("order " + std::to_string(d) + " needs " + std::to_string(core_dimension(d)) +
                       " phases, got " + std::to_string(theta.size()));
  }
  return {d, std::move(theta)};
}

template <class Real>
BasicPhaseVector<Real> BasicPhaseVector<Real>::normalized() const {
  BasicPhaseVector out = *this;
  for (auto& x : out.theta) x = wrap_angle(x);
  return out;
}

namespace {

template <class Real>
std::vector<Cx<Real>> full_entries(const BasicPhaseVector<Real>& p) {
  const int d = p.d;
  std::vector<Cx<Real>> h(static_cast<std::size_t>(d) * d, Cx<Real>{Real(1), Real(0)});
  for (int r = 1; r < d; ++r)
    for (int c = 1; c < d; ++c) h[r * d + c] = Cx<Real>::polar(p.core(r - 1, c - 1));
  return h;
}

// G = H H^*
template <class Real>
std::vector<Cx<Real>> gram(const std::vector<Cx<Real>>& h, int d) {
  std::vector<Cx<Real>> g(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Cx<Real> acc{};
      for (int k = 0; k < d; ++k) acc += h[i * d + k] * h[j * d + k].conj();
      g[i * d + j] = acc;
    }
  }
  return g;
}

template <class Real>
void split_trig(const BasicPhaseVector<Real>& p, std::vector<Real>& c, std::vector<Real>& s) {
  using std::cos;
  using std::sin;
  c.resize(p.size());
  s.resize(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    c[k] = cos(p.theta[k]);
    s[k] = sin(p.theta[k]);
  }
}

}  // namespace

template <class Real>
ComplexMatrix<Real> build_matrix(const BasicPhaseVector<Real>& p) {
  const int d = p.d;
  ComplexMatrix<Real> m{Mat<Real>::Ones(d, d), Mat<Real>::Zero(d, d)};
  const auto h = full_entries(p);
  for (int r = 1; r < d; ++r) {
    for (int c = 1; c < d; ++c) {
      m.re(r, c) = h[r * d + c].re;
      m.im(r, c) = h[r * d + c].im;
    }
  }
  return m;
}

template <class Real>
Real unitarity_defect(const ComplexMatrix<Real>& h) {
  using std::sqrt;
  const int d = h.order();
  Real worst(0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Real re(0);
      Real im(0);
      for (int k = 0; k < d; ++k) {
        re += h.re(i, k) * h.re(j, k) + h.im(i, k) * h.im(j, k);
        im += h.im(i, k) * h.re(j, k) - h.re(i, k) * h.im(j, k);
      }
      if (i == j) re -= d;
      Real mag = sqrt(re * re + im * im);
      if (mag > worst) worst = mag;
    }
  }
  return worst;
}

template <class Real>
Real potential(const BasicPhaseVector<Real>& p) {
  const int d = p.d;
  const auto g = gram(full_entries(p), d);
  Real v(0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) v += g[i * d + j].norm2();
  return v;
}

template <class Real>
Vec<Real> gradient(const BasicPhaseVector<Real>& p) {
  std::vector<Real> c;
  std::vector<Real> s;
  split_trig(p, c, s);
  const auto field = field_from_trig<Real>(p.d, c, s, Real(0), Real(1));
  Vec<Real> out(static_cast<Eigen::Index>(field.size()));
  for (std::size_t k = 0; k < field.size(); ++k) out(static_cast<Eigen::Index>(k)) = field[k];
  return out;
}

// Differentiating Phi_ab = 4 Im(h_ab conj(M_ab)), M = H H^* H, in theta_ce:
//   J = 4 [ delta Re(h_ab conj M_ab) - delta_ac Re(h_ab conj(h_ce) conj(K_eb))
//         + Re(h_ab h_ce conj(h_ae) conj(h_cb)) - delta_be Re(h_ab conj(G_ac) conj(h_ce)) ]
// with G = H H^*, K = H^* H.
template <class Real>
Mat<Real> jacobian(const BasicPhaseVector<Real>& p) {
  const int d = p.d;
  const int n = d - 1;
  const auto h = full_entries(p);
  const auto g = gram(h, d);

  std::vector<Cx<Real>> k(static_cast<std::size_t>(d) * d);
  for (int e = 0; e < d; ++e) {
    for (int b = 0; b < d; ++b) {
      Cx<Real> acc{};
      for (int x = 0; x < d; ++x) acc += h[x * d + e].conj() * h[x * d + b];
      k[e * d + b] = acc;
    }
  }
  std::vector<Cx<Real>> m(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Cx<Real> acc{};
      for (int j = 0; j < d; ++j) acc += g[a * d + j] * h[j * d + b];
      m[a * d + b] = acc;
    }
  }

  const int size = n * n;
  Mat<Real> jac(size, size);
  for (int pi_ = 0; pi_ < size; ++pi_) {
    const int a = pi_ / n + 1;
    const int b = pi_ % n + 1;
    const Cx<Real>& hab = h[a * d + b];
    for (int qi = pi_; qi < size; ++qi) {
      const int c = qi / n + 1;
      const int e = qi % n + 1;
      const Cx<Real>& hce = h[c * d + e];
      Real val = (hab * hce * h[a * d + e].conj() * h[c * d + b].conj()).re;
      if (pi_ == qi) val += (hab * m[a * d + b].conj()).re;
      if (a == c) val -= (hab * hce.conj() * k[e * d + b].conj()).re;
      if (b == e) val -= (hab * g[a * d + c].conj() * hce.conj()).re;
      val *= 4;
      jac(pi_, qi) = val;
      jac(qi, pi_) = val;
    }
  }
  return jac;
}

namespace {

void check_permutation(int d, std::span<const int> perm, const char* what) {
  if (static_cast<int>(perm.size()) != d) {
    throw InvalidInput(std::string(what) + " permutation must have length " + std::to_string(d));
  }
  std::vector<bool> seen(d, false);
  for (int v : perm) {
    if (v < 0 || v >= d || seen[v]) throw InvalidInput(std::string(what) + " is not a permutation");
    seen[v] = true;
  }
  if (perm[0] != 0) throw InvalidInput(std::string(what) + " permutation moves the first index");
}

}  // namespace

std::vector<int> core_permutation(int d, std::span<const int> row_perm, std::span<const int> col_perm) {
  check_permutation(d, row_perm, "row");
  check_permutation(d, col_perm, "column");
  const int n = d - 1;
  std::vector<int> src(static_cast<std::size_t>(n) * n);
  for (int r = 1; r < d; ++r)
    for (int c = 1; c < d; ++c) src[(r - 1) * n + (c - 1)] = (row_perm[r] - 1) * n + (col_perm[c] - 1);
  return src;
}

template <class Real>
BasicPhaseVector<Real> permute_core(const BasicPhaseVector<Real>& p, std::span<const int> row_perm,
                                    std::span<const int> col_perm) {
  const auto src = core_permutation(p.d, row_perm, col_perm);
  BasicPhaseVector<Real> out = p;
  for (std::size_t k = 0; k < src.size(); ++k) out.theta[k] = p.theta[src[k]];
  return out;
}

#define HADAMARD_INSTANTIATE(R)                                                                        \
  template struct BasicPhaseVector<R>;                                                                 \
  template ComplexMatrix<R> build_matrix(const BasicPhaseVector<R>&);                                  \
  template R unitarity_defect(const ComplexMatrix<R>&);                                                \
  template R potential(const BasicPhaseVector<R>&);                                                    \
  template Vec<R> gradient(const BasicPhaseVector<R>&);                                                \
  template Mat<R> jacobian(const BasicPhaseVector<R>&);                                                \
  template BasicPhaseVector<R> permute_core(const BasicPhaseVector<R>&, std::span<const int>, \
                                            std::span<const int>);

HADAMARD_INSTANTIATE(double)
HADAMARD_INSTANTIATE(BigReal)

#undef HADAMARD_INSTANTIATE

}  // namespace hadamard
