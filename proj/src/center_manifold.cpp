#include "hadamard/center_manifold.hpp"

#include <Eigen/LU>

#include <sstream>

namespace hadamard {

namespace {

template <class Real>
std::vector<Real> monomial_values(const JetSpace& space, const std::vector<Real>& t) {
  std::vector<Real> out(space.size());
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    Real v(1);
    const auto& m = space.monomial(idx);
    for (std::size_t var = 0; var < m.size(); ++var)
      for (int e = 0; e < m[var]; ++e) v *= t[var];
    out[idx] = v;
  }
  return out;
}

template <class Real>
void check_point(const CMExpansion<Real>& e, const std::vector<Real>& t) {
  if (static_cast<int>(t.size()) != e.center_dim())
    throw InvalidInput("expected " + std::to_string(e.center_dim()) + " center coordinates, got " +
                       std::to_string(t.size()));
}

}  // namespace

template <class Real>
CMExpansion<Real> expand(const BasicPhaseVector<Real>& base, const Mat<Real>& basis, int order,
                         std::optional<Real> tol) {
  using std::abs;
  const auto n = static_cast<Eigen::Index>(base.size());
  if (order < 2) throw InvalidInput("expansion order must be at least 2");
  if (basis.rows() != n) throw InvalidInput("basis vectors must have length (d-1)^2");
  if (basis.cols() < 1) throw InvalidInput("basis must have at least one vector");

  const Real v0 = potential(base);
  const Real hadamard_tol = tol ? *tol : default_zero_tolerance(Real(1));
  if (!(v0 < hadamard_tol)) throw PreconditionFailed("base point is not Hadamard (potential " + format_real(v0, 6) + ")");

  const Mat<Real> jac = jacobian(base);
  const auto spec = spectrum(jac, tol);
  const int c = static_cast<int>(basis.cols());
  if (spec.center_dim != c) {
    std::ostringstream os;
    os << "basis has " << c << " vectors but the center subspace has dimension " << spec.center_dim;
    throw PreconditionFailed(os.str());
  }
  for (int i = 0; i < c; ++i) {
    const Real resid = (jac * basis.col(i)).norm();
    if (resid > spec.tol * basis.col(i).norm())
      throw PreconditionFailed("basis vector " + std::to_string(i + 1) + " is not in the kernel of D(Phi) (|Jv| = " +
                               format_real(resid, 6) + ")");
  }
  const Mat<Real> gram = basis.transpose() * basis;
  Eigen::FullPivLU<Mat<Real>> lu(gram);
  lu.setThreshold(spec.tol);
  if (lu.rank() != c) throw PreconditionFailed("basis vectors are linearly dependent");
  const Mat<Real> gram_inv = lu.inverse();

  // Pseudo-inverse of J on the complement of its kernel.
  Mat<Real> jplus = Mat<Real>::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Real lam = spec.eigenvalues(k);
    if (abs(lam) < spec.tol) continue;
    jplus += (spec.eigenvectors.col(k) / lam) * spec.eigenvectors.col(k).transpose();
  }

  CMExpansion<Real> e;
  e.base = base;
  e.basis = basis;
  e.order = order;
  e.kernel_tol = spec.tol;
  e.space = std::make_shared<const JetSpace>(c, order);
  const auto& space = e.space;
  e.w.assign(space->size(), Vec<Real>::Zero(n));
  e.alpha.assign(space->size(), Vec<Real>::Zero(c));

  using J = Jet<Real>;
  const J zero(space);
  const J one = J::constant(space, Real(1));
  std::vector<J> x;
  x.reserve(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    J xr = J::constant(space, base.theta[r]);
    for (int i = 0; i < c; ++i)
      if (basis(r, i) != 0) xr += J::variable(space, i) * basis(r, i);
    x.push_back(std::move(xr));
  }
  std::vector<J> alpha(c, zero);

  std::vector<J> cos_x(n, zero);
  std::vector<J> sin_x(n, zero);
  for (int k = 2; k <= order; ++k) {
    for (Eigen::Index r = 0; r < n; ++r) {
      auto [cr, sr] = cos_sin(x[r]);
      cos_x[r] = std::move(cr);
      sin_x[r] = std::move(sr);
    }
    const std::vector<J> field = field_from_trig(base.d, cos_x, sin_x, zero, one);

    std::vector<J> drift(n, zero);
    if (k > 2) {
      for (int i = 0; i < c; ++i)
        for (Eigen::Index r = 0; r < n; ++r) drift[r] += alpha[i] * x[r].derivative(i);
    }

    auto [first, last] = space->degree_range(k);
    Vec<Real> rhs(n);
    for (std::size_t idx = first; idx < last; ++idx) {
      for (Eigen::Index r = 0; r < n; ++r) rhs(r) = field[r][idx] - drift[r][idx];
      const Vec<Real> a = gram_inv * (basis.transpose() * rhs);
      const Vec<Real> w = -(jplus * (rhs - basis * a));
      e.alpha[idx] = a;
      e.w[idx] = w;
      for (int i = 0; i < c; ++i) alpha[i][idx] = a(i);
      for (Eigen::Index r = 0; r < n; ++r) x[r][idx] = w(r);
    }
  }
  return e;
}

template <class Real>
FlowVerdict detect_flow(const CMExpansion<Real>& e, const Real& tol) {
  using std::abs;
  FlowVerdict v;
  v.max_abs_by_order.assign(e.order + 1, 0.0);
  for (int k = 2; k <= e.order; ++k) {
    Real max_abs(0);
    auto [first, last] = e.space->degree_range(k);
    for (std::size_t idx = first; idx < last; ++idx) {
      for (int i = 0; i < e.center_dim(); ++i) {
        const Real& a = e.alpha[idx](i);
        if (abs(a) > max_abs) max_abs = abs(a);
        if (!v.first_nonzero && abs(a) > tol) {
          v.first_nonzero = FlowHit{k, e.space->monomial(idx), i, to_double(a), format_real(a, working_digits<Real>())};
        }
      }
    }
    v.max_abs_by_order[k] = to_double(max_abs);
  }
  v.flow_detected = v.first_nonzero.has_value();
  return v;
}

template <class Real>
BasicPhaseVector<Real> evaluate_embedding(const CMExpansion<Real>& e, const std::vector<Real>& t) {
  check_point(e, t);
  const auto mono = monomial_values(*e.space, t);
  BasicPhaseVector<Real> out = e.base;
  for (std::size_t r = 0; r < out.theta.size(); ++r) {
    Real acc = out.theta[r];
    for (int i = 0; i < e.center_dim(); ++i) acc += e.basis(r, i) * t[i];
    for (std::size_t idx = 0; idx < mono.size(); ++idx)
      if (e.space->degree(idx) >= 2) acc += e.w[idx](r) * mono[idx];
    out.theta[r] = acc;
  }
  return out;
}

template <class Real>
std::vector<Real> flow_rates(const CMExpansion<Real>& e, const std::vector<Real>& t) {
  check_point(e, t);
  const auto mono = monomial_values(*e.space, t);
  std::vector<Real> out(e.center_dim(), Real(0));
  for (std::size_t idx = 0; idx < mono.size(); ++idx)
    for (int i = 0; i < e.center_dim(); ++i) out[i] += e.alpha[idx](i) * mono[idx];
  return out;
}

template <class Real>
Vec<Real> tangency_residual(const CMExpansion<Real>& e, const std::vector<Real>& t) {
  check_point(e, t);
  const auto point = evaluate_embedding(e, t);
  Vec<Real> res = gradient(point);
  const auto rates = flow_rates(e, t);
  const auto mono = monomial_values(*e.space, t);
  for (int i = 0; i < e.center_dim(); ++i) {
    // dX/dt_i = v_i + sum_m w_m * d(t^m)/dt_i
    Vec<Real> tangent = e.basis.col(i);
    for (const auto& term : e.space->derivative_terms(i)) {
      if (e.space->degree(term.src) < 2) continue;
      tangent += e.w[term.src] * (mono[term.dst] * term.factor);
    }
    res -= tangent * rates[i];
  }
  return res;
}

#define HADAMARD_INSTANTIATE(R)                                                                            \
  template CMExpansion<R> expand(const BasicPhaseVector<R>&, const Mat<R>&, int, std::optional<R>);       \
  template FlowVerdict detect_flow(const CMExpansion<R>&, const R&);                                        \
  template BasicPhaseVector<R> evaluate_embedding(const CMExpansion<R>&, const std::vector<R>&);           \
  template std::vector<R> flow_rates(const CMExpansion<R>&, const std::vector<R>&);                         \
  template Vec<R> tangency_residual(const CMExpansion<R>&, const std::vector<R>&);

HADAMARD_INSTANTIATE(double)
HADAMARD_INSTANTIATE(BigReal)

#undef HADAMARD_INSTANTIATE

}  // namespace hadamard
