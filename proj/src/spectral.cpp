#include "hadamard/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <sstream>

namespace hadamard {

template <class Real>
Real default_zero_tolerance(const Real& spectral_radius) {
  if constexpr (std::is_same_v<Real, double>) {
    return 1e-9 * std::max(spectral_radius, 1.0);
  } else {
    using std::pow;
    (void)spectral_radius;
    return pow(Real(10), -Real(static_cast<int>(working_digits<Real>() / 2)));
  }
}

template <class Real>
SpectralData<Real> spectrum(const Mat<Real>& jac, std::optional<Real> tol) {
  using std::abs;
  if (jac.rows() != jac.cols()) throw InvalidInput("spectrum needs a square matrix");
  const Real scale = jac.cwiseAbs().maxCoeff();
  const Real asym = (jac - jac.transpose()).cwiseAbs().maxCoeff();
  if (asym > 100 * epsilon<Real>() * (scale + 1)) throw InvalidInput("spectrum needs a symmetric matrix");

  Eigen::SelfAdjointEigenSolver<Mat<Real>> solver(jac);
  if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");

  SpectralData<Real> out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  const Eigen::Index n = out.eigenvalues.size();
  Real radius(0);
  for (Eigen::Index k = 0; k < n; ++k) radius = std::max<Real>(radius, abs(out.eigenvalues(k)));
  out.tol = tol ? *tol : default_zero_tolerance(radius);

  std::vector<Eigen::Index> center;
  for (Eigen::Index k = 0; k < n; ++k)
    if (abs(out.eigenvalues(k)) < out.tol) center.push_back(k);
  out.center_dim = static_cast<int>(center.size());
  out.center_basis.resize(n, out.center_dim);
  for (int c = 0; c < out.center_dim; ++c) out.center_basis.col(c) = out.eigenvectors.col(center[c]);

  out.max_residual = Real(0);
  for (Eigen::Index k = 0; k < n; ++k) {
    Real r = (jac * out.eigenvectors.col(k) - out.eigenvalues(k) * out.eigenvectors.col(k)).norm();
    if (r > out.max_residual) out.max_residual = r;
  }
  return out;
}

std::string to_string(DefectMethod m) {
  switch (m) {
    case DefectMethod::flow_kernel:
      return "flow";
    case DefectMethod::linear_system:
      return "linsys";
    case DefectMethod::both:
      return "both";
  }
  return "?";
}

DefectMethod parse_defect_method(const std::string& text) {
  if (text == "flow" || text == "flow-kernel") return DefectMethod::flow_kernel;
  if (text == "linsys" || text == "linear-system") return DefectMethod::linear_system;
  if (text == "both") return DefectMethod::both;
  throw InvalidInput("unknown defect method '" + text + "' (expected flow, linsys or both)");
}

namespace {

template <class Real>
Real hadamard_tolerance(std::optional<Real> tol) {
  if (tol) return *tol;
  return default_zero_tolerance(Real(1));
}

template <class Real>
Real gram_potential(const ComplexMatrix<Real>& h) {
  const int d = h.order();
  Real v(0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      Real re(0);
      Real im(0);
      for (int k = 0; k < d; ++k) {
        re += h.re(i, k) * h.re(j, k) + h.im(i, k) * h.im(j, k);
        im += h.im(i, k) * h.re(j, k) - h.re(i, k) * h.im(j, k);
      }
      v += re * re + im * im;
    }
  }
  return v;
}

}  // namespace

template <class Real>
DefectReport defect_flow(const BasicPhaseVector<Real>& p, std::optional<Real> tol) {
  const Real v = potential(p);
  if (!(v < hadamard_tolerance(tol))) {
    throw PreconditionFailed("point is not Hadamard (potential " + format_real(v, 6) +
                             "); the flow kernel only measures the defect at fixed points");
  }
  const auto spec = spectrum(jacobian(p), tol);
  DefectReport r;
  r.defect = spec.center_dim;
  r.method = DefectMethod::flow_kernel;
  r.flow_kernel = spec.center_dim;
  return r;
}

template <class Real>
Mat<Real> linearized_conditions(const ComplexMatrix<Real>& h) {
  const int d = h.order();
  const int unknowns = d * d;
  const int rows = d * d + d - 1;
  Mat<Real> a = Mat<Real>::Zero(rows, unknowns);
  auto var = [d](int r, int c) { return r * d + c; };
  int row = 0;
  for (int i = 0; i < d; ++i) a(row++, var(i, 0)) = Real(1);
  for (int j = 1; j < d; ++j) a(row++, var(0, j)) = Real(1);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        // z = H_ik conj(H_jk)
        const Real re = h.re(i, k) * h.re(j, k) + h.im(i, k) * h.im(j, k);
        const Real im = h.im(i, k) * h.re(j, k) - h.re(i, k) * h.im(j, k);
        a(row, var(i, k)) += re;
        a(row, var(j, k)) -= re;
        a(row + 1, var(i, k)) += im;
        a(row + 1, var(j, k)) -= im;
      }
      row += 2;
    }
  }
  return a;
}

template <class Real>
DefectReport defect_linear_system(const ComplexMatrix<Real>& h, std::optional<Real> tol) {
  const Real v = gram_potential(h);
  if (!(v < hadamard_tolerance(tol))) {
    throw PreconditionFailed("matrix is not Hadamard (off-diagonal Gram mass " + format_real(v, 6) + ")");
  }
  const Mat<Real> a = linearized_conditions(h);
  Eigen::JacobiSVD<Mat<Real>> svd(a);
  const Vec<Real> sv = svd.singularValues();
  const Real largest = sv.size() > 0 ? sv(0) : Real(0);
  Real threshold;
  if (tol) {
    threshold = *tol * largest;
  } else if constexpr (std::is_same_v<Real, double>) {
    threshold = default_zero_tolerance(largest);
  } else {
    threshold = default_zero_tolerance(largest) * largest;
  }
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > threshold) ++rank;

  DefectReport r;
  r.defect = static_cast<int>(a.cols()) - rank;
  r.method = DefectMethod::linear_system;
  r.linear_system = r.defect;
  return r;
}

template <class Real>
DefectReport cross_check_defect(const BasicPhaseVector<Real>& p, std::optional<Real> tol) {
  const auto flow = defect_flow(p, tol);
  const auto lin = defect_linear_system(build_matrix(p), tol);
  DefectReport r;
  r.method = DefectMethod::both;
  r.flow_kernel = flow.defect;
  r.linear_system = lin.defect;
  r.defect = flow.defect;
  r.agreement = flow.defect == lin.defect;
  if (!r.agreement) {
    std::ostringstream os;
    os << "defect mismatch: flow kernel " << flow.defect << " vs linear system " << lin.defect
       << "; the zero threshold is likely misconfigured for this precision";
    r.diagnostic = os.str();
  }
  return r;
}

#define HADAMARD_INSTANTIATE(R)                                                              \
  template R default_zero_tolerance(const R&);                                               \
  template SpectralData<R> spectrum(const Mat<R>&, std::optional<R>);                        \
  template DefectReport defect_flow(const BasicPhaseVector<R>&, std::optional<R>);           \
  template Mat<R> linearized_conditions(const ComplexMatrix<R>&);                            \
  template DefectReport defect_linear_system(const ComplexMatrix<R>&, std::optional<R>);     \
  template DefectReport cross_check_defect(const BasicPhaseVector<R>&, std::optional<R>);

HADAMARD_INSTANTIATE(double)
HADAMARD_INSTANTIATE(BigReal)

#undef HADAMARD_INSTANTIATE

}  // namespace hadamard
