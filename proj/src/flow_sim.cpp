#include "hadamard/flow_sim.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <thread>

namespace hadamard {

void SimConfig::validate() const {
  if (n_points < 1) throw InvalidInput("n_points must be positive");
  if (!(radius >= 0)) throw InvalidInput("radius must be non-negative");
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw InvalidInput("tolerances must be positive");
  if (!(min_step > 0) || !(max_step > min_step)) throw InvalidInput("need 0 < min_step < max_step");
  if (!(initial_step > 0)) throw InvalidInput("initial_step must be positive");
  if (times.empty()) throw InvalidInput("at least one snapshot time is required");
  double prev = 0;
  for (double t : times) {
    if (!(t > prev)) throw InvalidInput("snapshot times must be positive and strictly increasing");
    prev = t;
  }
  if (pca_components < 1) throw InvalidInput("pca_components must be positive");
}

template <class Real>
std::vector<BasicPhaseVector<Real>> sample_neighborhood(const BasicPhaseVector<Real>& center, const SimConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> offset(-cfg.radius, cfg.radius);
  std::vector<BasicPhaseVector<Real>> out;
  out.reserve(cfg.n_points);
  for (int k = 0; k < cfg.n_points; ++k) {
    BasicPhaseVector<Real> p = center;
    for (auto& x : p.theta) x += Real(offset(rng));
    out.push_back(std::move(p));
  }
  return out;
}

PcaResult pca_project(const std::vector<PhaseVector>& points, int components) {
  if (points.empty()) throw InvalidInput("PCA needs at least one point");
  const auto n = static_cast<Eigen::Index>(points.front().size());
  const auto count = static_cast<Eigen::Index>(points.size());
  if (components < 1 || components > n) throw InvalidInput("PCA component count out of range");

  Eigen::MatrixXd x(count, n);
  for (Eigen::Index i = 0; i < count; ++i) {
    if (static_cast<Eigen::Index>(points[i].size()) != n) throw InvalidInput("PCA points differ in dimension");
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = points[i].theta[j];
  }
  PcaResult r;
  r.mean = x.colwise().mean().transpose();
  x.rowwise() -= r.mean.transpose();
  const Eigen::MatrixXd cov = (x.transpose() * x) / std::max<double>(1.0, static_cast<double>(count - 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  const Eigen::VectorXd evals = solver.eigenvalues();  // ascending
  r.total_variance = std::max(0.0, evals.sum());
  r.basis.resize(n, components);
  for (int k = 0; k < components; ++k) {
    const Eigen::Index src = n - 1 - k;
    r.basis.col(k) = solver.eigenvectors().col(src);
    r.variance.push_back(std::max(0.0, evals(src)));
  }
  r.degenerate = !(r.total_variance > 1e-300);
  for (double v : r.variance) r.explained_ratio.push_back(r.degenerate ? 0.0 : v / r.total_variance);
  r.coords = x * r.basis;
  return r;
}

namespace {

template <class Real>
struct Tableau {
  Real a21, a31, a32, a41, a42, a43, a51, a52, a53, a54, a61, a62, a63, a64, a65;
  Real b1, b3, b4, b5, b6;
  Real e1, e3, e4, e5, e6, e7;

  Tableau() {
    auto q = [](int p, int d) { return Real(p) / Real(d); };
    a21 = q(1, 5);
    a31 = q(3, 40), a32 = q(9, 40);
    a41 = q(44, 45), a42 = q(-56, 15), a43 = q(32, 9);
    a51 = q(19372, 6561), a52 = q(-25360, 2187), a53 = q(64448, 6561), a54 = q(-212, 729);
    a61 = q(9017, 3168), a62 = q(-355, 33), a63 = q(46732, 5247), a64 = q(49, 176), a65 = q(-5103, 18656);
    b1 = q(35, 384), b3 = q(500, 1113), b4 = q(125, 192), b5 = q(-2187, 6784), b6 = q(11, 84);
    e1 = q(71, 57600), e3 = q(-71, 16695), e4 = q(71, 1920), e5 = q(-17253, 339200), e6 = q(22, 525),
    e7 = q(-1, 40);
  }
};

template <class Real>
Vec<Real> field_at(int d, const Vec<Real>& y) {
  BasicPhaseVector<Real> p{d, std::vector<Real>(y.data(), y.data() + y.size())};
  return gradient(p);
}

// Advances y from t0 to t1 in place; h carries the step size between calls.
template <class Real>
bool dopri_segment(int d, Vec<Real>& y, double t0, double t1, double& h, const SimConfig& cfg, double* failed_at) {
  const Tableau<Real> tb;
  const auto n = y.size();
  double t = t0;
  Vec<Real> k1 = field_at(d, y);
  Vec<Real> k2, k3, k4, k5, k6, k7, ynew, err(n);
  while (t < t1) {
    h = std::min(h, cfg.max_step);
    const bool last = t + h >= t1;
    const double step = last ? t1 - t : h;
    const Real hr(step);
    k2 = field_at(d, Vec<Real>(y + hr * (tb.a21 * k1)));
    k3 = field_at(d, Vec<Real>(y + hr * (tb.a31 * k1 + tb.a32 * k2)));
    k4 = field_at(d, Vec<Real>(y + hr * (tb.a41 * k1 + tb.a42 * k2 + tb.a43 * k3)));
    k5 = field_at(d, Vec<Real>(y + hr * (tb.a51 * k1 + tb.a52 * k2 + tb.a53 * k3 + tb.a54 * k4)));
    k6 = field_at(d, Vec<Real>(y + hr * (tb.a61 * k1 + tb.a62 * k2 + tb.a63 * k3 + tb.a64 * k4 + tb.a65 * k5)));
    ynew = y + hr * (tb.b1 * k1 + tb.b3 * k3 + tb.b4 * k4 + tb.b5 * k5 + tb.b6 * k6);
    k7 = field_at(d, ynew);
    err = hr * (tb.e1 * k1 + tb.e3 * k3 + tb.e4 * k4 + tb.e5 * k5 + tb.e6 * k6 + tb.e7 * k7);

    double norm = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(to_double(y(i))), std::abs(to_double(ynew(i))));
      const double e = to_double(err(i)) / sc;
      norm += e * e;
    }
    norm = std::sqrt(norm / static_cast<double>(n));

    if (norm <= 1.0) {
      t = last ? t1 : t + step;
      y = ynew;
      k1 = k7;
      const double grown = step * (norm == 0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0));
      // A step shortened to land on t1 says nothing about the next one.
      h = last ? std::max(h, grown) : grown;
    } else {
      h = step * std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 1.0);
      if (h < cfg.min_step) {
        if (failed_at) *failed_at = t;
        return false;
      }
    }
  }
  return true;
}

template <class Real>
Vec<Real> to_vec(const BasicPhaseVector<Real>& p) {
  Vec<Real> y(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) y(static_cast<Eigen::Index>(i)) = p.theta[i];
  return y;
}

template <class Real>
double log10_norm(const Vec<Real>& v) {
  const double m = to_double(v.norm());
  return m > 0 ? std::max(-300.0, std::log10(m)) : -300.0;
}

}  // namespace

template <class Real>
bool integrate_point(BasicPhaseVector<Real>& p, double t_end, const SimConfig& cfg, double* failed_at) {
  Vec<Real> y = to_vec(p);
  double h = cfg.initial_step;
  const bool ok = dopri_segment(p.d, y, 0.0, t_end, h, cfg, failed_at);
  for (std::size_t i = 0; i < p.size(); ++i) p.theta[i] = y(static_cast<Eigen::Index>(i));
  return ok;
}

template <class Real>
FlowRun<Real> integrate(const std::vector<BasicPhaseVector<Real>>& cloud, const SimConfig& cfg) {
  cfg.validate();
  FlowRun<Real> run;
  const std::size_t count = cloud.size();
  if (count == 0) return run;
  const int d = cloud.front().d;
  for (const auto& p : cloud)
    if (p.d != d) throw InvalidInput("all points of a cloud must have the same order");

  const std::size_t snaps = cfg.times.size();
  run.initial_potential.resize(count);
  run.status.resize(count);
  run.snapshots.resize(snaps);
  for (std::size_t s = 0; s < snaps; ++s) {
    run.snapshots[s].time = cfg.times[s];
    run.snapshots[s].points.resize(count);
    run.snapshots[s].potential.resize(count);
    run.snapshots[s].log10_field.resize(count);
  }

  // Noise floor for comparing potentials near zero: each Gram entry carries
  // roughly d * eps of rounding error.
  const double eps = to_double(epsilon<Real>());
  const double noise = 1e3 * std::pow(static_cast<double>(d), 4) * eps * eps;

  auto work = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      Vec<Real> y = to_vec(cloud[i]);
      double h = cfg.initial_step;
      double t = 0;
      double v_prev = to_double(potential(cloud[i]));
      run.initial_potential[i] = v_prev;
      auto& status = run.status[i];
      for (std::size_t s = 0; s < snaps; ++s) {
        if (status.integrated) {
          status.integrated = dopri_segment(d, y, t, cfg.times[s], h, cfg, &status.failed_at);
          t = cfg.times[s];
        }
        auto& snap = run.snapshots[s];
        snap.points[i] = BasicPhaseVector<Real>{d, std::vector<Real>(y.data(), y.data() + y.size())};
        const double v = to_double(potential(snap.points[i]));
        snap.potential[i] = v;
        snap.log10_field[i] = log10_norm(field_at(d, y));
        if (v > v_prev + 1e-12 * v_prev + noise) status.monotone = false;
        v_prev = v;
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t first = w * chunk;
      const std::size_t last = std::min(count, first + chunk);
      if (first < last) pool.emplace_back(work, first, last);
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& st : run.status) {
    if (!st.monotone) ++run.monotonicity_violations;
    if (!st.integrated) ++run.integration_failures;
  }
  const int comps = std::min<int>(cfg.pca_components, core_dimension(d));
  for (auto& snap : run.snapshots) {
    std::vector<PhaseVector> pts;
    pts.reserve(count);
    for (const auto& p : snap.points) pts.push_back(convert<double>(p));
    snap.pca = pca_project(pts, comps);
  }
  return run;
}

template <class Real>
void write_snapshot_csv(std::ostream& os, const FlowSnapshot<Real>& snap, bool header) {
  if (snap.points.empty()) return;
  const std::size_t n = snap.points.front().size();
  const auto comps = snap.pca.coords.cols();
  const int digits = std::is_same_v<Real, double> ? 17 : static_cast<int>(working_digits<Real>());
  if (header) {
    os << "t,point_id";
    for (std::size_t j = 0; j < n; ++j) os << ",theta_" << j + 1;
    os << ",log10_mag";
    for (Eigen::Index k = 0; k < comps; ++k) os << ",pc" << k + 1;
    os << '\n';
  }
  for (std::size_t i = 0; i < snap.points.size(); ++i) {
    os << format_real(snap.time, 17) << ',' << i;
    for (const auto& x : snap.points[i].theta) os << ',' << format_real(x, digits);
    os << ',' << format_real(snap.log10_field[i], 17);
    for (Eigen::Index k = 0; k < comps; ++k) os << ',' << format_real(snap.pca.coords(static_cast<Eigen::Index>(i), k), 17);
    os << '\n';
  }
}

template <class Real>
nlohmann::json flow_manifest(const FlowRun<Real>& run, const SimConfig& cfg) {
  nlohmann::json j;
  j["config"] = {{"n_points", cfg.n_points}, {"radius", cfg.radius},   {"seed", cfg.seed},
                 {"times", cfg.times},       {"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol}};
  j["monotonicity_violations"] = run.monotonicity_violations;
  j["integration_failures"] = run.integration_failures;
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& s : run.snapshots) {
    nlohmann::json basis = nlohmann::json::array();
    for (Eigen::Index k = 0; k < s.pca.basis.cols(); ++k) {
      std::vector<double> col(s.pca.basis.rows());
      for (Eigen::Index r = 0; r < s.pca.basis.rows(); ++r) col[r] = s.pca.basis(r, k);
      basis.push_back(col);
    }
    std::vector<double> mean(s.pca.mean.data(), s.pca.mean.data() + s.pca.mean.size());
    snaps.push_back({{"t", s.time},
                     {"pca_mean", mean},
                     {"pca_basis", basis},
                     {"explained_ratio", s.pca.explained_ratio},
                     {"degenerate", s.pca.degenerate},
                     {"max_potential", *std::max_element(s.potential.begin(), s.potential.end())}});
  }
  j["snapshots"] = snaps;
  return j;
}

double distance_to_line(const PhaseVector& p, const PhaseVector& base, const Eigen::VectorXd& direction) {
  if (p.size() != base.size() || static_cast<Eigen::Index>(p.size()) != direction.size())
    throw InvalidInput("distance_to_line: dimension mismatch");
  const double len = direction.norm();
  if (!(len > 0)) throw InvalidInput("distance_to_line: zero direction");
  Eigen::VectorXd diff(direction.size());
  for (std::size_t i = 0; i < p.size(); ++i) diff(static_cast<Eigen::Index>(i)) = wrap_difference(p.theta[i] - base.theta[i]);
  const Eigen::VectorXd u = direction / len;
  return (diff - diff.dot(u) * u).norm();
}

#define HADAMARD_INSTANTIATE(R)                                                                                \
  template std::vector<BasicPhaseVector<R>> sample_neighborhood(const BasicPhaseVector<R>&, const SimConfig&); \
  template bool integrate_point(BasicPhaseVector<R>&, double, const SimConfig&, double*);                      \
  template FlowRun<R> integrate(const std::vector<BasicPhaseVector<R>>&, const SimConfig&);                    \
  template void write_snapshot_csv(std::ostream&, const FlowSnapshot<R>&, bool);                               \
  template nlohmann::json flow_manifest(const FlowRun<R>&, const SimConfig&);

HADAMARD_INSTANTIATE(double)
HADAMARD_INSTANTIATE(BigReal)

#undef HADAMARD_INSTANTIATE

}  // namespace hadamard
