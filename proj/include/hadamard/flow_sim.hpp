#pragma once

// Integration of the gradient flow d(theta)/dt = Phi(theta) for point clouds,
// with snapshots at fixed times and a PCA projection of each snapshot.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hadamard/phase_core.hpp"

namespace hadamard {

struct SimConfig {
  int n_points = 500;
  double radius = 0.3;  // half-width of the sampling box around the center
  std::uint64_t seed = 1;
  std::vector<double> times{5, 20, 70, 500};
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 1e-2;
  double min_step = 1e-12;
  double max_step = 10;
  unsigned threads = 0;  // 0: hardware concurrency
  int pca_components = 3;

  /// Throws InvalidInput on nonpositive counts, radius or tolerances, and on
  /// times that are not strictly increasing and positive.
  void validate() const;
};

/// Uniform samples from the box center + [-radius, radius]^n. Deterministic
/// in (seed, n_points).
template <class Real>
std::vector<BasicPhaseVector<Real>> sample_neighborhood(const BasicPhaseVector<Real>& center, const SimConfig& cfg);

struct PcaResult {
  Eigen::VectorXd mean;
  Eigen::MatrixXd basis;   // n x k, orthonormal columns
  Eigen::MatrixXd coords;  // points x k
  std::vector<double> variance;          // per component
  std::vector<double> explained_ratio;   // per component
  double total_variance = 0;
  bool degenerate = false;  // total variance ~ 0; ratios are then reported as 0
};

/// Principal components of the points (angles taken as given).
PcaResult pca_project(const std::vector<PhaseVector>& points, int components = 3);

template <class Real>
struct FlowSnapshot {
  double time = 0;
  std::vector<BasicPhaseVector<Real>> points;
  std::vector<double> potential;
  std::vector<double> log10_field;  // log10 ||Phi||, floored at -300
  PcaResult pca;
};

struct PointStatus {
  bool integrated = true;  // false after step-size underflow
  bool monotone = true;    // V nonincreasing across snapshots
  double failed_at = 0;
};

template <class Real>
struct FlowRun {
  std::vector<double> initial_potential;
  std::vector<FlowSnapshot<Real>> snapshots;
  std::vector<PointStatus> status;
  std::size_t monotonicity_violations = 0;
  std::size_t integration_failures = 0;
};

/// Dormand-Prince 5(4) with adaptive steps, points distributed over threads.
/// Results do not depend on the thread count.
template <class Real>
FlowRun<Real> integrate(const std::vector<BasicPhaseVector<Real>>& cloud, const SimConfig& cfg);

/// Single trajectory from t = 0 to `t_end`; returns false on step underflow.
template <class Real>
bool integrate_point(BasicPhaseVector<Real>& p, double t_end, const SimConfig& cfg, double* failed_at = nullptr);

/// CSV rows: t, point_id, theta_1..theta_n, log10_mag, pc1..pck.
template <class Real>
void write_snapshot_csv(std::ostream& os, const FlowSnapshot<Real>& snap, bool header);

template <class Real>
nlohmann::json flow_manifest(const FlowRun<Real>& run, const SimConfig& cfg);

/// Orthogonal distance from p to the line base + s * direction, with angle
/// differences wrapped into (-pi, pi].
double distance_to_line(const PhaseVector& p, const PhaseVector& base, const Eigen::VectorXd& direction);

}  // namespace hadamard
