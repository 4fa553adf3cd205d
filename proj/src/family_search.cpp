#include "hadamard/family_search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace hadamard {

void lll_reduce(std::vector<IntVector>& b, double delta) {
  const std::size_t k_count = b.size();
  if (k_count < 2) return;
  const std::size_t n = b.front().size();
  using LD = long double;
  std::vector<std::vector<LD>> bstar(k_count, std::vector<LD>(n));
  std::vector<std::vector<LD>> mu(k_count, std::vector<LD>(k_count, 0));
  std::vector<LD> norms(k_count);

  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < k_count; ++i) {
      for (std::size_t j = 0; j < n; ++j) bstar[i][j] = static_cast<LD>(b[i][j]);
      for (std::size_t k = 0; k < i; ++k) {
        LD dot = 0;
        for (std::size_t j = 0; j < n; ++j) dot += static_cast<LD>(b[i][j]) * bstar[k][j];
        mu[i][k] = norms[k] > 0 ? dot / norms[k] : 0;
        for (std::size_t j = 0; j < n; ++j) bstar[i][j] -= mu[i][k] * bstar[k][j];
      }
      norms[i] = 0;
      for (std::size_t j = 0; j < n; ++j) norms[i] += bstar[i][j] * bstar[i][j];
    }
  };

  gram_schmidt();
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < k_count) {
    if (++guard > 1'000'000) throw LimitExceeded("LLL did not terminate");
    for (std::size_t jj = k; jj-- > 0;) {
      const LD q = std::round(mu[k][jj]);
      if (q != 0) {
        const auto qi = static_cast<std::int64_t>(q);
        for (std::size_t t = 0; t < n; ++t) b[k][t] -= qi * b[jj][t];
        gram_schmidt();
      }
    }
    if (norms[k] >= (static_cast<LD>(delta) - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

namespace {

// Best rational approximation p/q with q <= max_den via continued fractions;
// empty when none is within tol.
template <class Real>
std::optional<Rational> rationalize(const Real& x, const Real& tol, std::int64_t max_den) {
  using std::abs;
  using std::floor;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const Real fl = floor(rest);
    if (abs(fl) > Real(1e15)) return std::nullopt;
    const auto a = static_cast<std::int64_t>(to_double(fl));
    const __int128 p2 = static_cast<__int128>(a) * p1 + p0;
    const __int128 q2 = static_cast<__int128>(a) * q1 + q0;
    if (q2 > max_den || p2 > INT64_MAX || p2 < -INT64_MAX) return std::nullopt;
    p0 = p1, q0 = q1;
    p1 = static_cast<std::int64_t>(p2), q1 = static_cast<std::int64_t>(q2);
    if (abs(x - Real(p1) / Real(q1)) < tol) return Rational(p1, q1);
    const Real frac = rest - fl;
    if (frac == 0) break;
    rest = Real(1) / frac;
  }
  return std::nullopt;
}

template <class Real>
Real rational_tolerance() {
  using std::pow;
  if constexpr (std::is_same_v<Real, double>) {
    return 1e-8;
  } else {
    return pow(Real(10), -Real(static_cast<int>(working_digits<Real>() / 3)));
  }
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > 1'000'000'000) throw LimitExceeded("denominator too large while integerizing");
  return static_cast<std::int64_t>(l);
}

}  // namespace

template <class Real>
IntegerKernelBasis integer_kernel_basis(const Mat<Real>& jac, int height_bound, std::optional<Real> tol) {
  using std::abs;
  if (height_bound < 1) throw InvalidInput("height bound must be positive");
  const auto spec = spectrum(jac, tol);
  const auto n = jac.rows();
  const int c = spec.center_dim;

  IntegerKernelBasis out;
  out.numeric.resize(n, c);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int k = 0; k < c; ++k) out.numeric(i, k) = to_double(spec.center_basis(i, k));
  if (c == 0) return out;

  // Reduced row echelon form of the kernel basis (rows = basis vectors).
  Mat<Real> a = spec.center_basis.transpose();
  const Real pivot_tol(1e-6);
  int row = 0;
  for (Eigen::Index col = 0; col < n && row < c; ++col) {
    Eigen::Index best = row;
    for (Eigen::Index r = row + 1; r < c; ++r)
      if (abs(a(r, col)) > abs(a(best, col))) best = r;
    if (!(abs(a(best, col)) > pivot_tol)) continue;
    a.row(row).swap(a.row(best));
    a.row(row) /= Real(a(row, col));
    for (Eigen::Index r = 0; r < c; ++r)
      if (r != row && a(r, col) != 0) a.row(r) -= a(r, col) * a.row(row);
    ++row;
  }

  const Real rtol = rational_tolerance<Real>();
  std::vector<IntVector> vectors;
  try {
    for (int r = 0; r < c; ++r) {
      std::vector<Rational> q(n);
      std::int64_t den = 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        auto approx = rationalize(Real(a(r, i)), rtol, 10'000);
        if (!approx) throw PreconditionFailed("kernel basis entry is not close to a small rational");
        q[i] = *approx;
        den = checked_lcm(den, q[i].den());
      }
      IntVector v(n);
      std::int64_t g = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = q[i].num() * (den / q[i].den());
        g = std::gcd(g, v[i]);
      }
      if (g > 1)
        for (auto& x : v) x /= g;
      vectors.push_back(std::move(v));
    }
  } catch (const Error& e) {
    out.integral = false;
    out.note = std::string("integerization failed: ") + e.what() + "; numeric basis returned";
    return out;
  }

  lll_reduce(vectors);

  const double jmax = std::max({1e-300, std::abs(to_double(spec.eigenvalues(0))),
                                std::abs(to_double(spec.max_eigenvalue()))});
  for (const auto& v : vectors) {
    Vec<Real> vr(n);
    for (Eigen::Index i = 0; i < n; ++i) vr(i) = Real(v[i]);
    const double rel = to_double(Real((jac * vr).norm() / (Real(jmax) * vr.norm())));
    out.residuals.push_back(rel);
    if (!(rel < 1e-6)) {
      out.integral = false;
      out.note = "an integer candidate failed the residual check; numeric basis returned";
      out.vectors.clear();
      out.residuals.clear();
      return out;
    }
    for (auto x : v)
      if (std::llabs(x) > height_bound) out.height_exceeded = true;
  }
  out.vectors = std::move(vectors);
  if (out.height_exceeded) out.note = "some entries exceed the height bound " + std::to_string(height_bound);
  return out;
}

IntVector to_integer_vector(const std::vector<double>& v) {
  IntVector out;
  out.reserve(v.size());
  for (double x : v) {
    if (!std::isfinite(x) || x != std::round(x) || std::abs(x) > 9e15)
      throw InvalidInput("direction vectors must have integer entries");
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

ExactAffineMatrix lift_to_family(const ExactAffineMatrix& base, const std::vector<IntVector>& vectors,
                                 const std::vector<std::string>& params) {
  if (vectors.size() != params.size()) throw InvalidInput("one parameter name is needed per direction");
  const int d = base.d;
  const auto n = static_cast<std::size_t>(core_dimension(d));
  std::vector<std::string> all = base.params;
  for (const auto& p : params) {
    if (std::find(all.begin(), all.end(), p) != all.end()) throw InvalidInput("duplicate parameter name '" + p + "'");
    all.push_back(p);
  }
  std::vector<ExactPhase> entries = base.entries;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != n)
      throw InvalidInput("direction " + std::to_string(k + 1) + " has length " + std::to_string(vectors[k].size()) +
                         ", expected " + std::to_string(n));
    for (int r = 1; r < d; ++r) {
      for (int c = 1; c < d; ++c) {
        const std::int64_t coeff = vectors[k][static_cast<std::size_t>((r - 1) * (d - 1) + (c - 1))];
        if (coeff == 0) continue;
        auto& e = entries[static_cast<std::size_t>(r) * d + c];
        e = e + ExactPhase(Rational(0), {{params[k], coeff}});
      }
    }
  }
  return ExactAffineMatrix::make(d, std::move(all), std::move(entries));
}

std::string subset_parameter(int k) { return "s" + std::to_string(k + 1); }

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return static_cast<std::size_t>(std::llround(r));
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

struct Outcome {
  bool prefiltered_out = false;
  std::optional<VerificationResult> result;
};

Outcome test_subset(const ExactAffineMatrix& base, const std::vector<IntVector>& basis, const std::vector<int>& idx,
                    const SearchOptions& opts, std::uint64_t subset_seed) {
  std::vector<IntVector> dirs;
  std::vector<std::string> names;
  for (int k : idx) {
    dirs.push_back(basis[k]);
    names.push_back(subset_parameter(k));
  }
  const ExactAffineMatrix fam = lift_to_family(base, dirs, names);
  Outcome out;
  if (opts.prefilter) {
    std::mt19937_64 rng(subset_seed);
    std::uniform_real_distribution<double> angle(0.0, two_pi<double>());
    for (int s = 0; s < opts.prefilter_points; ++s) {
      Assignment<double> at;
      for (const auto& p : fam.params) at[p] = angle(rng);
      if (!(potential(to_phase_vector(fam, at)) < opts.prefilter_tol)) {
        out.prefiltered_out = true;
        return out;
      }
    }
  }
  VerificationResult r = verify_affine_family(fam, opts.max_modulus);
  if (r.verdict) out.result = std::move(r);
  return out;
}

}  // namespace

SearchResult search_subsets(const ExactAffineMatrix& base, const std::vector<IntVector>& basis,
                            const SearchOptions& opts) {
  const int n = static_cast<int>(basis.size());
  if (opts.max_arity < 1 || opts.max_arity > n)
    throw InvalidInput("max_arity must lie in [1, " + std::to_string(n) + "]");
  std::size_t total = 0;
  for (int k = 1; k <= opts.max_arity; ++k) total += binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
  if (total > opts.budget)
    throw LimitExceeded("subset search would test " + std::to_string(total) + " subsets, over the budget of " +
                        std::to_string(opts.budget));

  std::vector<std::vector<int>> subsets;
  subsets.reserve(total);
  for (int k = 1; k <= opts.max_arity; ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    do subsets.push_back(idx);
    while (next_combination(idx, n));
  }

  std::vector<Outcome> outcomes(subsets.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](std::size_t first, std::size_t last) {
    try {
      for (std::size_t s = first; s < last; ++s) outcomes[s] = test_subset(base, basis, subsets[s], opts, opts.seed + s);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, subsets.size()));
  if (threads <= 1) {
    work(0, subsets.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (subsets.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t first = w * chunk;
      const std::size_t last = std::min(subsets.size(), first + chunk);
      if (first < last) pool.emplace_back(work, first, last);
    }
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  SearchResult res;
  res.tested = subsets.size();
  res.verified_by_arity.assign(opts.max_arity + 1, 0);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (outcomes[s].prefiltered_out) ++res.prefilter_rejected;
    if (!outcomes[s].result) continue;
    ++res.verified_by_arity[subsets[s].size()];
    res.verified.push_back({subsets[s], std::move(*outcomes[s].result)});
  }
  return res;
}

#define HADAMARD_INSTANTIATE(R) \
  template IntegerKernelBasis integer_kernel_basis(const Mat<R>&, int, std::optional<R>);

HADAMARD_INSTANTIATE(double)
HADAMARD_INSTANTIATE(BigReal)

#undef HADAMARD_INSTANTIATE

}  // namespace hadamard
