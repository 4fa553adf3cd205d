#include "hadamard/exact_phase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hadamard/detail/complex.hpp"

namespace hadamard {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw LimitExceeded("integer overflow in exact phase arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw LimitExceeded("integer overflow in exact phase arithmetic");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const auto n = std::stoll(text, &used);
      if (used != text.size()) throw InvalidInput("");
      return Rational(n);
    }
    const auto num_text = text.substr(0, slash);
    const auto den_text = text.substr(slash + 1);
    const auto n = std::stoll(num_text, &used);
    if (used != num_text.size()) throw InvalidInput("");
    const auto d = std::stoll(den_text, &used);
    if (used != den_text.size()) throw InvalidInput("");
    return Rational(n, d);
  } catch (const std::exception&) {
    throw InvalidInput("not a rational: '" + text + "'");
  }
}

Rational Rational::mod_one() const {
  std::int64_t r = num_ % den_;
  if (r < 0) r += den_;
  return Rational(r, den_);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t lhs = checked_mul(a.num_, b.den_ / g);
  const std::int64_t rhs = checked_mul(b.num_, a.den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

ExactPhase::ExactPhase(Rational q, std::map<std::string, std::int64_t> lin) : base(q.mod_one()) {
  for (auto& [name, coeff] : lin)
    if (coeff != 0) linear.emplace(name, coeff);
}

ExactPhase operator+(const ExactPhase& a, const ExactPhase& b) {
  auto lin = a.linear;
  for (const auto& [name, coeff] : b.linear) lin[name] = checked_add(lin[name], coeff);
  return ExactPhase(a.base + b.base, std::move(lin));
}

ExactPhase operator-(const ExactPhase& a) {
  auto lin = a.linear;
  for (auto& [name, coeff] : lin) coeff = -coeff;
  return ExactPhase(-a.base, std::move(lin));
}

ExactAffineMatrix ExactAffineMatrix::make(int d, std::vector<std::string> params, std::vector<ExactPhase> entries) {
  if (d < 2) throw InvalidInput("matrix order must be >= 2");
  if (entries.size() != static_cast<std::size_t>(d) * d) {
    throw InvalidInput("expected " + std::to_string(d * d) + " entries, got " + std::to_string(entries.size()));
  }
  std::set<std::string> declared(params.begin(), params.end());
  if (declared.size() != params.size()) throw InvalidInput("duplicate parameter name");
  ExactAffineMatrix m{d, std::move(params), std::move(entries)};
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const auto& e = m.at(r, c);
      if ((r == 0 || c == 0) && !(e.base == Rational(0) && e.linear.empty())) {
        throw InvalidInput("matrix is not dephased at entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                           ")");
      }
      for (const auto& [name, coeff] : e.linear) {
        if (!declared.count(name)) throw InvalidInput("undeclared parameter '" + name + "'");
      }
    }
  }
  return m;
}

std::vector<std::int64_t> ExactAffineMatrix::frequency(int r, int c) const {
  std::vector<std::int64_t> f(params.size(), 0);
  const auto& lin = at(r, c).linear;
  for (std::size_t p = 0; p < params.size(); ++p) {
    auto it = lin.find(params[p]);
    if (it != lin.end()) f[p] = it->second;
  }
  return f;
}

std::size_t FrequencyTable::term_count() const {
  std::size_t n = 0;
  for (const auto& [m, phases] : groups) n += phases.size();
  return n;
}

FrequencyTable gram_terms(const ExactAffineMatrix& m, int i, int j) {
  if (i == j) throw InvalidInput("gram_terms needs two distinct rows");
  if (i < 0 || j < 0 || i >= m.d || j >= m.d) throw InvalidInput("row index out of range");
  FrequencyTable table;
  for (int k = 0; k < m.d; ++k) {
    auto fi = m.frequency(i, k);
    const auto fj = m.frequency(j, k);
    for (std::size_t p = 0; p < fi.size(); ++p) fi[p] -= fj[p];
    table.groups[fi].push_back((m.at(i, k).base - m.at(j, k).base).mod_one());
  }
  return table;
}

namespace {

// Exact division of `num` by a monic polynomial.
std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn) return {0};
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t coef = num[k];
    quot[k - dn] = coef;
    if (coef == 0) continue;
    for (std::size_t t = 0; t <= dn; ++t) num[k - dn + t] = checked_add(num[k - dn + t], -checked_mul(coef, den[t]));
  }
  return quot;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::int64_t> substitute_power(const std::vector<std::int64_t>& poly, std::int64_t k) {
  std::vector<std::int64_t> out((poly.size() - 1) * k + 1, 0);
  for (std::size_t t = 0; t < poly.size(); ++t) out[t * k] = poly[t];
  return out;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw InvalidInput("cyclotomic index must be positive");
  // Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x) for primes p not dividing m, then
  // Phi_N(x) = Phi_rad(N)(x^{N / rad(N)}).
  std::vector<std::int64_t> phi = {-1, 1};
  std::int64_t rad = 1;
  for (std::int64_t p : prime_factors(n)) {
    phi = divide_monic(substitute_power(phi, p), phi);
    rad *= p;
  }
  return substitute_power(phi, n / rad);
}

std::vector<std::int64_t> reduce_root_sum(const std::vector<std::int64_t>& exponents, std::int64_t n) {
  const auto phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  std::vector<std::int64_t> rem(static_cast<std::size_t>(n), 0);
  for (auto e : exponents) {
    std::int64_t r = e % n;
    if (r < 0) r += n;
    rem[r] += 1;
  }
  for (std::size_t k = rem.size(); k-- > deg;) {
    const std::int64_t coef = rem[k];
    if (coef == 0) continue;
    for (std::size_t t = 0; t <= deg; ++t) rem[k - deg + t] = checked_add(rem[k - deg + t], -checked_mul(coef, phi[t]));
  }
  rem.resize(deg);
  return rem;
}

VerificationResult verify_affine_family(const ExactAffineMatrix& m, std::int64_t max_modulus) {
  std::int64_t n = 1;
  for (const auto& e : m.entries) {
    n = std::lcm(n, e.base.den());
    if (n > max_modulus) {
      throw LimitExceeded("common phase denominator exceeds " + std::to_string(max_modulus));
    }
  }

  VerificationResult result;
  result.modulus = n;
  result.verdict = true;
  // Row pairs (j, i) are the conjugates of (i, j), so i < j suffices.
  for (int i = 0; i < m.d; ++i) {
    for (int j = i + 1; j < m.d; ++j) {
      const auto table = gram_terms(m, i, j);
      for (const auto& [freq, phases] : table.groups) {
        std::vector<std::int64_t> exps;
        exps.reserve(phases.size());
        for (const auto& q : phases) exps.push_back(checked_mul(q.num(), n / q.den()));
        CertificateEntry entry{i, j, freq, reduce_root_sum(exps, n), false};
        entry.vanishes = std::all_of(entry.reduced.begin(), entry.reduced.end(), [](auto c) { return c == 0; });
        if (!entry.vanishes) result.verdict = false;
        result.certificate.push_back(std::move(entry));
      }
    }
  }
  return result;
}

namespace {

template <class Real>
Real numeric_phase(const ExactPhase& e, const Assignment<Real>& assignment) {
  Real phase = two_pi<Real>() * Real(e.base.num()) / Real(e.base.den());
  for (const auto& [name, coeff] : e.linear) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw InvalidInput("parameter '" + name + "' has no value");
    phase += Real(coeff) * it->second;
  }
  return phase;
}

void require_assigned(const ExactAffineMatrix& m, const auto& assignment) {
  for (const auto& name : m.params)
    if (!assignment.count(name)) throw InvalidInput("parameter '" + name + "' has no value");
}

}  // namespace

template <class Real>
BasicPhaseVector<Real> to_phase_vector(const ExactAffineMatrix& m, const Assignment<Real>& assignment) {
  require_assigned(m, assignment);
  std::vector<Real> theta;
  theta.reserve(static_cast<std::size_t>(core_dimension(m.d)));
  for (int r = 1; r < m.d; ++r)
    for (int c = 1; c < m.d; ++c) theta.push_back(numeric_phase(m.at(r, c), assignment));
  return BasicPhaseVector<Real>::make(m.d, std::move(theta));
}

template <class Real>
ComplexMatrix<Real> evaluate(const ExactAffineMatrix& m, const Assignment<Real>& assignment) {
  require_assigned(m, assignment);
  ComplexMatrix<Real> out{Mat<Real>(m.d, m.d), Mat<Real>(m.d, m.d)};
  for (int r = 0; r < m.d; ++r) {
    for (int c = 0; c < m.d; ++c) {
      const auto z = detail::Cx<Real>::polar(numeric_phase(m.at(r, c), assignment));
      out.re(r, c) = z.re;
      out.im(r, c) = z.im;
    }
  }
  return out;
}

ExactAffineMatrix permute(const ExactAffineMatrix& m, const std::vector<int>& row_perm,
                          const std::vector<int>& col_perm) {
  // Reuse the validation of the numeric permutation.
  (void)core_permutation(m.d, row_perm, col_perm);
  ExactAffineMatrix out = m;
  for (int r = 0; r < m.d; ++r)
    for (int c = 0; c < m.d; ++c) out.at(r, c) = m.at(row_perm[r], col_perm[c]);
  return out;
}

template BasicPhaseVector<double> to_phase_vector(const ExactAffineMatrix&, const Assignment<double>&);
template BasicPhaseVector<BigReal> to_phase_vector(const ExactAffineMatrix&, const Assignment<BigReal>&);
template ComplexMatrix<double> evaluate(const ExactAffineMatrix&, const Assignment<double>&);
template ComplexMatrix<BigReal> evaluate(const ExactAffineMatrix&, const Assignment<BigReal>&);

}  // namespace hadamard
