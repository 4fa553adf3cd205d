#pragma once

// Truncated multivariate power series in c variables through total degree K.
//
// Monomials are ordered by degree, and lexicographically descending within a
// degree (t1^k first). All jets sharing a JetSpace share its index tables.

#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "hadamard/errors.hpp"

namespace hadamard {

using Monomial = std::vector<int>;

class JetSpace {
 public:
  JetSpace(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  std::size_t size() const { return monomials_.size(); }

  const Monomial& monomial(std::size_t idx) const { return monomials_[idx]; }
  int degree(std::size_t idx) const { return degrees_[idx]; }
  /// Index range [first, last) of the monomials of exact degree k.
  std::pair<std::size_t, std::size_t> degree_range(int k) const { return {starts_[k], starts_[k + 1]}; }
  /// Throws InvalidInput for a monomial outside the space.
  std::size_t index_of(const Monomial& m) const;

  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };
  /// All (i, j) with deg(i) + deg(j) <= K, grouped by lhs.
  const std::vector<Product>& products() const { return products_; }
  /// Row starts of products() per lhs index.
  const std::vector<std::size_t>& product_starts() const { return product_starts_; }

  struct DerivativeTerm {
    std::uint32_t src;
    std::uint32_t dst;
    int factor;
  };
  const std::vector<DerivativeTerm>& derivative_terms(int var) const { return derivative_[var]; }

 private:
  int vars_;
  int order_;
  std::vector<Monomial> monomials_;
  std::vector<int> degrees_;
  std::vector<std::size_t> starts_;
  std::vector<Product> products_;
  std::vector<std::size_t> product_starts_;
  std::vector<std::vector<DerivativeTerm>> derivative_;
};

template <class Real>
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::shared_ptr<const JetSpace> space) : space_(std::move(space)), c_(space_->size(), Real(0)) {}

  static Jet constant(std::shared_ptr<const JetSpace> space, const Real& value) {
    Jet j(std::move(space));
    j.c_[0] = value;
    return j;
  }
  static Jet variable(std::shared_ptr<const JetSpace> space, int var) {
    Jet j(space);
    Monomial m(space->vars(), 0);
    m[var] = 1;
    j.c_[space->index_of(m)] = Real(1);
    return j;
  }

  const std::shared_ptr<const JetSpace>& space() const { return space_; }
  const Real& operator[](std::size_t idx) const { return c_[idx]; }
  Real& operator[](std::size_t idx) { return c_[idx]; }
  const std::vector<Real>& coefficients() const { return c_; }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Real& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Real& s) { return a *= s; }
  friend Jet operator*(Jet a, int s) { return a *= Real(s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out(a.space_);
    const auto& prods = a.space_->products();
    const auto& starts = a.space_->product_starts();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      const Real& ai = a.c_[i];
      for (std::size_t p = starts[i]; p < starts[i + 1]; ++p) {
        const auto& pr = prods[p];
        if (b.c_[pr.rhs] == 0) continue;
        out.c_[pr.out] += ai * b.c_[pr.rhs];
      }
    }
    return out;
  }

  /// Partial derivative in variable `var` (degree drops by one; the top
  /// degree of the result is K-1).
  Jet derivative(int var) const {
    Jet out(space_);
    for (const auto& t : space_->derivative_terms(var)) out.c_[t.dst] = c_[t.src] * t.factor;
    return out;
  }

  /// Sum over monomials of exact degree k.
  Jet degree_part(int k) const {
    Jet out(space_);
    auto [first, last] = space_->degree_range(k);
    for (std::size_t i = first; i < last; ++i) out.c_[i] = c_[i];
    return out;
  }

  Real evaluate(const std::vector<Real>& t) const {
    Real acc(0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Real term = c_[i];
      const auto& m = space_->monomial(i);
      for (std::size_t v = 0; v < m.size(); ++v)
        for (int e = 0; e < m[v]; ++e) term *= t[v];
      acc += term;
    }
    return acc;
  }

  /// cos and sin of this jet, composed through the truncation order.
  friend std::pair<Jet, Jet> cos_sin(const Jet& x) {
    using std::cos;
    using std::sin;
    const auto& space = x.space_;
    const Real c0 = cos(x.c_[0]);
    const Real s0 = sin(x.c_[0]);
    Jet u = x;
    u.c_[0] = Real(0);

    Jet cu = Jet::constant(space, Real(1));
    Jet su(space);
    bool nonconstant = false;
    for (std::size_t k = 1; k < u.c_.size(); ++k) {
      if (u.c_[k] != 0) {
        nonconstant = true;
        break;
      }
    }
    if (nonconstant) {
      Jet power = u;  // u^n / n!
      for (int n = 1; n <= space->order(); ++n) {
        if (n > 1) power = (power * u) * (Real(1) / Real(n));
        const int phase = n % 4;
        if (phase == 1) su += power;
        if (phase == 2) cu -= power;
        if (phase == 3) su -= power;
        if (phase == 0) cu += power;
      }
    }
    Jet cos_x = cu * c0 - su * s0;
    Jet sin_x = su * c0 + cu * s0;
    return {std::move(cos_x), std::move(sin_x)};
  }

 private:
  std::shared_ptr<const JetSpace> space_;
  std::vector<Real> c_;
};

}  // namespace hadamard
