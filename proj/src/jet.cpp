#include "hadamard/jet.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace hadamard {

namespace {

// Exponent vectors of total degree k in lexicographically descending order.
void compositions(int vars, int k, Monomial& current, int pos, std::vector<Monomial>& out) {
  if (pos == vars - 1) {
    current[pos] = k;
    out.push_back(current);
    return;
  }
  for (int e = k; e >= 0; --e) {
    current[pos] = e;
    compositions(vars, k - e, current, pos + 1, out);
  }
}

}  // namespace

JetSpace::JetSpace(int vars, int order) : vars_(vars), order_(order) {
  if (vars < 1) throw InvalidInput("jet space needs at least one variable");
  if (order < 0) throw InvalidInput("jet order must be nonnegative");
  starts_.push_back(0);
  for (int k = 0; k <= order; ++k) {
    Monomial current(vars, 0);
    compositions(vars, k, current, 0, monomials_);
    starts_.push_back(monomials_.size());
  }
  degrees_.reserve(monomials_.size());
  std::map<Monomial, std::size_t> lookup;
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    int deg = 0;
    for (int e : monomials_[i]) deg += e;
    degrees_.push_back(deg);
    lookup.emplace(monomials_[i], i);
  }

  product_starts_.push_back(0);
  Monomial sum(vars, 0);
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    for (std::size_t j = 0; j < monomials_.size() && degrees_[i] + degrees_[j] <= order; ++j) {
      for (int v = 0; v < vars; ++v) sum[v] = monomials_[i][v] + monomials_[j][v];
      products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           static_cast<std::uint32_t>(lookup.at(sum))});
    }
    product_starts_.push_back(products_.size());
  }

  derivative_.resize(vars);
  for (int v = 0; v < vars; ++v) {
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      const int e = monomials_[i][v];
      if (e == 0) continue;
      Monomial lower = monomials_[i];
      lower[v] -= 1;
      derivative_[v].push_back(
          {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(lookup.at(lower)), e});
    }
  }
}

std::size_t JetSpace::index_of(const Monomial& m) const {
  if (static_cast<int>(m.size()) != vars_) throw InvalidInput("monomial has the wrong number of variables");
  int deg = 0;
  for (int e : m) {
    if (e < 0) throw InvalidInput("negative exponent in monomial");
    deg += e;
  }
  if (deg > order_) throw InvalidInput("monomial degree " + std::to_string(deg) + " exceeds jet order");
  auto [first, last] = degree_range(deg);
  // Descending lexicographic order within a degree.
  auto it = std::lower_bound(monomials_.begin() + static_cast<std::ptrdiff_t>(first),
                             monomials_.begin() + static_cast<std::ptrdiff_t>(last), m,
                             [](const Monomial& a, const Monomial& b) { return a > b; });
  return static_cast<std::size_t>(it - monomials_.begin());
}

}  // namespace hadamard
