#include "hadamard/io.hpp"

#include <fstream>

namespace hadamard::io {

template <class Real>
json real_to_json(const Real& x, int digits) {
  if (digits > 17) return format_real(x, digits);
  return to_double(x);
}

template <class Real>
Real real_from_json(const json& j) {
  if (j.is_string()) return parse_real<Real>(j.get<std::string>());
  if (j.is_number()) return Real(j.get<double>());
  throw InvalidInput("expected a number or a decimal string, got " + j.dump());
}

template <class Real>
json to_json(const BasicPhaseVector<Real>& p, int digits) {
  json theta = json::array();
  for (const auto& x : p.theta) theta.push_back(format_real(x, digits));
  return {{"d", p.d}, {"theta", theta}};
}

template <class Real>
BasicPhaseVector<Real> phase_vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("theta")) throw InvalidInput("phase vector JSON needs a \"theta\" array");
  std::vector<Real> theta;
  for (const auto& x : j.at("theta")) theta.push_back(real_from_json<Real>(x));
  const int d = j.contains("d") ? j.at("d").get<int>() : order_from_core_dimension(theta.size());
  return BasicPhaseVector<Real>::make(d, std::move(theta));
}

json to_json(const ExactAffineMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.d; ++r) {
    json row = json::array();
    for (int c = 0; c < m.d; ++c) {
      const auto& e = m.at(r, c);
      json lin = json::object();
      for (const auto& [name, coeff] : e.linear) lin[name] = coeff;
      row.push_back({{"q", e.base.str()}, {"lin", lin}});
    }
    rows.push_back(row);
  }
  return {{"d", m.d}, {"params", m.params}, {"entries", rows}};
}

ExactAffineMatrix exact_matrix_from_json(const json& j) {
  try {
    const int d = j.at("d").get<int>();
    std::vector<std::string> params = j.value("params", std::vector<std::string>{});
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != d) throw InvalidInput("\"entries\" must have d rows");
    std::vector<ExactPhase> entries;
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != d) throw InvalidInput("every row must have d entries");
      for (const auto& e : row) {
        const json& q = e.at("q");
        Rational base = q.is_string() ? Rational::parse(q.get<std::string>()) : Rational(q.get<std::int64_t>());
        std::map<std::string, std::int64_t> lin;
        if (e.contains("lin")) {
          for (const auto& [name, coeff] : e.at("lin").items()) {
            if (!coeff.is_number_integer()) throw InvalidInput("linear coefficients must be integers");
            lin[name] = coeff.get<std::int64_t>();
          }
        }
        entries.emplace_back(base, lin);
      }
    }
    return ExactAffineMatrix::make(d, std::move(params), std::move(entries));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed exact matrix JSON: ") + e.what());
  }
}

json to_json(const catalog::Entry& e) {
  json j = to_json(e.matrix);
  j["name"] = e.name;
  json ranges = json::object();
  for (const auto& p : e.params) ranges[p.name] = p.range;
  j["param_ranges"] = ranges;
  j["provenance"] = e.provenance;
  return j;
}

json to_json(const DefectReport& r) {
  json j = {{"defect", r.defect}, {"method", to_string(r.method)}, {"agreement", r.agreement}};
  if (r.flow_kernel) j["flow_kernel"] = *r.flow_kernel;
  if (r.linear_system) j["linear_system"] = *r.linear_system;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

json to_json(const VerificationResult& r) {
  json cert = json::array();
  for (const auto& c : r.certificate) {
    cert.push_back({{"i", c.i}, {"j", c.j}, {"frequency", c.frequency}, {"reduced", c.reduced}, {"vanishes", c.vanishes}});
  }
  return {{"verdict", r.verdict}, {"modulus", r.modulus}, {"certificate", cert}};
}

json to_json(const IntegerKernelBasis& b) {
  json j = {{"integral", b.integral}, {"height_exceeded", b.height_exceeded}, {"vectors", b.vectors},
            {"residuals", b.residuals}};
  if (!b.note.empty()) j["note"] = b.note;
  if (!b.integral) {
    json cols = json::array();
    for (Eigen::Index k = 0; k < b.numeric.cols(); ++k) {
      std::vector<double> col(b.numeric.rows());
      for (Eigen::Index r = 0; r < b.numeric.rows(); ++r) col[r] = b.numeric(r, k);
      cols.push_back(col);
    }
    j["numeric"] = cols;
  }
  return j;
}

json to_json(const SearchResult& r) {
  json subsets = json::array();
  for (const auto& v : r.verified) {
    std::vector<int> one_based;
    for (int i : v.indices) one_based.push_back(i + 1);
    subsets.push_back({{"subset", one_based}, {"certificate", to_json(v.certificate)}});
  }
  return {{"tested", r.tested},
          {"prefilter_rejected", r.prefilter_rejected},
          {"verified_by_arity", r.verified_by_arity},
          {"verified", subsets}};
}

template <class Real>
json to_json(const SpectralData<Real>& s, int digits) {
  json ev = json::array();
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) ev.push_back(real_to_json(Real(s.eigenvalues(k)), digits));
  return {{"eigenvalues", ev},
          {"center_dim", s.center_dim},
          {"tol", real_to_json(s.tol, digits)},
          {"max_residual", real_to_json(s.max_residual, digits)}};
}

template <class Real>
json to_json(const CMExpansion<Real>& e, const FlowVerdict& v, int digits) {
  json alpha = json::array();
  json w = json::array();
  for (std::size_t idx = 0; idx < e.space->size(); ++idx) {
    if (e.space->degree(idx) < 2) continue;
    const auto& m = e.space->monomial(idx);
    for (int i = 0; i < e.center_dim(); ++i)
      alpha.push_back({{"i", i + 1}, {"m", m}, {"coeff", format_real(Real(e.alpha[idx](i)), digits)}});
    json wm = json::array();
    for (Eigen::Index r = 0; r < e.w[idx].size(); ++r) wm.push_back(format_real(Real(e.w[idx](r)), digits));
    w.push_back({{"m", m}, {"w", wm}});
  }
  json verdict = {{"flow_detected", v.flow_detected}, {"max_abs_alpha_per_order", v.max_abs_by_order}};
  if (v.first_nonzero) {
    const auto& h = *v.first_nonzero;
    verdict["first_nonzero"] = {{"order", h.order}, {"m", h.monomial}, {"i", h.component + 1}, {"coeff", h.value_text}};
  }
  return {{"base", to_json(e.base, digits)}, {"order", e.order}, {"center_dim", e.center_dim()},
          {"alpha", alpha},                   {"w", w},           {"verdict", verdict}};
}

std::vector<IntVector> vectors_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("vectors") : j;
  if (!arr.is_array()) throw InvalidInput("expected an array of integer vectors");
  std::vector<IntVector> out;
  for (const auto& v : arr) {
    std::vector<double> raw;
    for (const auto& x : v) {
      if (!x.is_number()) throw InvalidInput("vector entries must be numbers");
      raw.push_back(x.get<double>());
    }
    out.push_back(to_integer_vector(raw));
  }
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

#define HADAMARD_INSTANTIATE(R)                                                   \
  template json real_to_json(const R&, int);                                      \
  template R real_from_json(const json&);                                         \
  template json to_json(const BasicPhaseVector<R>&, int);                         \
  template BasicPhaseVector<R> phase_vector_from_json(const json&);               \
  template json to_json(const SpectralData<R>&, int);                             \
  template json to_json(const CMExpansion<R>&, const FlowVerdict&, int);

HADAMARD_INSTANTIATE(double)
HADAMARD_INSTANTIATE(BigReal)

#undef HADAMARD_INSTANTIATE

}  // namespace hadamard::io
