#pragma once

// JSON interchange. Reals are written as numbers at machine precision and as
// decimal strings when more than 17 digits are requested; both forms are
// accepted on input.

#include <string>

#include <json.hpp>

#include "hadamard/catalog.hpp"
#include "hadamard/center_manifold.hpp"
#include "hadamard/exact_phase.hpp"
#include "hadamard/family_search.hpp"
#include "hadamard/spectral.hpp"

namespace hadamard::io {

using nlohmann::json;

template <class Real>
json real_to_json(const Real& x, int digits);

template <class Real>
Real real_from_json(const json& j);

/// {"d": int, "theta": [decimal strings]}
template <class Real>
json to_json(const BasicPhaseVector<Real>& p, int digits);

template <class Real>
BasicPhaseVector<Real> phase_vector_from_json(const json& j);

/// {"d": int, "params": [...], "entries": [[{"q": "p/q", "lin": {"a": int}}]]}
json to_json(const ExactAffineMatrix& m);
ExactAffineMatrix exact_matrix_from_json(const json& j);

json to_json(const catalog::Entry& e);
json to_json(const DefectReport& r);
json to_json(const VerificationResult& r);
json to_json(const IntegerKernelBasis& b);
json to_json(const SearchResult& r);

template <class Real>
json to_json(const SpectralData<Real>& s, int digits);

template <class Real>
json to_json(const CMExpansion<Real>& e, const FlowVerdict& v, int digits);

/// Integer vectors from {"vectors": [[...]]} or a bare array of arrays.
std::vector<IntVector> vectors_from_json(const json& j);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace hadamard::io
