#pragma once

#include <string>

#include <json.hpp>

#include "dwmod/certifier.hpp"
#include "dwmod/coisometry.hpp"
#include "dwmod/forge.hpp"
#include "dwmod/inequality.hpp"

namespace dwmod {

using Json = nlohmann::json;

// Every *_from_json throws Error(Errc::Parse) on malformed input. Objects are
// nlohmann's default std::map-backed type, so keys always serialize sorted.

/// {"rows": m, "cols": n, "entries": [[re, im], ...]} in row-major order.
Json to_json(const ComplexMatrix& a);
ComplexMatrix complex_matrix_from_json(const Json& j);

/// ComplexMatrix JSON plus "algebra_dim".
Json to_json(const ModuleElement& x);
Json to_json(const AlgebraElement& a);
ModuleElement module_element_from_json(const Json& j);
AlgebraElement algebra_element_from_json(const Json& j);

/// {"construction": tag, "elems": [AlgebraElement...]}.
Json to_json(const CoisometryFamily& f);
CoisometryFamily family_from_json(const Json& j);

/// {"d", "m", "n", "xs", "as", "family_tag"}.
Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// {"case_tag", "i", "l" (null for SumNonzero), "rho", "residuals", "feasible"}.
/// Parsing also throws InvalidState when rho is not a density matrix.
Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const BoundReport& r);
Json to_json(const ConstraintSet& cs);
ConstraintSet constraint_set_from_json(const Json& j);

/// {"feasible", "margin", "witness"} plus the grid parameters.
Json to_json(const OracleResult& r);
Json to_json(const ShiftCheckReport& r);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Canonical text form: two-space indent, sorted keys, trailing newline.
std::string dump_canonical(const Json& j);

}  // namespace dwmod
