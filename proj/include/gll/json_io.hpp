#pragma once

#include <json.hpp>

#include "gll/galmodel.hpp"
#include "gll/generation.hpp"
#include "gll/matgroup.hpp"
#include "gll/spectrum.hpp"

namespace gll {

using Json = nlohmann::json;

/// {"p", "e", "n", "rows": [[decimal strings]]}.
Json matrix_to_json(const MatZq& a);
MatZq matrix_from_json(const Json& j);

Json profile_to_json(const ParamProfile& pr);
Json exponents_to_json(const ExponentTuple& t);
Json irregularity_to_json(const IrregularityReport& r);
Json generation_report_to_json(const GenerationReport& r);

/// {p, n, profile, exponents, chi_values, roles, cocycle}. `profile` holds the
/// model levels m, M, N.
Json model_to_json(const SyntheticModel& model, const Cocycle* twist);
SyntheticModel model_from_json(const Json& j);
Cocycle cocycle_from_json(const Json& j, const SyntheticModel& model);

}  // namespace gll
