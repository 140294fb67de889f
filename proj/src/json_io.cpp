#include "gll/json_io.hpp"

#include <stdexcept>
#include <string>

namespace gll {

namespace {

const char* role_name(GeneratorRole r) {
  switch (r) {
    case GeneratorRole::generic:
      return "generic";
    case GeneratorRole::reserved:
      return "reserved";
    case GeneratorRole::mu_witness:
      return "mu_witness";
  }
  return "generic";
}

GeneratorRole role_from_name(const std::string& s) {
  if (s == "generic") return GeneratorRole::generic;
  if (s == "reserved") return GeneratorRole::reserved;
  if (s == "mu_witness") return GeneratorRole::mu_witness;
  throw std::invalid_argument("unknown generator role: " + s);
}

}  // namespace

Json matrix_to_json(const MatZq& a) {
  Json rows = Json::array();
  for (unsigned i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (unsigned j = 0; j < a.dim(); ++j) row.push_back(a(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return Json{{"p", a.modulus().prime()}, {"e", a.level()}, {"n", a.dim()}, {"rows", rows}};
}

MatZq matrix_from_json(const Json& j) {
  const auto n = j.at("n").get<unsigned>();
  const Modulus mod(j.at("p").get<std::uint64_t>(), j.at("e").get<unsigned>());
  const Json& rows = j.at("rows");
  if (rows.size() != n) throw std::invalid_argument("matrix JSON has the wrong number of rows");
  std::vector<mpz_class> v;
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("matrix JSON row has the wrong length");
    for (const auto& a : row) v.emplace_back(a.get<std::string>(), 10);
  }
  return MatZq(n, mod, v);
}

Json profile_to_json(const ParamProfile& pr) {
  return Json{{"p", pr.p}, {"n", pr.n}, {"m", pr.m}, {"M", pr.M}, {"N", pr.N}, {"t", pr.t}};
}

Json exponents_to_json(const ExponentTuple& t) {
  Json ks = Json::array();
  for (const auto& k : t.ks()) ks.push_back(k.get_str());
  return Json{{"p", t.prime()}, {"anchor", t.anchor()}, {"k", ks}};
}

Json irregularity_to_json(const IrregularityReport& r) {
  Json j{{"p", r.p},
         {"bernoulli_table", r.bernoulli_table},
         {"irregular_indices", r.irregular_indices},
         {"e_upper", r.e_upper},
         {"admissible_ks", r.admissible_ks},
         {"count_hypothesis", r.count_hypothesis},
         {"certified", r.certified()}};
  j["unconditional_k"] = r.unconditional_k ? Json(*r.unconditional_k) : Json(nullptr);
  const auto k = r.chosen_k();
  j["chosen_k"] = k ? Json(*k) : Json(nullptr);
  return j;
}

Json generation_report_to_json(const GenerationReport& r) {
  Json j{{"n", r.n},
         {"p", r.p},
         {"mu_convention", r.convention == MuConvention::alternating ? "alternating" : "first_entry"},
         {"dims_per_step", r.dims_per_step},
         {"pass", r.pass}};
  j["steps_to_sln"] = r.steps_to_sln ? Json(*r.steps_to_sln) : Json(nullptr);
  if (r.all_lines_in_b2) j["all_lines_in_b2"] = *r.all_lines_in_b2;
  return j;
}

Json model_to_json(const SyntheticModel& model, const Cocycle* twist) {
  Json chi = Json::array();
  for (const auto& u : model.chi_values()) chi.push_back(u.get_str());
  Json roles = Json::array();
  for (auto r : model.roles()) roles.push_back(role_name(r));
  Json j{{"p", model.prime()},
         {"n", model.n()},
         {"profile", Json{{"m", model.levels().m}, {"M", model.levels().M}, {"N", model.levels().N}}},
         {"exponents", exponents_to_json(model.exponents())},
         {"chi_values", chi},
         {"roles", roles}};
  Json cocycle = Json::array();
  if (twist != nullptr) {
    for (const auto& v : twist->values) cocycle.push_back(matrix_to_json(v));
  }
  j["cocycle"] = cocycle;
  return j;
}

SyntheticModel model_from_json(const Json& j) {
  const auto p = j.at("p").get<std::uint64_t>();
  const Json& ex = j.at("exponents");
  std::vector<mpz_class> ks;
  for (const auto& k : ex.at("k")) ks.emplace_back(k.get<std::string>(), 10);
  ExponentTuple t(p, std::move(ks), ex.at("anchor").get<long>());
  if (t.size() != j.at("n").get<unsigned>()) throw std::invalid_argument("model JSON: n mismatch");
  const Json& pr = j.at("profile");
  ModelLevels lv{pr.at("m").get<unsigned>(), pr.at("M").get<unsigned>(), pr.at("N").get<unsigned>()};
  std::vector<mpz_class> chi;
  for (const auto& u : j.at("chi_values")) chi.emplace_back(u.get<std::string>(), 10);
  std::vector<GeneratorRole> roles;
  for (const auto& r : j.at("roles")) roles.push_back(role_from_name(r.get<std::string>()));
  return SyntheticModel(std::move(t), lv, std::move(chi), std::move(roles));
}

Cocycle cocycle_from_json(const Json& j, const SyntheticModel& model) {
  Cocycle f;
  for (const auto& v : j.at("cocycle")) f.values.push_back(matrix_from_json(v));
  if (f.values.empty()) return zero_cocycle(model);
  if (f.values.size() != model.generator_count()) {
    throw std::invalid_argument("model JSON: one cocycle value per generator required");
  }
  for (const auto& v : f.values) {
    if (!(v.modulus() == model.mod_M()) || v.dim() != model.n()) {
      throw std::invalid_argument("model JSON: cocycle values must lie in M_n(Z/p^M)");
    }
  }
  return f;
}

}  // namespace gll
