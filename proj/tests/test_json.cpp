#include <doctest.h>

#include "gll/json_io.hpp"
#include "support/sample.hpp"

using namespace gll;

TEST_CASE("matrices round trip") {
  Rng rng(61);
  const Modulus mod(7, 30);
  const MatZq a = sample::matrix(rng, 3, mod);
  const Json j = matrix_to_json(a);
  CHECK(j.at("e") == 30);
  CHECK(j.at("rows")[0][0].is_string());
  CHECK(matrix_from_json(Json::parse(j.dump())) == a);
  Json bad = j;
  bad["rows"].erase(0);
  CHECK_THROWS_AS(matrix_from_json(bad), std::invalid_argument);
}

TEST_CASE("models and cocycles round trip") {
  Rng rng(62);
  const SyntheticModel model = build_standard_model(canonical_exponents(11, 3, 3), {2, 3, 5}, 2, 4);
  const Cocycle f = random_cocycle(model, rng);
  const Json j = Json::parse(model_to_json(model, &f).dump());
  const SyntheticModel back = model_from_json(j);
  CHECK(back.exponents() == model.exponents());
  CHECK(back.chi_values() == model.chi_values());
  CHECK(back.roles() == model.roles());
  CHECK(back.levels().N == 5);
  const Cocycle g = cocycle_from_json(j, back);
  REQUIRE(g.values.size() == f.values.size());
  for (std::size_t k = 0; k < f.values.size(); ++k) CHECK(g.values[k] == f.values[k]);

  const Json bare = model_to_json(model, nullptr);
  CHECK(cocycle_from_json(bare, model).values.size() == model.generator_count());
  Json wrong = j;
  wrong["cocycle"].erase(0);
  CHECK_THROWS_AS(cocycle_from_json(wrong, model), std::invalid_argument);
  wrong = j;
  wrong["roles"][0] = "bogus";
  CHECK_THROWS_AS(model_from_json(wrong), std::invalid_argument);
}

TEST_CASE("reports serialize deterministically") {
  const Json a = irregularity_to_json(scan_assumption_k(37));
  const Json b = irregularity_to_json(scan_assumption_k(37));
  CHECK(a.dump() == b.dump());
  CHECK(a.at("irregular_indices") == Json::array({32}));
  CHECK(a.at("chosen_k") == 3);
  CHECK(a.at("unconditional_k").is_null());
  const Json r = generation_report_to_json(verify_prop45(3, 7));
  CHECK(r.at("pass") == true);
  CHECK(r.at("mu_convention") == "alternating");
  CHECK(r.contains("all_lines_in_b2"));
  CHECK(profile_to_json(compute_profile(7, 3)) == Json{{"p", 7}, {"n", 3}, {"m", 4}, {"M", 25}, {"N", 50}, {"t", 200}});
}
