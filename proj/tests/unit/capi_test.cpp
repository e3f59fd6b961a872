#include <doctest.h>

#include <string>

#include <json.hpp>

#include "calibra/calibra.h"

namespace {

const char* kSquare = R"({"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]],
  "simplices": {"2": [[0,1,2],[0,2,3]]}})";

}  // namespace

TEST_CASE("C API forms") {
  calibra_form* f = nullptr;
  REQUIRE(calibra_form_from_id("kahler", 2, 4, &f) == CALIBRA_OK);
  int degree = 0, dim = 0;
  CHECK(calibra_form_shape(f, &degree, &dim) == CALIBRA_OK);
  CHECK(degree == 2);
  CHECK(dim == 4);
  calibra_comass_options o;
  calibra_comass_options_init(&o);
  o.seed = 3;
  const double p[4] = {0, 0, 0, 0};
  double value = 0;
  CHECK(calibra_form_comass_at(f, p, 4, &o, &value) == CALIBRA_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(calibra_form_comass_at(f, p, 3, &o, &value) == CALIBRA_DIMENSION_MISMATCH);
  CHECK(std::string(calibra_last_error()).size() > 0);
  calibra_form_free(f);
  CHECK(calibra_form_from_id("nope", 2, 4, &f) != CALIBRA_OK);
  CHECK(calibra_form_from_id(nullptr, 2, 4, &f) == CALIBRA_INVALID_ARGUMENT);
}

TEST_CASE("C API chains") {
  calibra_complex* cx = nullptr;
  REQUIRE(calibra_complex_from_json(kSquare, &cx) == CALIBRA_OK);
  int edges = 0;
  CHECK(calibra_complex_count(cx, 1, &edges) == CALIBRA_OK);
  CHECK(edges == 5);
  const int64_t coeffs[2] = {1, 1};
  calibra_chain* sq = nullptr;
  REQUIRE(calibra_chain_from_dense(cx, 2, coeffs, 2, &sq) == CALIBRA_OK);
  calibra_chain* b = nullptr;
  REQUIRE(calibra_chain_boundary(sq, &b) == CALIBRA_OK);
  double m = 0;
  CHECK(calibra_chain_mass(b, &m) == CALIBRA_OK);
  CHECK(m == doctest::Approx(4.0));
  int found = 0;
  calibra_chain* filled = nullptr;
  CHECK(calibra_chain_fill(b, &found, &filled) == CALIBRA_OK);
  CHECK(found == 1);
  char* json = nullptr;
  REQUIRE(calibra_chain_to_json(filled, &json) == CALIBRA_OK);
  CHECK(nlohmann::json::parse(json)["degree"] == 2);
  calibra_free_string(json);
  calibra_form* vol = nullptr;
  REQUIRE(calibra_form_from_id("volume", 2, 2, &vol) == CALIBRA_OK);
  double v = 0;
  CHECK(calibra_chain_pair(sq, vol, 4, &v) == CALIBRA_OK);
  CHECK(v == doctest::Approx(1.0));
  const double point[2] = {0.5, 0.5};
  const double radii[1] = {0.25};
  double d = 0;
  CHECK(calibra_chain_density(sq, point, 2, radii, 1, 4, &d) == CALIBRA_OK);
  CHECK(d == doctest::Approx(1.0).epsilon(0.02));
  calibra_form_free(vol);
  calibra_chain_free(filled);
  calibra_chain_free(b);
  calibra_chain_free(sq);
  calibra_complex_free(cx);
}

TEST_CASE("C API plateau and verify") {
  const char* instance = R"({"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]],
    "simplices": {"1": [[0,1],[1,2],[0,3],[3,2]]}, "k": 1,
    "boundary": {"degree": 0, "coeffs": [[0,-1],[2,1]]}})";
  calibra_plateau_options o;
  calibra_plateau_options_init(&o);
  o.probe_trials = 4;
  o.run_oracle = 1;
  char* report = nullptr;
  calibra_verdict verdict = CALIBRA_VERDICT_NOT_PROBED;
  REQUIRE(calibra_plateau_solve(instance, &o, &report, &verdict) == CALIBRA_OK);
  CHECK(verdict == CALIBRA_VERDICT_MULTIPLE);
  const auto j = nlohmann::json::parse(report);
  CHECK(j["mass"].get<double>() == doctest::Approx(2.0));
  CHECK(j["minimizers"].size() == 2);
  CHECK(j["oracle"]["mass_agrees"] == true);
  calibra_free_string(report);

  CHECK(calibra_plateau_solve("{", &o, &report, &verdict) == CALIBRA_PARSE_ERROR);

  calibra_verify_options vo;
  calibra_verify_options_init(&vo);
  vo.samples = 50;
  char* vj = nullptr;
  int passed = 0;
  REQUIRE(calibra_verify("affine-tilted", &vo, &vj, &passed) == CALIBRA_OK);
  CHECK(passed == 0);
  calibra_free_string(vj);
  CHECK(std::string(calibra_status_name(CALIBRA_INFEASIBLE)).size() > 0);
}
