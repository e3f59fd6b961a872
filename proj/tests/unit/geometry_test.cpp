#include <doctest.h>

#include "calibra/examples.hpp"
#include "calibra/mse_solver.hpp"
#include "../oracles.hpp"

using namespace calibra;

namespace {

// Central differences of the jet value and first derivatives.
void check_jet_against_fd(const GraphMap& g, const Vec& x, double tol) {
  const Jet j = g.jet(x);
  const double h = 1e-5;
  for (int i = 0; i < g.k(); ++i) {
    Vec p = x, m = x;
    p[i] += h;
    m[i] -= h;
    const Jet jp = g.jet(p), jm = g.jet(m);
    const Vec d1 = (jp.value - jm.value) / (2 * h);
    for (int s = 0; s < g.codim(); ++s) {
      CHECK(j.d1(s, i) == doctest::Approx(d1[s]).epsilon(tol).scale(1.0));
      for (int l = 0; l < g.k(); ++l)
        CHECK(j.d2[s](l, i) == doctest::Approx((jp.d1(s, l) - jm.d1(s, l)) / (2 * h)).epsilon(tol).scale(1.0));
    }
  }
}

}  // namespace

TEST_CASE("analytic jets agree with finite differences") {
  std::mt19937_64 rng(5);
  for (const GraphMap& g : {lawson_osserman_graph(), scherk_graph(), holomorphic_graph({0.5, -2.0, 0.0, 1.0})}) {
    for (int t = 0; t < 10; ++t) {
      Vec x = g.domain().sample(rng);
      if (!g.domain().contains(x, 1e-3)) continue;
      check_jet_against_fd(g, x, 1e-6);
    }
  }
}

TEST_CASE("LOC map matches the Hopf construction") {
  std::mt19937_64 rng(6);
  const GraphMap g = lawson_osserman_graph();
  for (int t = 0; t < 50; ++t) {
    const Vec x = g.domain().sample(rng);
    const Vec a = lawson_osserman_map(x), b = oracle::loc_map(x);
    CHECK((a - b).norm() < 1e-13);
    CHECK(oracle::mss_residual(lawson_osserman_jet(x)).norm() < 1e-12);
  }
}

TEST_CASE("first cousins vanish on constructed contact planes") {
  std::mt19937_64 rng(7);
  ContactOptions o;
  o.known_comass = 1.0;
  for (const CatalogEntry& e : standard_calibrations()) {
    for (int t = 0; t < 5; ++t) {
      const auto s = oracle::contact_sample(e, rng);
      const SimplePlane plane = plane_from_frame(s.frame);
      CHECK(contact_membership(e.form, s.point, plane, o).member);
      CHECK(first_cousin_check(e.form, s.point, plane, o) < 1e-8);
    }
  }
}

TEST_CASE("first cousin check rejects planes outside the contact set") {
  Mat f = Mat::Zero(4, 2);
  f(0, 0) = 1;
  f(1, 1) = 1;  // x1-x2 plane has kahler pairing 0
  ContactOptions o;
  o.known_comass = 1.0;
  CHECK_THROWS_AS(first_cousin_check(kahler_form(2), Vec::Zero(4), plane_from_frame(f), o), Error);
}

TEST_CASE("plane completion") {
  // Kahler: every real line completes uniquely to its complex line.
  Mat eta(4, 1);
  eta << 0.6, 0.0, 0.0, 0.8;
  const Completion c = complete_plane(kahler_covector(2), eta);
  REQUIRE(c.kind == CompletionKind::unique);
  CHECK(c.value == doctest::Approx(1.0));
  Mat full(4, 2);
  full << eta, c.v;
  CHECK(oracle::evaluate(kahler_covector(2), full) == doctest::Approx(1.0));
  // Comass larger than one gives more than one maximizer.
  const Completion m = complete_plane(kahler_covector(2) * 2.0, eta);
  CHECK(m.kind == CompletionKind::multiple);
  // No contact completion for dx1 ^ dx2 starting from e3.
  Mat e3 = Mat::Zero(3, 1);
  e3(2, 0) = 1.0;
  CHECK(complete_plane(KCovector::basis(3, {1, 2}), e3).kind == CompletionKind::none);
}

TEST_CASE("numerical exterior derivative detects a non-closed form") {
  // x1 dx2 has d = dx1 ^ dx2.
  const FormField f("x1 dx2", 1, 2, Region::whole(2),
                    [](const Vec& x) { return KCovector::basis(2, {2}, x[0]); }, false);
  const KCovector d = exterior_derivative_numeric(f, Vec::Zero(2), 1e-3);
  CHECK(d.coeff(MultiIndex::from_axes({1, 2}, 2)) == doctest::Approx(1.0));
}

TEST_CASE("evaluating a form outside its region throws") {
  const FormField f = form_from_id("graph:scherk");
  Vec p = Vec::Zero(f.dim());
  p[0] = 1.4;
  CHECK_THROWS_AS(f.at(p), Error);
}

TEST_CASE("catalog ids") {
  CHECK(form_from_id("volume", 3, 5).degree() == 3);
  CHECK(form_from_id("kahler:2", 4, 6).degree() == 4);
  CHECK(form_from_id("scale:2:volume", 2, 3).at(Vec::Zero(3)).coeff(MultiIndex::leading(2)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(form_from_id("nonsense"), Error);
}

TEST_CASE("named examples") {
  VerifyOptions o;
  o.samples = 100;
  CHECK(verify_example("loc", o).pass());
  CHECK(verify_example("holomorphic:z^2", o).pass());
  CHECK(verify_example("slag-quadratic:0.5,-1,2", o).pass());
  CHECK(verify_example("scherk", o).pass());
  CHECK(verify_example("simons", o).pass());
  const VerifyReport tilted = verify_example("affine-tilted:0.5", o);
  CHECK_FALSE(tilted.pass());
  bool matched = false;
  for (const auto& c : tilted.checks) {
    if (c.name == "calibration_defect") CHECK(c.value == doctest::Approx(1.0 - std::cos(0.5)).epsilon(1e-6));
    if (c.name == "defect_vs_1_minus_cos") matched = c.pass;
  }
  CHECK(matched);
  CHECK(parse_polynomial("z^3-2z+0.5") == std::vector<double>{0.5, -2.0, 0.0, 1.0});
}

TEST_CASE("slag phase of quadratic potentials") {
  const Vec c = (Vec(3) << 0.5, -1.0, 2.0).finished();
  const GraphMap p = quadratic_potential(c);
  const double expected = std::atan(0.5) + std::atan(-1.0) + std::atan(2.0);
  CHECK(slag_phase(p, Vec::Zero(3)) == doctest::Approx(expected));
  CHECK(graph_calibrated_defect(quadratic_gradient_graph(c), slag_form(3, expected),
                                std::vector<Vec>{Vec::Zero(3), Vec::Constant(3, 0.3)}) < 1e-12);
}

TEST_CASE("disc MSE solution and difference operator") {
  const DiscMseSolution u = solve_mse_disc(default_disc_boundary);
  CHECK(u.max_residual() < 1e-8);
  const DiscMseSolution v = solve_mse_disc(alternate_disc_boundary);
  const GraphMap gu = u.graph("u"), gv = v.graph("v");
  const Vec x = Vec::Zero(2);
  DifferenceOptions o;
  o.residual_tolerance = 1e-8;
  const DifferenceOperator op = difference_operator(gu, gv, x, o);
  // Symmetric, elliptic, c = 0.
  CHECK((op.a - op.a.transpose()).norm() < 1e-14);
  CHECK(op.c == 0.0);
  CHECK(op.lambda > 0.0);
  CHECK(op.lambda <= op.Lambda);
  // MSE coefficients against the closed form.
  const Vec p = (Vec(2) << 0.3, -0.7).finished();
  const double w = std::sqrt(1 + p.squaredNorm());
  const Mat expected = (Mat::Identity(2, 2) - p * p.transpose() / (w * w)) / w;
  CHECK((mse_coefficients(p) - expected).norm() < 1e-15);
}
