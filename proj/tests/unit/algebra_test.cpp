#include <doctest.h>

#include <numbers>
#include <random>

#include "calibra/catalog.hpp"
#include "calibra/quadrature.hpp"
#include "../oracles.hpp"

using namespace calibra;

TEST_CASE("multi-index axes and sign of merging") {
  const MultiIndex i = MultiIndex::from_axes({1, 3}, 4);
  CHECK(i.axes() == std::vector<int>{1, 3});
  CHECK(i.axes0() == std::vector<int>{0, 2});
  CHECK(i.degree() == 2);
  CHECK(merge_sign(MultiIndex::single(1), MultiIndex::single(0)) == -1);
  CHECK(merge_sign(MultiIndex::single(0), MultiIndex::single(1)) == 1);
}

TEST_CASE("wedge is graded anticommutative and nilpotent on 1-vectors") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  auto random_vec = [&](int n) {
    KVector v(1, n);
    for (int i = 0; i < n; ++i) v.add_term(MultiIndex::single(i), g(rng));
    return v;
  };
  const KVector a = random_vec(5), b = random_vec(5);
  const KVector ab = wedge(a, b), ba = wedge(b, a);
  for (const auto& [idx, c] : ab.terms()) CHECK(c == doctest::Approx(-ba.coeff(idx)));
  CHECK(wedge(a, a).norm() < 1e-14);
  const KVector abc = wedge(ab, random_vec(5));
  CHECK(is_simple(abc));
  KVector e12_e34 = KVector::basis(4, {1, 2}) + KVector::basis(4, {3, 4});
  CHECK(simplicity_defect(e12_e34) == doctest::Approx(1.0));
  CHECK_THROWS_AS(wedge(abc, abc), Error);
}

TEST_CASE("interior product follows the slot sign") {
  const KVector e123 = KVector::basis(3, {1, 2, 3});
  const std::vector<double> e2 = {0, 1, 0};
  const KVector r = interior(std::span<const double>(e2), e123);
  CHECK(r.coeff(MultiIndex::from_axes({1, 3}, 3)) == doctest::Approx(-1.0));
}

TEST_CASE("wedge of frame columns matches Leibniz minors") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Mat f(5, 3);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = g(rng);
  const KVector w = wedge_of_columns(f);
  for (const auto& [idx, c] : w.terms()) {
    const auto rows = idx.axes0();
    Mat sub(3, 3);
    for (int r = 0; r < 3; ++r) sub.row(r) = f.row(rows[r]);
    CHECK(c == doctest::Approx(oracle::leibniz_det(sub)).epsilon(1e-12));
  }
}

TEST_CASE("plane_from_frame keeps orientation and rejects dependent vectors") {
  Mat f(3, 2);
  f << 2, 0, 0, 3, 0, 0;
  const SimplePlane p = plane_from_frame(f);
  CHECK(p.plucker().coeff(MultiIndex::from_axes({1, 2}, 3)) == doctest::Approx(1.0));
  Mat swapped(3, 2);
  swapped << f.col(1), f.col(0);
  CHECK(plane_angle(p, plane_from_frame(swapped)) == doctest::Approx(std::numbers::pi));
  Mat dep(3, 2);
  dep << 1, 2, 1, 2, 0, 0;
  CHECK_THROWS_AS(plane_from_frame(dep), Error);
}

TEST_CASE("pairing gradient agrees with finite differences") {
  const PairingFunctional f(coassociative_covector());
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Mat frame(7, 4);
  for (Eigen::Index i = 0; i < frame.size(); ++i) frame.data()[i] = g(rng);
  CHECK(f.value(frame) == doctest::Approx(oracle::evaluate(coassociative_covector(), frame)));
  const Mat grad = f.gradient(frame);
  const double h = 1e-6;
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 4; ++c) {
      Mat p = frame, m = frame;
      p(r, c) += h;
      m(r, c) -= h;
      CHECK(grad(r, c) == doctest::Approx((f.value(p) - f.value(m)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("comass of random 2-covectors matches the singular value oracle") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int n : {3, 4, 5, 6}) {
    KCovector phi(2, n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) phi.add_term(MultiIndex((1u << a) | (1u << b)), g(rng));
    AscentOptions o;
    o.seed = static_cast<std::uint64_t>(n);
    CHECK(comass(phi, o).value == doctest::Approx(oracle::comass_2form(phi)).epsilon(1e-8));
  }
}

TEST_CASE("comass is deterministic for a fixed seed") {
  AscentOptions o;
  o.seed = 9;
  o.restarts = 8;
  const auto a = comass(slag_covector(3, 0.4), o);
  const auto b = comass(slag_covector(3, 0.4), o);
  CHECK(a.value == b.value);
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Grundmann-Moeller rules are exact up to their degree") {
  for (int d : {1, 2, 3}) {
    for (int order : {1, 3, 5}) {
      const SimplexRule& rule = grundmann_moeller(d, order);
      double total = 0.0;
      for (double w : rule.weights) total += w;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
      // Average of b0^p over the simplex: p! d! / (p + d)!.
      for (int p = 0; p <= rule.degree; ++p) {
        double avg = 0.0;
        for (std::size_t i = 0; i < rule.weights.size(); ++i) avg += rule.weights[i] * std::pow(rule.barycentric[i][0], p);
        const double exact = std::tgamma(p + 1.0) * std::tgamma(d + 1.0) / std::tgamma(p + d + 1.0);
        CHECK(avg == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }
}
