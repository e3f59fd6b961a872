#pragma once

// Reference computations used by the tests. They avoid the library's own
// numerics wherever the quantity has a closed form or a brute-force answer.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "calibra/catalog.hpp"
#include "calibra/currents.hpp"
#include "calibra/plateau.hpp"

namespace oracle {

using calibra::KCovector;
using calibra::KVector;
using calibra::Mat;
using calibra::Vec;

// Leibniz determinant; fine for k <= 5.
inline double leibniz_det(const Mat& m) {
  const int k = static_cast<int>(m.rows());
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  double total = 0.0;
  do {
    int inv = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (p[i] > p[j]) ++inv;
    double prod = 1.0;
    for (int i = 0; i < k; ++i) prod *= m(p[i], i);
    total += (inv % 2 ? -1.0 : 1.0) * prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// phi(v1, ..., vk) for the columns of `frame`, summing minors directly.
inline double evaluate(const KCovector& phi, const Mat& frame) {
  double acc = 0.0;
  for (const auto& [idx, c] : phi.terms()) {
    const auto rows = idx.axes0();
    Mat sub(rows.size(), frame.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) sub.row(r) = frame.row(rows[r]);
    acc += c * leibniz_det(sub);
  }
  return acc;
}

// Comass of a 2-covector: the largest singular value of its skew matrix.
inline double comass_2form(const KCovector& phi) {
  const int n = phi.dim();
  Mat a = Mat::Zero(n, n);
  for (const auto& [idx, c] : phi.terms()) {
    const auto ax = idx.axes0();
    a(ax[0], ax[1]) += c;
    a(ax[1], ax[0]) -= c;
  }
  return Eigen::JacobiSVD<Mat>(a).singularValues()[0];
}

inline Mat gram_schmidt(const Mat& v) {
  Mat q = v;
  for (int j = 0; j < q.cols(); ++j) {
    for (int i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    q.col(j).normalize();
  }
  return q;
}

inline Mat random_rotation(std::mt19937_64& rng, int k) {
  std::normal_distribution<double> g;
  Mat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = g(rng);
  Mat q = gram_schmidt(m);
  if (leibniz_det(q) < 0) q.col(0) *= -1.0;
  return q;
}

using CMat = Eigen::MatrixXcd;

inline CMat random_unitary(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> g;
  CMat z(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) z(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<CMat> qr(z);
  return qr.householderQ() * CMat::Identity(m, m);
}

// Complex columns as real vectors in (x1..xm, y1..ym) coordinates.
inline Mat realify(const CMat& c) {
  const int m = static_cast<int>(c.rows());
  Mat out(2 * m, c.cols());
  out.topRows(m) = c.real();
  out.bottomRows(m) = c.imag();
  return out;
}

// A point and an oriented contact plane of a catalog calibration, built from
// its known geometry rather than by optimization.
struct ContactSample {
  Vec point;
  Mat frame;
};

inline ContactSample contact_sample(const calibra::CatalogEntry& e, std::mt19937_64& rng) {
  const std::string& id = e.id;
  const int n = e.form.dim();
  const int k = e.form.degree();
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  Vec p(n);
  for (int i = 0; i < n; ++i) p[i] = u(rng);
  if (id.rfind("volume", 0) == 0) {
    Mat f = Mat::Zero(n, k);
    f.topRows(k) = random_rotation(rng, k);
    return {p, f};
  }
  if (id.rfind("kahler", 0) == 0) {
    const int m = n / 2;
    const int pw = k / 2;
    const CMat q = random_unitary(rng, m);
    Mat f(n, k);
    for (int j = 0; j < pw; ++j) {
      f.col(2 * j) = realify(q.col(j));
      f.col(2 * j + 1) = realify(std::complex<double>(0, 1) * q.col(j));
    }
    return {p, f};
  }
  if (id.rfind("slag-re", 0) == 0) {
    const int m = n / 2;
    double theta = 0.0;
    const auto last = id.rfind(':');
    if (std::count(id.begin(), id.end(), ':') == 2) theta = std::stod(id.substr(last + 1));
    CMat q = random_unitary(rng, m);
    const std::complex<double> det = q.determinant();
    q.col(0) *= std::polar(1.0, theta) / det;
    return {p, realify(q)};
  }
  if (id == "coassociative") {
    // Tangent planes of the Lawson-Osserman cone, sampled on its annulus.
    const calibra::GraphMap g = calibra::lawson_osserman_graph();
    Vec x = g.domain().sample(rng);
    return {g.point(x), g.tangent_vectors(x)};
  }
  if (id.rfind("graph:", 0) == 0) {
    const calibra::GraphMap g = calibra::graph_for_calibration(calibra::graph_from_id(id));
    std::mt19937_64 local(rng());
    Vec x = g.domain().sample(local);
    // stay inside the box so that d phi is defined with margin
    x *= 0.95;
    return {g.point(x), g.tangent_vectors(x)};
  }
  throw std::runtime_error("no contact sampler for " + id);
}

// Piecewise-constant cochain of the four-corners square: -dy on ABO, dx on
// BCO, dy on CDO, -dx on DAO, averaged across the diagonals.
inline Eigen::Vector2d four_corners_form(const Eigen::Vector2d& q) {
  auto side = [](const Eigen::Vector2d& x) -> Eigen::Vector2d {
    if (x[0] > std::abs(x[1])) return {0.0, -1.0};
    if (-x[1] > std::abs(x[0])) return {1.0, 0.0};
    if (-x[0] > std::abs(x[1])) return {0.0, 1.0};
    return {-1.0, 0.0};
  };
  const double eps = 1e-9;
  Eigen::Vector2d total = Eigen::Vector2d::Zero();
  const Eigen::Vector2d offsets[4] = {{eps, 0.3 * eps}, {-eps, -0.3 * eps}, {0.3 * eps, -eps}, {-0.3 * eps, eps}};
  for (const auto& o : offsets) total += side(q + o);
  return total / 4.0;
}

inline double integrate_four_corners(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const int pieces = 4000;
  double acc = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const Eigen::Vector2d mid = a + (b - a) * ((i + 0.5) / pieces);
    acc += four_corners_form(mid).dot((b - a) / pieces);
  }
  return acc;
}

// Random polynomial (k-1)-form with coefficient polynomials of total degree
// <= 3, evaluated exactly together with its exterior derivative.
struct PolyForm {
  int n = 0;
  int degree = 0;
  // For each multi-index: monomial exponents and coefficients.
  struct Term {
    calibra::MultiIndex index;
    std::vector<std::vector<int>> powers;
    std::vector<double> coeffs;
  };
  std::vector<Term> terms;

  static double monomial(const Vec& x, const std::vector<int>& pw) {
    double v = 1.0;
    for (std::size_t i = 0; i < pw.size(); ++i) v *= std::pow(x[static_cast<Eigen::Index>(i)], pw[i]);
    return v;
  }

  KCovector value(const Vec& x) const {
    KCovector out(degree, n);
    for (const Term& t : terms) {
      double c = 0.0;
      for (std::size_t m = 0; m < t.powers.size(); ++m) c += t.coeffs[m] * monomial(x, t.powers[m]);
      out.add_term(t.index, c);
    }
    return out;
  }

  KCovector derivative(const Vec& x) const {
    KCovector out(degree + 1, n);
    for (const Term& t : terms) {
      for (int j = 0; j < n; ++j) {
        if (t.index.contains(j)) continue;
        double c = 0.0;
        for (std::size_t m = 0; m < t.powers.size(); ++m) {
          auto pw = t.powers[m];
          if (pw[j] == 0) continue;
          const double f = pw[j];
          --pw[j];
          c += t.coeffs[m] * f * monomial(x, pw);
        }
        // dx_j ^ dx_I = sign * dx_{I + j}, sign = (-1)^{#I below j}
        int below = 0;
        for (int a : t.index.axes0())
          if (a < j) ++below;
        const calibra::MultiIndex merged(t.index.mask() | (std::uint32_t{1} << j));
        out.add_term(merged, (below % 2 ? -1.0 : 1.0) * c);
      }
    }
    return out;
  }

  static PolyForm random(std::mt19937_64& rng, int n, int degree, int max_total = 3) {
    PolyForm f;
    f.n = n;
    f.degree = degree;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> e(0, max_total);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != degree) continue;
      Term t{calibra::MultiIndex(mask), {}, {}};
      for (int m = 0; m < 4; ++m) {
        std::vector<int> pw(n, 0);
        int budget = e(rng);
        while (budget-- > 0) ++pw[std::uniform_int_distribution<int>(0, n - 1)(rng)];
        t.powers.push_back(pw);
        t.coeffs.push_back(u(rng));
      }
      f.terms.push_back(std::move(t));
    }
    return f;
  }
};

// MSS residual g^{ij} u^s_{ij} from a jet, with g = I + Du^T Du.
inline Vec mss_residual(const calibra::Jet& j) {
  const Mat g = Mat::Identity(j.d1.cols(), j.d1.cols()) + j.d1.transpose() * j.d1;
  const Mat gi = g.inverse();
  Vec r(j.d2.size());
  for (std::size_t s = 0; s < j.d2.size(); ++s) r[static_cast<Eigen::Index>(s)] = (gi.array() * j.d2[s].array()).sum();
  return r;
}

// (sqrt5/2)|x| H(x/|x|) for the Hopf map, returned as (Re w, Im w, h).
inline Vec loc_map(const Vec& x) {
  const std::complex<double> z1(x[0], x[1]), z2(x[2], x[3]);
  const double r = x.norm();
  const std::complex<double> w = 2.0 * std::conj(z1) * z2;
  const double h = std::norm(z1) - std::norm(z2);
  Vec out(3);
  out << w.real(), w.imag(), h;
  return std::sqrt(5.0) / 2.0 * out / r;
}

// Exhaustive enumeration over [-bound, bound]^N with no pruning at all.
struct NaiveResult {
  bool feasible = false;
  double mass = 0.0;
  int minimizers = 0;
};

inline NaiveResult naive_plateau(const calibra::PlateauInstance& in, int bound) {
  const auto& cx = *in.complex;
  const int n = cx.count(in.k);
  const auto& bm = cx.boundary_matrix(in.k);
  const int rows = cx.count(in.k - 1);
  std::vector<long> target(rows, 0);
  for (const auto& [i, c] : in.boundary.coeffs()) target[i] = c;
  std::vector<int> x(n, -bound);
  NaiveResult best;
  while (true) {
    std::vector<long> b(rows, 0);
    for (int j = 0; j < n; ++j)
      for (const auto& [r, s] : bm.columns[j]) b[r] += static_cast<long>(s) * x[j];
    if (b == target) {
      double m = 0.0;
      for (int j = 0; j < n; ++j) m += std::abs(x[j]) * cx.volume(in.k, j);
      if (!best.feasible || m < best.mass - 1e-9) {
        best = {true, m, 1};
      } else if (std::abs(m - best.mass) <= 1e-9) {
        ++best.minimizers;
      }
    }
    int p = 0;
    while (p < n && x[p] == bound) x[p++] = -bound;
    if (p == n) break;
    ++x[p];
  }
  return best;
}

}  // namespace oracle
