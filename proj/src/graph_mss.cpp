#include "calibra/graph_mss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

namespace calibra {

GraphMap::GraphMap(std::string name, int k, int n, Domain domain, JetFn jet, int orientation, std::vector<int> axes)
    : name_(std::move(name)),
      k_(k),
      n_(n),
      domain_(std::move(domain)),
      jet_(std::move(jet)),
      orientation_(orientation),
      axes_(std::move(axes)) {
  require(k >= 1 && k < n, ErrorCode::invalid_argument, "graph needs 1 <= k < n");
  require(domain_.dim() == k, ErrorCode::dimension_mismatch, "graph domain must live in R^k");
  require(orientation == 1 || orientation == -1, ErrorCode::invalid_argument, "orientation must be +1 or -1");
  if (axes_.empty()) {
    axes_.resize(n);
    std::iota(axes_.begin(), axes_.end(), 0);
  }
  require(static_cast<int>(axes_.size()) == n, ErrorCode::dimension_mismatch, "axis placement must list n axes");
  std::vector<int> sorted = axes_;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    require(sorted[i] == i, ErrorCode::invalid_argument, "axis placement must be a permutation of 0..n-1");
  }
}

Jet GraphMap::jet(const Vec& x) const {
  if (!domain_.contains(x)) fail(ErrorCode::out_of_region, "point outside the domain of graph '" + name_ + "'");
  Jet j = jet_(x);
  require(j.value.size() == codim() && j.d1.rows() == codim() && j.d1.cols() == k_ &&
              static_cast<int>(j.d2.size()) == codim(),
          ErrorCode::invalid_argument, "jet of '" + name_ + "' has the wrong shape");
  return j;
}

Vec GraphMap::point(const Vec& x) const {
  const Vec u = value(x);
  Vec p(n_);
  for (int i = 0; i < k_; ++i) p[axes_[i]] = x[i];
  for (int s = 0; s < codim(); ++s) p[axes_[k_ + s]] = u[s];
  return p;
}

Mat GraphMap::tangent_vectors(const Vec& x) const {
  const Jet j = jet(x);
  Mat t = Mat::Zero(n_, k_);
  for (int i = 0; i < k_; ++i) {
    t(axes_[i], i) = 1.0;
    for (int s = 0; s < codim(); ++s) t(axes_[k_ + s], i) = j.d1(s, i);
  }
  if (orientation_ < 0) t.col(0) *= -1.0;
  return t;
}

GraphMap GraphMap::with_orientation(int orientation) const {
  GraphMap g = *this;
  require(orientation == 1 || orientation == -1, ErrorCode::invalid_argument, "orientation must be +1 or -1");
  g.orientation_ = orientation;
  return g;
}

GraphMap GraphMap::with_axes(std::vector<int> axes) const {
  return GraphMap(name_, k_, n_, domain_, jet_, orientation_, std::move(axes));
}

MetricData area_integrand(const Mat& du) {
  require(du.allFinite(), ErrorCode::non_finite, "area_integrand: non-finite derivative");
  const Eigen::Index k = du.cols();
  MetricData m;
  m.g = Mat::Identity(k, k) + du.transpose() * du;
  Eigen::LLT<Mat> llt(m.g);
  m.g_inv = llt.solve(Mat::Identity(k, k));
  const Mat& l = llt.matrixL();
  double det_sqrt = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) det_sqrt *= l(i, i);
  m.F = det_sqrt;
  return m;
}

Vec mss_residual(const GraphMap& u, const Vec& x) {
  const Jet j = u.jet(x);
  const MetricData m = area_integrand(j.d1);
  Vec r(u.codim());
  for (int s = 0; s < u.codim(); ++s) r[s] = (m.g_inv.array() * j.d2[s].array()).sum();
  return r;
}

Mat mse_coefficients(const Vec& p) {
  const double w2 = 1.0 + p.squaredNorm();
  const double w = std::sqrt(w2);
  const Eigen::Index k = p.size();
  return (Mat::Identity(k, k) - p * p.transpose() / w2) / w;
}

std::vector<Mat> mse_coefficient_derivatives(const Vec& p) {
  const Eigen::Index k = p.size();
  const double w2 = 1.0 + p.squaredNorm();
  const double w = std::sqrt(w2);
  const double w3 = w2 * w;
  const double w5 = w3 * w2;
  std::vector<Mat> out(k, Mat::Zero(k, k));
  for (Eigen::Index l = 0; l < k; ++l) {
    Mat& d = out[l];
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        double v = 3.0 * p[i] * p[j] * p[l] / w5;
        if (i == j) v -= p[l] / w3;
        if (i == l) v -= p[j] / w3;
        if (j == l) v -= p[i] / w3;
        d(i, j) = v;
      }
    }
  }
  return out;
}

SimplePlane tangent_plane(const GraphMap& u, const Vec& x) { return plane_from_frame(u.tangent_vectors(x)); }

double graph_calibrated_defect(const GraphMap& u, const FormField& phi, std::span<const Vec> samples) {
  require(phi.degree() == u.k() && phi.dim() == u.n(), ErrorCode::dimension_mismatch,
          "graph_calibrated_defect: form and graph shapes differ");
  require(!samples.empty(), ErrorCode::invalid_argument, "graph_calibrated_defect: empty sample set");
  double worst = -std::numeric_limits<double>::infinity();
  for (const Vec& x : samples) {
    const Vec p = u.point(x);
    const double value = pair(phi.at(p), tangent_plane(u, x).plucker());
    worst = std::max(worst, 1.0 - value);
  }
  return worst;
}

double slag_phase(const Mat& hessian) {
  require(hessian.rows() == hessian.cols() && hessian.allFinite(), ErrorCode::invalid_argument,
          "slag_phase: Hessian must be a finite square matrix");
  const Mat sym = 0.5 * (hessian + hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  double theta = 0.0;
  for (Eigen::Index i = 0; i < sym.rows(); ++i) theta += std::atan(es.eigenvalues()[i]);
  return theta;
}

double slag_phase(const GraphMap& potential, const Vec& x) {
  require(potential.codim() == 1, ErrorCode::invalid_argument, "slag_phase: potential must be scalar");
  return slag_phase(potential.jet(x).d2[0]);
}

// --- Lawson-Osserman ------------------------------------------------------

namespace {

const double kLocScale = std::sqrt(5.0) / 2.0;

// Symmetric A with Q(x) = x^T A x / 2 for the components (Re w, Im w, h).
std::array<Eigen::Matrix4d, 3> hopf_quadrics() {
  Eigen::Matrix4d re = Eigen::Matrix4d::Zero();
  re(0, 2) = re(2, 0) = 2.0;
  re(1, 3) = re(3, 1) = 2.0;
  Eigen::Matrix4d im = Eigen::Matrix4d::Zero();
  im(0, 3) = im(3, 0) = 2.0;
  im(1, 2) = im(2, 1) = -2.0;
  Eigen::Matrix4d h = Eigen::Vector4d(2.0, 2.0, -2.0, -2.0).asDiagonal();
  return {re, im, h};
}

// Jet of c Q(x)/|x| for the quadrics given.
Jet cone_jet(const Vec& x, const std::vector<Eigen::Matrix4d>& quadrics, double c) {
  require(x.size() == 4, ErrorCode::dimension_mismatch, "the LOC lives on R^4");
  const double r2 = x.squaredNorm();
  require(r2 > 0.0, ErrorCode::out_of_region, "the LOC is singular at the origin");
  const double r = std::sqrt(r2);
  const double r3 = r2 * r;
  const double r5 = r3 * r2;
  const int m = static_cast<int>(quadrics.size());
  Jet j;
  j.value.resize(m);
  j.d1.resize(m, 4);
  j.d2.assign(m, Mat::Zero(4, 4));
  for (int s = 0; s < m; ++s) {
    const Eigen::Matrix4d& a = quadrics[s];
    const Eigen::Vector4d ax = a * x;
    const double q = 0.5 * x.dot(ax);
    j.value[s] = c * q / r;
    for (int i = 0; i < 4; ++i) j.d1(s, i) = c * (ax[i] / r - q * x[i] / r3);
    for (int i = 0; i < 4; ++i) {
      for (int l = 0; l < 4; ++l) {
        double v = a(i, l) / r - (ax[i] * x[l] + ax[l] * x[i]) / r3 + 3.0 * q * x[i] * x[l] / r5;
        if (i == l) v -= q / r3;
        j.d2[s](i, l) = c * v;
      }
    }
  }
  return j;
}

}  // namespace

Vec lawson_osserman_map(const Vec& x) { return lawson_osserman_jet(x).value; }

Jet lawson_osserman_jet(const Vec& x) {
  const auto q = hopf_quadrics();
  return cone_jet(x, {q[0], q[1], q[2]}, kLocScale);
}

GraphMap lawson_osserman_graph(double inner_radius, double outer_radius) {
  const auto q = hopf_quadrics();
  const std::vector<Eigen::Matrix4d> placed = {q[2], -q[1], q[0]};
  return GraphMap("loc", 4, 7, Domain::annulus(Vec::Zero(4), inner_radius, outer_radius),
                  [placed](const Vec& x) { return cone_jet(x, placed, kLocScale); }, -1);
}

GraphMap holomorphic_graph(std::vector<double> real_coeffs, std::vector<double> imag_coeffs, double radius) {
  require(!real_coeffs.empty() || !imag_coeffs.empty(), ErrorCode::invalid_argument, "empty polynomial");
  const std::size_t deg = std::max(real_coeffs.size(), imag_coeffs.size());
  real_coeffs.resize(deg, 0.0);
  imag_coeffs.resize(deg, 0.0);
  std::vector<std::complex<double>> c(deg);
  for (std::size_t i = 0; i < deg; ++i) c[i] = {real_coeffs[i], imag_coeffs[i]};
  auto jet = [c](const Vec& x) {
    const std::complex<double> z(x[0], x[1]);
    std::complex<double> f = 0, f1 = 0, f2 = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      f2 = f2 * z + 2.0 * f1;
      f1 = f1 * z + f;
      f = f * z + c[i];
    }
    const std::complex<double> i1(0.0, 1.0);
    Jet j;
    j.value = Vec(2);
    j.value << f.real(), f.imag();
    // d/da = f', d/db = i f'.
    j.d1 = Mat(2, 2);
    j.d1 << f1.real(), (i1 * f1).real(), f1.imag(), (i1 * f1).imag();
    j.d2.assign(2, Mat(2, 2));
    const std::complex<double> ab = i1 * f2;
    j.d2[0] << f2.real(), ab.real(), ab.real(), -f2.real();
    j.d2[1] << f2.imag(), ab.imag(), ab.imag(), -f2.imag();
    return j;
  };
  return GraphMap("holomorphic", 2, 4, Domain::ball(Vec::Zero(2), radius), jet, 1, {0, 2, 1, 3});
}

GraphMap affine_graph(const Mat& a, const Vec& b, double half_width) {
  const int k = static_cast<int>(a.cols());
  const int m = static_cast<int>(a.rows());
  require(b.size() == m, ErrorCode::dimension_mismatch, "affine_graph: offset size differs from A's rows");
  auto jet = [a, b, k, m](const Vec& x) {
    return Jet{a * x + b, a, std::vector<Mat>(m, Mat::Zero(k, k))};
  };
  return GraphMap("affine", k, k + m, Domain::box(Vec::Constant(k, -half_width), Vec::Constant(k, half_width)), jet);
}

GraphMap scherk_graph(double half_width) {
  require(half_width > 0 && half_width < std::numbers::pi / 2, ErrorCode::invalid_argument,
          "Scherk graph needs 0 < half width < pi/2");
  auto jet = [](const Vec& x) {
    const double cx = std::cos(x[0]);
    const double cy = std::cos(x[1]);
    Jet j;
    j.value = Vec::Constant(1, std::log(cy / cx));
    j.d1 = Mat(1, 2);
    j.d1 << std::tan(x[0]), -std::tan(x[1]);
    j.d2.assign(1, Mat::Zero(2, 2));
    j.d2[0](0, 0) = 1.0 / (cx * cx);
    j.d2[0](1, 1) = -1.0 / (cy * cy);
    return j;
  };
  return GraphMap("scherk", 2, 3, Domain::box(Vec::Constant(2, -half_width), Vec::Constant(2, half_width)), jet);
}

GraphMap quadratic_potential(const Vec& c) {
  const int m = static_cast<int>(c.size());
  auto jet = [c, m](const Vec& x) {
    Jet j;
    j.value = Vec::Constant(1, 0.5 * (c.array() * x.array().square()).sum());
    j.d1 = (c.array() * x.array()).matrix().transpose();
    j.d2.assign(1, Mat(c.asDiagonal()));
    (void)m;
    return j;
  };
  return GraphMap("potential", m, m + 1, Domain::box(Vec::Constant(m, -1.0), Vec::Constant(m, 1.0)), jet);
}

GraphMap quadratic_gradient_graph(const Vec& c) {
  const int m = static_cast<int>(c.size());
  auto jet = [c, m](const Vec& x) {
    return Jet{(c.array() * x.array()).matrix(), Mat(c.asDiagonal()), std::vector<Mat>(m, Mat::Zero(m, m))};
  };
  return GraphMap("slag-quadratic", m, 2 * m, Domain::box(Vec::Constant(m, -1.0), Vec::Constant(m, 1.0)), jet);
}

double simons_mean_curvature(const Vec& p) {
  require(p.size() == 8, ErrorCode::dimension_mismatch, "the Simons cone lives in R^8");
  const double rho2 = p.squaredNorm();
  require(rho2 > 0.0, ErrorCode::out_of_region, "the Simons cone is singular at the origin");
  const double x2 = p.head(4).squaredNorm();
  const double y2 = p.tail(4).squaredNorm();
  return -(x2 - y2) / (rho2 * std::sqrt(rho2));
}

double simons_mean_curvature_fd(const Vec& p, double h) {
  require(p.size() == 8, ErrorCode::dimension_mismatch, "the Simons cone lives in R^8");
  auto normal = [](const Vec& q) {
    Vec g(8);
    g << q.head(4), -q.tail(4);
    return Vec(g / g.norm());
  };
  double div = 0.0;
  Vec q = p;
  for (int i = 0; i < 8; ++i) {
    q[i] = p[i] + h;
    const double plus = normal(q)[i];
    q[i] = p[i] - h;
    const double minus = normal(q)[i];
    q[i] = p[i];
    div += (plus - minus) / (2.0 * h);
  }
  return div;
}

// --- difference operator ---------------------------------------------------

Jet jet_difference(const Jet& a, const Jet& b) {
  Jet j{a.value - b.value, a.d1 - b.d1, a.d2};
  for (std::size_t s = 0; s < j.d2.size(); ++s) j.d2[s] -= b.d2[s];
  return j;
}

Vec DifferenceOperator::apply(const Jet& w) const {
  const Eigen::Index m = static_cast<Eigen::Index>(b.size());
  Vec out(m);
  for (Eigen::Index s = 0; s < m; ++s) {
    out[s] = (a.array() * w.d2[s].array()).sum() + (b[s].array() * w.d1.array()).sum() + c * w.value[s];
  }
  return out;
}

namespace {

// d g^{ij} / d P(g, l) for g = I + P^T P.
Mat inverse_metric_derivative(const Mat& g_inv, const Mat& p, Eigen::Index gamma, Eigen::Index l) {
  const Eigen::Index k = p.cols();
  Mat dg = Mat::Zero(k, k);
  for (Eigen::Index b = 0; b < k; ++b) {
    dg(l, b) += p(gamma, b);
    dg(b, l) += p(gamma, b);
  }
  return -g_inv * dg * g_inv;
}

}  // namespace

DifferenceOperator difference_operator(const GraphMap& u, const GraphMap& v, const Vec& x,
                                       const DifferenceOptions& options) {
  require(u.k() == v.k() && u.n() == v.n(), ErrorCode::dimension_mismatch, "difference_operator: graph shapes differ");
  const Jet ju = u.jet(x);
  const Jet jv = v.jet(x);
  const int k = u.k();
  const int m = u.codim();

  DifferenceOperator op;
  op.residual_u = mss_residual(u, x);
  op.residual_v = mss_residual(v, x);
  if (op.residual_u.cwiseAbs().maxCoeff() > options.residual_tolerance ||
      op.residual_v.cwiseAbs().maxCoeff() > options.residual_tolerance) {
    fail(ErrorCode::precondition_failed, "difference_operator: u or v does not solve the minimal surface system at x");
  }

  using Rule = boost::math::quadrature::gauss<double, 16>;
  op.a = Mat::Zero(k, k);
  op.b.assign(m, Mat::Zero(m, k));
  const Mat dp = ju.d1 - jv.d1;

  auto accumulate = [&](double t, double weight) {
    const Mat p = jv.d1 + t * dp;
    std::vector<Mat> hess(m);
    for (int s = 0; s < m; ++s) hess[s] = jv.d2[s] + t * (ju.d2[s] - jv.d2[s]);
    if (m == 1) {
      const Vec row = p.row(0).transpose();
      op.a += weight * mse_coefficients(row);
      const auto da = mse_coefficient_derivatives(row);
      for (int l = 0; l < k; ++l) op.b[0](0, l) += weight * (da[l].array() * hess[0].array()).sum();
    } else {
      const MetricData md = area_integrand(p);
      op.a += weight * md.g_inv;
      for (int gamma = 0; gamma < m; ++gamma) {
        for (int l = 0; l < k; ++l) {
          const Mat dg = inverse_metric_derivative(md.g_inv, p, gamma, l);
          for (int s = 0; s < m; ++s) op.b[s](gamma, l) += weight * (dg.array() * hess[s].array()).sum();
        }
      }
    }
  };
  // Map the rule from [-1, 1] to [0, 1].
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double wgt = 0.5 * weights[i];
    if (nodes[i] == 0.0) {
      accumulate(0.5, wgt);
    } else {
      accumulate(0.5 * (1.0 + nodes[i]), wgt);
      accumulate(0.5 * (1.0 - nodes[i]), wgt);
    }
  }

  double lip = options.lipschitz;
  if (lip <= 0.0) lip = std::max(ju.d1.norm(), jv.d1.norm());
  if (m == 1) {
    const double w2 = 1.0 + lip * lip;
    op.lambda = std::pow(w2, -1.5);
    // Largest eigenvalue (1 + |p|^2)^{-1/2} is maximal at the point of the
    // segment closest to the origin.
    const Vec p0 = jv.d1.row(0).transpose();
    const Vec d = dp.row(0).transpose();
    const double dd = d.squaredNorm();
    const double t = dd > 0.0 ? std::clamp(-p0.dot(d) / dd, 0.0, 1.0) : 0.0;
    op.Lambda = 1.0 / std::sqrt(1.0 + (p0 + t * d).squaredNorm());
  } else {
    op.lambda = 1.0 / (1.0 + lip * lip);
    op.Lambda = 1.0;
  }
  return op;
}

}  // namespace calibra
