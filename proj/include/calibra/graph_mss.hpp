#pragma once

// Graphs of maps u: Omega in R^k -> R^{n-k}, their induced metric, the minimal
// surface system and the explicit examples (LOC, holomorphic, special
// Lagrangian, affine, Scherk), plus the difference-operator coefficients.

#include <functional>
#include <string>
#include <vector>

#include "calibra/calibration.hpp"

namespace calibra {

// Value and derivatives of u at a point: value (n-k), first derivatives
// d1(s, i) = du^s/dx^i, and d2[s](i, j) = d^2 u^s / dx^i dx^j.
struct Jet {
  Vec value;
  Mat d1;
  std::vector<Mat> d2;
};

class GraphMap {
 public:
  using JetFn = std::function<Jet(const Vec&)>;

  // `axes` places the graph in R^n: domain coordinate i goes to ambient axis
  // axes[i], component s of u to axes[k + s]. Empty means the identity.
  // `orientation` is +1 for the orientation induced by the domain, -1 reversed.
  GraphMap(std::string name, int k, int n, Domain domain, JetFn jet, int orientation = 1, std::vector<int> axes = {});

  const std::string& name() const { return name_; }
  int k() const { return k_; }
  int n() const { return n_; }
  int codim() const { return n_ - k_; }
  const Domain& domain() const { return domain_; }
  int orientation() const { return orientation_; }
  const std::vector<int>& axes() const { return axes_; }

  Jet jet(const Vec& x) const;
  Vec value(const Vec& x) const { return jet(x).value; }
  // (x, u(x)) in ambient coordinates.
  Vec point(const Vec& x) const;
  // Columns (e_i, du/dx^i) in ambient coordinates, sign of the orientation on
  // the first column. Not orthonormalized.
  Mat tangent_vectors(const Vec& x) const;

  GraphMap with_orientation(int orientation) const;
  GraphMap with_axes(std::vector<int> axes) const;

 private:
  std::string name_;
  int k_;
  int n_;
  Domain domain_;
  JetFn jet_;
  int orientation_;
  std::vector<int> axes_;
};

struct MetricData {
  Mat g;
  Mat g_inv;
  double F;
};

// g = I + Du^T Du, its inverse and F = sqrt(det g); Du is (n-k) x k.
MetricData area_integrand(const Mat& du);

// (g^{ij} u^s_{ij})_s at x.
Vec mss_residual(const GraphMap& u, const Vec& x);

// a^{ij}(p) = W^{-1}(delta_ij - p_i p_j / W^2), W = sqrt(1 + |p|^2).
Mat mse_coefficients(const Vec& p);
// d a^{ij} / d p_l, returned as l -> matrix.
std::vector<Mat> mse_coefficient_derivatives(const Vec& p);

SimplePlane tangent_plane(const GraphMap& u, const Vec& x);

// max over samples of 1 - <phi at (x, u(x)), tangent plane>.
double graph_calibrated_defect(const GraphMap& u, const FormField& phi, std::span<const Vec> samples);

// Sum of arctan of the Hessian eigenvalues of a scalar potential.
double slag_phase(const Mat& hessian);
double slag_phase(const GraphMap& potential, const Vec& x);

// --- explicit examples -----------------------------------------------------

inline constexpr double kLocInnerRadius = 0.1;

// (sqrt5/2)|x| H(x/|x|), H the Hopf map with z1 = x1 + i x2, z2 = x3 + i x4,
// returned as (Re w, Im w, h) for H = (w, h) = (2 conj(z1) z2, |z1|^2 - |z2|^2).
Vec lawson_osserman_map(const Vec& x);
// Analytic jet of the map above.
Jet lawson_osserman_jet(const Vec& x);
// Graph of the LOC placed in R^7 as it is calibrated by the coassociative
// form: ambient (x5, x6, x7) = (h, -Im w, Re w), orientation reversed.
GraphMap lawson_osserman_graph(double inner_radius = kLocInnerRadius, double outer_radius = 1.0);

// Graph of a complex polynomial f (coefficients of z^0, z^1, ...) in
// C^2 = R^4 with the Kaehler coordinate order (x1, x2, y1, y2).
GraphMap holomorphic_graph(std::vector<double> real_coeffs, std::vector<double> imag_coeffs = {}, double radius = 1.0);

// u(x) = A x + b over the box [-1, 1]^k; A is (n-k) x k.
GraphMap affine_graph(const Mat& a, const Vec& b, double half_width = 1.0);

// u = log(cos y / cos x) on the box |x|, |y| <= half_width < pi/2.
GraphMap scherk_graph(double half_width = 1.0);

// Scalar potential u = 1/2 sum c_i x_i^2 on [-1, 1]^m (k = m, n = m + 1).
GraphMap quadratic_potential(const Vec& c);
// Graph of Du for the potential above in C^m = (x^1..x^m, y^1..y^m).
GraphMap quadratic_gradient_graph(const Vec& c);

// Mean curvature of the Simons cone {|x| = |y|} in R^8 via the divergence of
// the unit normal of f = |x|^2 - |y|^2.
double simons_mean_curvature(const Vec& p);
double simons_mean_curvature_fd(const Vec& p, double h);

// --- difference operator ---------------------------------------------------

// Coefficients of L w = a~^{ij} w^s_ij + b^s_{g l} w^g_l + c w for w = u - v.
// Codimension one: a~ = int_0^1 a(Dv + t(Du - Dv)) dt, b_l = int d_l a^{ij} H_ij
// dt along the same segment, c = 0. Higher codimension: the same with g^{ij}.
struct DifferenceOperator {
  Mat a;                  // k x k
  std::vector<Mat> b;     // per component s: (n-k) x k, b[s](g, l)
  double c = 0.0;
  double lambda = 0.0;    // ellipticity bracket [lambda, Lambda] of a
  double Lambda = 0.0;
  Vec residual_u;         // MSS residuals of u and v at x
  Vec residual_v;

  // L applied to a jet of w = u - v.
  Vec apply(const Jet& w) const;
};

struct DifferenceOptions {
  double residual_tolerance = 1e-6;
  // Lipschitz bound used for the bracket; <= 0 means the larger of |Du(x)|,
  // |Dv(x)|.
  double lipschitz = 0.0;
};

DifferenceOperator difference_operator(const GraphMap& u, const GraphMap& v, const Vec& x,
                                       const DifferenceOptions& options = {});

// Jet of u - v.
Jet jet_difference(const Jet& a, const Jet& b);

}  // namespace calibra
