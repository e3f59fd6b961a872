#include "calibra/calibration.hpp"

#include <algorithm>
#include <cmath>

namespace calibra {

FormField::FormField(std::string name, int degree, int dim, Region region, Evaluator evaluator, bool constant)
    : name_(std::move(name)),
      degree_(degree),
      dim_(dim),
      region_(std::move(region)),
      evaluator_(std::move(evaluator)),
      constant_(constant) {
  require(degree >= 0 && degree <= dim, ErrorCode::degree_overflow, "form degree must be in [0, dim]");
  require(region_.dim() == dim, ErrorCode::dimension_mismatch, "form region dimension mismatch");
  require(static_cast<bool>(evaluator_), ErrorCode::invalid_argument, "form evaluator is empty");
}

FormField FormField::constant(std::string name, KCovector value) {
  const int degree = value.degree();
  const int dim = value.dim();
  return FormField(std::move(name), degree, dim, Region::whole(dim), [v = std::move(value)](const Vec&) { return v; },
                   true);
}

KCovector FormField::at(const Vec& p) const {
  require(p.size() == dim_, ErrorCode::dimension_mismatch, "point has the wrong dimension for form '" + name_ + "'");
  if (!region_.contains(p)) fail(ErrorCode::out_of_region, "point outside the region of form '" + name_ + "'");
  KCovector v = evaluator_(p);
  require(v.degree() == degree_ && v.dim() == dim_, ErrorCode::invalid_argument,
          "evaluator of '" + name_ + "' returned a covector of the wrong shape");
  return v;
}

FormField FormField::scaled(double factor) const {
  auto inner = evaluator_;
  std::string label = "scale:" + std::to_string(factor) + ":" + name_;
  return FormField(label, degree_, dim_, region_, [inner, factor](const Vec& p) { return factor * inner(p); },
                   constant_);
}

ComassResult comass(const KCovector& phi, const AscentOptions& options) {
  if (phi.degree() == 0) {
    // G(0, R^n) is the single point 1.
    fail(ErrorCode::invalid_argument, "comass of a 0-form is not defined here");
  }
  auto best = maximize_pairing(phi, options);
  return {best.value, std::move(best.plane)};
}

ComassResult comass_at(const FormField& phi, const Vec& p, const AscentOptions& options) {
  return comass(phi.at(p), options);
}

GlobalComass comass_global(const FormField& phi, std::span<const Vec> samples, const AscentOptions& options) {
  require(!samples.empty(), ErrorCode::invalid_argument, "comass_global: empty sample set");
  std::optional<ComassResult> shared;
  if (phi.is_constant()) shared = comass_at(phi, samples.front(), options);

  std::optional<GlobalComass> out;
  std::vector<double> per_point;
  per_point.reserve(samples.size());
  for (const Vec& p : samples) {
    ComassResult r = shared ? ComassResult{shared->value, shared->argmax} : comass_at(phi, p, options);
    if (shared) (void)phi.at(p);  // region check for every sample
    per_point.push_back(r.value);
    if (!out || r.value > out->value) out = GlobalComass{r.value, p, r.argmax, {}};
  }
  out->per_point = std::move(per_point);
  return *out;
}

KCovector exterior_derivative_numeric(const FormField& phi, const Vec& p, double h) {
  require(h > 0, ErrorCode::invalid_argument, "step must be positive");
  require(phi.degree() < phi.dim(), ErrorCode::degree_overflow, "d of a top-degree form is zero by degree");
  if (!phi.region().contains(p, 2.0 * h)) fail(ErrorCode::out_of_region, "difference stencil exits the region");
  const int n = phi.dim();
  KCovector out(phi.degree() + 1, n);
  Vec shifted = p;
  for (int j = 0; j < n; ++j) {
    shifted[j] = p[j] + h;
    KCovector forward = phi.at(shifted);
    shifted[j] = p[j] - h;
    KCovector backward = phi.at(shifted);
    shifted[j] = p[j];
    KCovector partial = (forward - backward) * (1.0 / (2.0 * h));
    out += wedge(KCovector::basis(n, MultiIndex::single(j)), partial);
  }
  return out;
}

FormField exterior_derivative_field(const FormField& phi, double h) {
  const Region& r = phi.region();
  const Domain& b = r.base();
  Domain shrunk = b;
  const double m = 2.0 * h;
  switch (b.kind()) {
    case Domain::Kind::whole: break;
    case Domain::Kind::box: shrunk = Domain::box(b.lo().array() + m, b.hi().array() - m); break;
    case Domain::Kind::ball: shrunk = Domain::ball(b.center(), b.outer_radius() - m); break;
    case Domain::Kind::annulus: shrunk = Domain::annulus(b.center(), b.inner_radius() + m, b.outer_radius() - m); break;
  }
  return FormField("d(" + phi.name() + ")", phi.degree() + 1, phi.dim(), Region(phi.dim(), shrunk),
                   [phi, h](const Vec& p) { return exterior_derivative_numeric(phi, p, h); }, phi.is_constant());
}

namespace {

double checked_comass(const FormField& phi, const Vec& p, const ContactOptions& options) {
  const double c = options.known_comass ? *options.known_comass : comass_at(phi, p, options.ascent).value;
  if (std::abs(c - 1.0) > options.tolerance) {
    fail(ErrorCode::precondition_failed,
         "form '" + phi.name() + "' does not have comass one at the point (comass " + std::to_string(c) + ")");
  }
  return c;
}

}  // namespace

ContactReport contact_membership(const FormField& phi, const Vec& p, const SimplePlane& plane,
                                 const ContactOptions& options) {
  require(plane.k() == phi.degree() && plane.n() == phi.dim(), ErrorCode::dimension_mismatch,
          "contact_membership: plane shape does not match the form");
  const double c = checked_comass(phi, p, options);
  const double value = pair(phi.at(p), plane.plucker());
  return {p, plane, value, 1.0 - value, c, value >= 1.0 - options.tolerance};
}

Mat first_cousin_pairings(const KCovector& phi, const SimplePlane& plane) {
  require(plane.k() == phi.degree() && plane.n() == phi.dim(), ErrorCode::dimension_mismatch,
          "first cousins: plane shape does not match the form");
  const int k = plane.k();
  const int n = plane.n();
  const Mat basis = complete_basis(plane);
  const KVector& xi = plane.plucker();
  Mat out(n - k, k);
  for (int i = 0; i < k; ++i) {
    const Vec ei = basis.col(i);
    const KVector contracted = interior(std::span<const double>(ei.data(), n), xi);
    for (int j = 0; j < n - k; ++j) {
      const Vec ej = basis.col(k + j);
      const KVector cousin = wedge(KVector::from_coordinates(std::span<const double>(ej.data(), n)), contracted);
      out(j, i) = pair(phi, cousin);
    }
  }
  return out;
}

double first_cousin_check(const FormField& phi, const Vec& p, const SimplePlane& plane, const ContactOptions& options) {
  const ContactReport contact = contact_membership(phi, p, plane, options);
  if (!contact.member) {
    fail(ErrorCode::precondition_failed,
         "first_cousin_check: plane is not in the contact set (value " + std::to_string(contact.value) + ")");
  }
  const Mat pairings = first_cousin_pairings(phi.at(p), plane);
  return pairings.size() == 0 ? 0.0 : pairings.cwiseAbs().maxCoeff();
}

Completion complete_plane(const KCovector& phi_p, const Eigen::Ref<const Mat>& eta_frame, double tolerance) {
  const int n = phi_p.dim();
  const int k = phi_p.degree();
  require(eta_frame.rows() == n && eta_frame.cols() == k - 1, ErrorCode::dimension_mismatch,
          "complete_plane: eta must have degree k-1");
  // w_m = <phi, eta ^ e_m>, read off as the gradient in the last frame slot.
  Mat frame(n, k);
  frame.leftCols(k - 1) = eta_frame;
  frame.col(k - 1).setZero();
  const Vec w = PairingFunctional(phi_p).gradient(frame).col(k - 1);
  const Vec w_perp = w - eta_frame * (eta_frame.transpose() * w);
  const double value = w_perp.norm();
  if (value < 1.0 - tolerance) return {CompletionKind::none, Vec::Zero(n), value};
  const Vec v = w_perp / value;
  if (value > 1.0 + tolerance) return {CompletionKind::multiple, v, value};
  return {CompletionKind::unique, v, value};
}

Completion complete_plane(const FormField& phi, const Vec& p, const SimplePlane& eta, const ContactOptions& options) {
  require(eta.n() == phi.dim() && eta.k() == phi.degree() - 1, ErrorCode::dimension_mismatch,
          "complete_plane: eta must be a (k-1)-plane in R^n");
  checked_comass(phi, p, options);
  return complete_plane(phi.at(p), eta.frame(), options.tolerance);
}

Mat frame_of_simple(const KVector& xi) {
  const int n = xi.dim();
  const int k = xi.degree();
  require(!xi.is_zero(), ErrorCode::invalid_argument, "zero k-vector has no frame");
  if (k == 0) return Mat(n, 0);
  require(is_simple(xi), ErrorCode::precondition_failed, "k-vector is not simple");
  // span(xi) = { v : v ^ xi = 0 }.
  const KVector scaled = xi * (1.0 / xi.norm());
  std::vector<MultiIndex> rows;
  std::vector<KVector> images;
  for (int a = 0; a < n; ++a) {
    images.push_back(wedge(KVector::basis(n, MultiIndex::single(a)), scaled));
    for (const auto& [idx, _] : images.back().terms()) rows.push_back(idx);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Mat m = Mat::Zero(std::max<std::size_t>(rows.size(), 1), n);
  for (int a = 0; a < n; ++a) {
    for (const auto& [idx, c] : images[a].terms()) {
      const auto r = std::lower_bound(rows.begin(), rows.end(), idx) - rows.begin();
      m(r, a) = c;
    }
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  // The k smallest singular values belong to the kernel.
  Mat frame = svd.matrixV().rightCols(k);
  const SimplePlane plane = plane_from_frame(frame);
  Mat oriented = plane.frame();
  if (inner(plane.plucker(), scaled) < 0) oriented.col(0) *= -1.0;
  return oriented;
}

Completion complete_plane(const FormField& phi, const Vec& p, const KVector& eta, const ContactOptions& options) {
  require(eta.dim() == phi.dim() && eta.degree() == phi.degree() - 1, ErrorCode::dimension_mismatch,
          "complete_plane: eta must be a (k-1)-vector in R^n");
  require(!eta.is_zero() && std::abs(eta.norm() - 1.0) <= 1e-10, ErrorCode::invalid_argument,
          "complete_plane: eta must have unit norm");
  require(eta.degree() == 0 || is_simple(eta), ErrorCode::invalid_argument, "complete_plane: eta is not simple");
  checked_comass(phi, p, options);
  Mat frame = frame_of_simple(eta);
  if (eta.degree() == 0) {
    // eta = -1 reverses the orientation of every completion.
    const double sign = eta.coeff(MultiIndex()) < 0 ? -1.0 : 1.0;
    return complete_plane(sign * phi.at(p), frame, options.tolerance);
  }
  return complete_plane(phi.at(p), frame, options.tolerance);
}

}  // namespace calibra
