#pragma once

// Comass computation, closedness checks, contact sets and the two rigidity
// verifiers (first cousins, unique completion of a (k-1)-plane).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "calibra/grassmannian.hpp"
#include "calibra/region.hpp"

namespace calibra {

// Degree-k differential form on a region of R^n.
class FormField {
 public:
  using Evaluator = std::function<KCovector(const Vec&)>;

  FormField(std::string name, int degree, int dim, Region region, Evaluator evaluator, bool constant);
  // Constant form on all of R^n.
  static FormField constant(std::string name, KCovector value);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const Region& region() const { return region_; }
  bool is_constant() const { return constant_; }

  // phi_p; throws out_of_region outside the region.
  KCovector at(const Vec& p) const;

  FormField scaled(double factor) const;

 private:
  std::string name_;
  int degree_;
  int dim_;
  Region region_;
  Evaluator evaluator_;
  bool constant_;
};

inline constexpr double kContactTolerance = 1e-6;
inline constexpr double kCousinTolerance = 1e-8;

struct ComassResult {
  double value;
  SimplePlane argmax;
};

// sup over G(k, R^n) of <phi, xi> for a single covector.
ComassResult comass(const KCovector& phi, const AscentOptions& options = {});
ComassResult comass_at(const FormField& phi, const Vec& p, const AscentOptions& options = {});

struct GlobalComass {
  double value;
  Vec argmax_point;
  SimplePlane argmax_plane;
  std::vector<double> per_point;
};

// Maximum of comass_at over the samples. Constant forms are optimized once.
GlobalComass comass_global(const FormField& phi, std::span<const Vec> samples, const AscentOptions& options = {});

// Central-difference d(phi) at p; requires the ball of radius 2h around p.
KCovector exterior_derivative_numeric(const FormField& phi, const Vec& p, double h);

// Form field p -> d(phi)_p computed by exterior_derivative_numeric; its region
// is phi's region shrunk by 2h.
FormField exterior_derivative_field(const FormField& phi, double h);

// Options shared by the contact-set verifiers. When `known_comass` is set the
// comass precondition uses it instead of running the optimizer.
struct ContactOptions {
  double tolerance = kContactTolerance;
  AscentOptions ascent{};
  std::optional<double> known_comass{};
};

struct ContactReport {
  Vec point;
  SimplePlane plane;
  double value;     // <phi_p, xi>
  double residual;  // 1 - value
  double comass;
  bool member;
};

ContactReport contact_membership(const FormField& phi, const Vec& p, const SimplePlane& plane,
                                 const ContactOptions& options = {});

// <phi, xi_ij> for all first cousins xi_ij = e_{k+j} ^ (e_i _| xi) of the
// plane, using the deterministic basis completion. Entry (j, i).
Mat first_cousin_pairings(const KCovector& phi, const SimplePlane& plane);

// Max |<phi_p, xi_ij>| over the cousins of a contact plane. Throws
// precondition_failed if phi_p is not comass one or the plane is not in the
// contact set.
double first_cousin_check(const FormField& phi, const Vec& p, const SimplePlane& plane,
                          const ContactOptions& options = {});

enum class CompletionKind { unique, none, multiple };

struct Completion {
  CompletionKind kind;
  Vec v;         // maximizer of <phi_p, eta ^ v> over unit v in eta^perp
  double value;  // the maximum, |w_perp|
};

// The unit vector v orthogonal to eta with eta ^ v in the contact set, if any.
// The maximum of v -> <phi_p, eta ^ v> over the unit sphere of eta^perp is
// |w_perp|, where w is the dual vector of the linear functional. More than one
// exact maximizer exists only when |w_perp| > 1, i.e. the comass exceeds one;
// that case is reported as `multiple`.
Completion complete_plane(const KCovector& phi_p, const Eigen::Ref<const Mat>& eta_frame,
                          double tolerance = kContactTolerance);
Completion complete_plane(const FormField& phi, const Vec& p, const SimplePlane& eta,
                          const ContactOptions& options = {});
// `eta` of degree k-1 must be simple with unit norm (degree 0: +-1).
Completion complete_plane(const FormField& phi, const Vec& p, const KVector& eta, const ContactOptions& options = {});

// Orthonormal frame spanning a simple k-vector, oriented to match it.
Mat frame_of_simple(const KVector& xi);

}  // namespace calibra
