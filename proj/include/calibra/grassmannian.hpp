#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "calibra/exterior_algebra.hpp"

namespace calibra {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Oriented k-plane through the origin: an orthonormal frame (columns) and
// its unit Pluecker k-vector v1 ^ ... ^ vk.
class SimplePlane {
 public:
  int k() const { return static_cast<int>(frame_.cols()); }
  int n() const { return static_cast<int>(frame_.rows()); }
  const Mat& frame() const { return frame_; }
  const KVector& plucker() const { return plucker_; }

 private:
  friend SimplePlane plane_from_frame(const Eigen::Ref<const Mat>& vectors);
  SimplePlane(Mat frame, KVector plucker) : frame_(std::move(frame)), plucker_(std::move(plucker)) {}

  Mat frame_;
  KVector plucker_;
};

// Orthonormalizes the columns of `vectors` keeping the orientation (QR with
// positive diagonal). Throws precondition_failed on rank-deficient input.
SimplePlane plane_from_frame(const Eigen::Ref<const Mat>& vectors);

// All k x k minors of an n x k matrix, i.e. the wedge of its columns.
KVector wedge_of_columns(const Eigen::Ref<const Mat>& columns);

// arccos <plucker(a), plucker(b)> in [0, pi].
double plane_angle(const SimplePlane& a, const SimplePlane& b);

// Orthonormal basis of R^n whose first k columns are the plane's frame,
// obtained from a Householder QR of [frame | I] with non-negative diagonal.
Mat complete_basis(const SimplePlane& plane);

// Determinant of a small dense square matrix (partial-pivot elimination).
double small_determinant(const Eigen::Ref<const Mat>& m);

struct AscentOptions {
  int restarts = 64;
  int iterations = 200;
  std::uint64_t seed = 0;
  double fd_step = 1e-5;
  double gradient_tolerance = 1e-12;
};

struct GrassmannMaximum {
  SimplePlane plane;
  double value;
  int restart;  // index of the winning restart
};

using PlaneFunctional = std::function<double(const SimplePlane&)>;

// Multi-start Riemannian ascent over G(k, R^n). Gradients are central
// differences along the rotations v_i -> cos t v_i + sin t n_j.
GrassmannMaximum maximize_over_grassmannian(const PlaneFunctional& f, int k, int n, const AscentOptions& options = {});

// Same engine for the linear functional xi -> <phi, xi>, with the exact
// gradient taken from cofactors of the frame minors.
GrassmannMaximum maximize_pairing(const KCovector& phi, const AscentOptions& options = {});

// Fast evaluation of <phi, v1 ^ ... ^ vk> straight from the frame.
class PairingFunctional {
 public:
  explicit PairingFunctional(const KCovector& phi);

  int k() const { return k_; }
  int n() const { return n_; }
  double value(const Eigen::Ref<const Mat>& frame) const;
  // Euclidean gradient with respect to the frame entries (n x k).
  Mat gradient(const Eigen::Ref<const Mat>& frame) const;

 private:
  struct Term {
    std::vector<int> rows;
    double coeff;
  };
  int k_;
  int n_;
  std::vector<Term> terms_;
};

// Sub-seed for restart `index`; stable across runs and schedules.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace calibra
