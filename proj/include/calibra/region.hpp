#pragma once

#include <limits>
#include <random>

#include <Eigen/Dense>

namespace calibra {

using Vec = Eigen::VectorXd;

// Subset of R^m: all of it, an axis box, a closed ball, or a closed annulus.
class Domain {
 public:
  enum class Kind { whole, box, ball, annulus };

  static Domain whole(int dim);
  static Domain box(Vec lo, Vec hi);
  static Domain ball(Vec center, double radius);
  static Domain annulus(Vec center, double inner_radius, double outer_radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  const Vec& center() const { return center_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }

  // True when the closed ball of radius `margin` around x lies in the domain.
  bool contains(const Vec& x, double margin = 0.0) const;
  // Uniform sample; unbounded directions are sampled in [-1, 1].
  Vec sample(std::mt19937_64& rng) const;

 private:
  Kind kind_ = Kind::whole;
  int dim_ = 0;
  Vec lo_, hi_, center_;
  double inner_ = 0.0;
  double outer_ = std::numeric_limits<double>::infinity();
};

// Region of R^n whose first base().dim() coordinates lie in `base`; the
// remaining coordinates are unconstrained.
class Region {
 public:
  Region() = default;
  Region(int dim, Domain base);
  static Region whole(int dim) { return Region(dim, Domain::whole(dim)); }

  int dim() const { return dim_; }
  const Domain& base() const { return base_; }
  bool contains(const Vec& p, double margin = 0.0) const;
  // Free coordinates are sampled in [-free_extent, free_extent].
  Vec sample(std::mt19937_64& rng, double free_extent = 1.0) const;

 private:
  int dim_ = 0;
  Domain base_ = Domain::whole(0);
};

}  // namespace calibra
