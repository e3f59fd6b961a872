#include "calibra/region.hpp"

#include <cmath>

#include "calibra/error.hpp"

namespace calibra {

Domain Domain::whole(int dim) {
  Domain d;
  d.kind_ = Kind::whole;
  d.dim_ = dim;
  return d;
}

Domain Domain::box(Vec lo, Vec hi) {
  require(lo.size() == hi.size(), ErrorCode::dimension_mismatch, "box bounds of different size");
  require((lo.array() <= hi.array()).all(), ErrorCode::invalid_argument, "box lower bound exceeds upper bound");
  Domain d;
  d.kind_ = Kind::box;
  d.dim_ = static_cast<int>(lo.size());
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

Domain Domain::ball(Vec center, double radius) {
  require(radius > 0, ErrorCode::invalid_argument, "ball radius must be positive");
  Domain d;
  d.kind_ = Kind::ball;
  d.dim_ = static_cast<int>(center.size());
  d.center_ = std::move(center);
  d.outer_ = radius;
  return d;
}

Domain Domain::annulus(Vec center, double inner_radius, double outer_radius) {
  require(inner_radius > 0 && outer_radius > inner_radius, ErrorCode::invalid_argument,
          "annulus needs 0 < inner radius < outer radius");
  Domain d;
  d.kind_ = Kind::annulus;
  d.dim_ = static_cast<int>(center.size());
  d.center_ = std::move(center);
  d.inner_ = inner_radius;
  d.outer_ = outer_radius;
  return d;
}

bool Domain::contains(const Vec& x, double margin) const {
  if (x.size() != dim_) return false;
  if (!x.allFinite()) return false;
  switch (kind_) {
    case Kind::whole: return true;
    case Kind::box: return ((x.array() - margin) >= lo_.array()).all() && ((x.array() + margin) <= hi_.array()).all();
    case Kind::ball: return (x - center_).norm() + margin <= outer_;
    case Kind::annulus: {
      const double r = (x - center_).norm();
      return r - margin >= inner_ && r + margin <= outer_;
    }
  }
  return false;
}

Vec Domain::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec x(dim_);
  switch (kind_) {
    case Kind::whole:
      for (int i = 0; i < dim_; ++i) x[i] = 2.0 * unit(rng) - 1.0;
      return x;
    case Kind::box:
      for (int i = 0; i < dim_; ++i) x[i] = lo_[i] + (hi_[i] - lo_[i]) * unit(rng);
      return x;
    case Kind::ball:
    case Kind::annulus: {
      std::normal_distribution<double> gauss(0.0, 1.0);
      Vec dir(dim_);
      do {
        for (int i = 0; i < dim_; ++i) dir[i] = gauss(rng);
      } while (dir.norm() < 1e-12);
      dir.normalize();
      // Radius with density proportional to r^{m-1} on [inner, outer].
      const double m = static_cast<double>(dim_);
      const double a = std::pow(inner_, m);
      const double b = std::pow(outer_, m);
      const double r = std::pow(a + (b - a) * unit(rng), 1.0 / m);
      return center_ + r * dir;
    }
  }
  return x;
}

Region::Region(int dim, Domain base) : dim_(dim), base_(std::move(base)) {
  require(base_.dim() <= dim, ErrorCode::dimension_mismatch, "region base has more coordinates than the ambient space");
}

bool Region::contains(const Vec& p, double margin) const {
  if (p.size() != dim_ || !p.allFinite()) return false;
  return base_.contains(p.head(base_.dim()), margin);
}

Vec Region::sample(std::mt19937_64& rng, double free_extent) const {
  Vec p(dim_);
  p.head(base_.dim()) = base_.sample(rng);
  std::uniform_real_distribution<double> unit(-free_extent, free_extent);
  for (int i = base_.dim(); i < dim_; ++i) p[i] = unit(rng);
  return p;
}

}  // namespace calibra
