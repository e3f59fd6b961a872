#include "calibra/grassmannian.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace calibra {

namespace {

Mat orthonormalize(const Eigen::Ref<const Mat>& vectors, bool check_rank) {
  const Eigen::Index n = vectors.rows();
  const Eigen::Index k = vectors.cols();
  Eigen::HouseholderQR<Mat> qr(vectors);
  Mat q = qr.householderQ() * Mat::Identity(n, k);
  const Mat& r = qr.matrixQR();
  const double scale = std::max(1.0, vectors.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < k; ++j) {
    if (check_rank && std::abs(r(j, j)) <= 1e-12 * scale) {
      fail(ErrorCode::precondition_failed, "plane_from_frame: vectors are linearly dependent");
    }
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return q;
}

// Columns of an orthonormal basis of the complement of span(frame).
Mat complement_of(const Eigen::Ref<const Mat>& frame) {
  const Eigen::Index n = frame.rows();
  const Eigen::Index k = frame.cols();
  Mat stacked(n, k + n);
  stacked << frame, Mat::Identity(n, n);
  Eigen::HouseholderQR<Mat> qr(stacked);
  Mat q = qr.householderQ();
  const Mat& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return q.rightCols(n - k);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Objective {
  std::function<double(const Mat&)> value;
  // Tangent ascent direction at an orthonormal frame (n x k).
  std::function<Mat(const Mat&, double)> direction;
};

GrassmannMaximum run_ascent(const Objective& obj, int k, int n, const AscentOptions& options) {
  require(options.restarts >= 1, ErrorCode::invalid_argument, "restarts must be >= 1");
  require(k >= 1 && k <= n, ErrorCode::degree_overflow, "plane dimension must satisfy 1 <= k <= n");

  auto checked = [](double v) {
    if (!std::isfinite(v)) fail(ErrorCode::non_finite, "objective returned a non-finite value");
    return v;
  };

  Mat best_frame;
  double best_value = -std::numeric_limits<double>::infinity();
  int best_restart = -1;

  for (int restart = 0; restart < options.restarts; ++restart) {
    std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(restart)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat start(n, k);
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < n; ++r) start(r, c) = gauss(rng);
    Mat frame = orthonormalize(start, false);
    double value = checked(obj.value(frame));
    double step = 1.0;

    for (int it = 0; it < options.iterations; ++it) {
      const Mat dir = obj.direction(frame, value);
      const double g2 = dir.squaredNorm();
      if (!std::isfinite(g2)) fail(ErrorCode::non_finite, "objective gradient is not finite");
      if (g2 < options.gradient_tolerance * options.gradient_tolerance) break;
      bool accepted = false;
      const Mat frame_before = frame;
      for (double s = step; s > 1e-14; s *= 0.5) {
        Mat trial = orthonormalize(frame_before + s * dir, false);
        const double tv = checked(obj.value(trial));
        if (tv >= value + 1e-4 * s * g2) {
          frame = std::move(trial);
          value = tv;
          // Keep halving while it still helps; long steps overshoot and
          // zig-zag across the maximum.
          for (s *= 0.5; s > 1e-14; s *= 0.5) {
            Mat shorter = orthonormalize(frame_before + s * dir, false);
            const double sv = checked(obj.value(shorter));
            if (sv <= value) break;
            frame = std::move(shorter);
            value = sv;
          }
          step = std::min(4.0 * s, 4.0);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    if (value > best_value) {
      best_value = value;
      best_frame = frame;
      best_restart = restart;
    }
  }
  return {plane_from_frame(best_frame), best_value, best_restart};
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

double small_determinant(const Eigen::Ref<const Mat>& m) {
  const Eigen::Index k = m.rows();
  switch (k) {
    case 0: return 1.0;
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: return m.partialPivLu().determinant();
  }
}

SimplePlane plane_from_frame(const Eigen::Ref<const Mat>& vectors) {
  const int n = static_cast<int>(vectors.rows());
  const int k = static_cast<int>(vectors.cols());
  require(k >= 1 && k <= n, ErrorCode::degree_overflow, "plane_from_frame: need 1 <= k <= n");
  require(vectors.allFinite(), ErrorCode::non_finite, "plane_from_frame: non-finite input");
  Mat q = orthonormalize(vectors, true);
  KVector p = wedge_of_columns(q);
  return SimplePlane(std::move(q), std::move(p));
}

KVector wedge_of_columns(const Eigen::Ref<const Mat>& columns) {
  const int n = static_cast<int>(columns.rows());
  const int k = static_cast<int>(columns.cols());
  KVector out(k, n);
  if (k == 0) {
    out.add_term(MultiIndex(), 1.0);
    return out;
  }
  Mat sub(k, k);
  // Gosper's hack over k-subsets of n bits.
  std::uint64_t set = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (set < limit) {
    int row = 0;
    for (std::uint64_t m = set; m != 0; m &= m - 1) sub.row(row++) = columns.row(std::countr_zero(m));
    out.add_term(MultiIndex(static_cast<std::uint32_t>(set)), small_determinant(sub));
    const std::uint64_t c = set & (~set + 1);
    const std::uint64_t r = set + c;
    set = (((r ^ set) >> 2) / c) | r;
  }
  return out;
}

double plane_angle(const SimplePlane& a, const SimplePlane& b) {
  require(a.k() == b.k() && a.n() == b.n(), ErrorCode::dimension_mismatch, "plane_angle: planes of different shape");
  const double c = std::clamp(inner(a.plucker(), b.plucker()), -1.0, 1.0);
  return std::acos(c);
}

Mat complete_basis(const SimplePlane& plane) {
  const Eigen::Index n = plane.n();
  Mat basis(n, n);
  basis << plane.frame(), complement_of(plane.frame());
  return basis;
}

PairingFunctional::PairingFunctional(const KCovector& phi) : k_(phi.degree()), n_(phi.dim()) {
  for (const auto& [index, c] : phi.terms()) terms_.push_back({index.axes0(), c});
}

double PairingFunctional::value(const Eigen::Ref<const Mat>& frame) const {
  require(frame.rows() == n_ && frame.cols() == k_, ErrorCode::dimension_mismatch, "pairing: frame shape mismatch");
  Mat sub(k_, k_);
  double acc = 0.0;
  for (const Term& t : terms_) {
    for (int r = 0; r < k_; ++r) sub.row(r) = frame.row(t.rows[r]);
    acc += t.coeff * small_determinant(sub);
  }
  return acc;
}

Mat PairingFunctional::gradient(const Eigen::Ref<const Mat>& frame) const {
  Mat grad = Mat::Zero(n_, k_);
  Mat sub(k_, k_);
  Mat minor(std::max(k_ - 1, 0), std::max(k_ - 1, 0));
  for (const Term& t : terms_) {
    for (int r = 0; r < k_; ++r) sub.row(r) = frame.row(t.rows[r]);
    // d det / d sub(r, c) is the (r, c) cofactor.
    for (int r = 0; r < k_; ++r) {
      for (int c = 0; c < k_; ++c) {
        for (int rr = 0, mr = 0; rr < k_; ++rr) {
          if (rr == r) continue;
          for (int cc = 0, mc = 0; cc < k_; ++cc) {
            if (cc == c) continue;
            minor(mr, mc++) = sub(rr, cc);
          }
          ++mr;
        }
        const double sign = ((r + c) & 1) ? -1.0 : 1.0;
        grad(t.rows[r], c) += t.coeff * sign * small_determinant(minor);
      }
    }
  }
  return grad;
}

GrassmannMaximum maximize_over_grassmannian(const PlaneFunctional& f, int k, int n, const AscentOptions& options) {
  require(static_cast<bool>(f), ErrorCode::invalid_argument, "maximize_over_grassmannian: empty functional");
  const double h = options.fd_step;
  Objective obj;
  obj.value = [&](const Mat& frame) { return f(plane_from_frame(frame)); };
  obj.direction = [&, h](const Mat& frame, double) {
    const Mat normals = complement_of(frame);
    Mat dir = Mat::Zero(n, k);
    const double c = std::cos(h);
    const double s = std::sin(h);
    for (int i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < normals.cols(); ++j) {
        Mat plus = frame;
        Mat minus = frame;
        plus.col(i) = c * frame.col(i) + s * normals.col(j);
        minus.col(i) = c * frame.col(i) - s * normals.col(j);
        const double g = (f(plane_from_frame(plus)) - f(plane_from_frame(minus))) / (2.0 * h);
        dir.col(i) += g * normals.col(j);
      }
    }
    return dir;
  };
  return run_ascent(obj, k, n, options);
}

GrassmannMaximum maximize_pairing(const KCovector& phi, const AscentOptions& options) {
  const PairingFunctional functional(phi);
  const int k = phi.degree();
  const int n = phi.dim();
  Objective obj;
  obj.value = [&](const Mat& frame) { return functional.value(frame); };
  obj.direction = [&](const Mat& frame, double) {
    const Mat grad = functional.gradient(frame);
    return Mat(grad - frame * (frame.transpose() * grad));
  };
  return run_ascent(obj, k, n, options);
}

}  // namespace calibra
