#include "calibra/mse_solver.hpp"

#include <cmath>

#include <Eigen/SparseLU>

namespace calibra {

double default_disc_boundary(double x, double y) { return 0.3 * x * y + 0.2 * x; }

double alternate_disc_boundary(double x, double y) { return 0.25 * (x * x - y * y) - 0.15 * y + 0.1; }

Vec DiscMseSolution::node(int i, int j) const {
  Vec p(2);
  p << -radius_ + i * h_, -radius_ + j * h_;
  return p;
}

bool DiscMseSolution::is_unknown(int i, int j) const {
  if (i < 0 || j < 0 || i >= nodes_ || j >= nodes_) return false;
  return unknown_[i * nodes_ + j] != 0;
}

double DiscMseSolution::value(int i, int j) const {
  require(i >= 0 && j >= 0 && i < nodes_ && j < nodes_, ErrorCode::out_of_region, "grid index out of range");
  return values_[i * nodes_ + j];
}

Jet DiscMseSolution::node_jet(int i, int j) const {
  require(is_unknown(i, j), ErrorCode::out_of_region, "jets are defined at interior nodes only");
  auto u = [&](int a, int b) { return values_[a * nodes_ + b]; };
  const double h = h_;
  Jet jet;
  jet.value = Vec::Constant(1, u(i, j));
  jet.d1 = Mat(1, 2);
  jet.d1 << (u(i + 1, j) - u(i - 1, j)) / (2 * h), (u(i, j + 1) - u(i, j - 1)) / (2 * h);
  const double uxx = (u(i + 1, j) - 2 * u(i, j) + u(i - 1, j)) / (h * h);
  const double uyy = (u(i, j + 1) - 2 * u(i, j) + u(i, j - 1)) / (h * h);
  const double uxy = (u(i + 1, j + 1) - u(i - 1, j + 1) - u(i + 1, j - 1) + u(i - 1, j - 1)) / (4 * h * h);
  jet.d2.assign(1, Mat(2, 2));
  jet.d2[0] << uxx, uxy, uxy, uyy;
  return jet;
}

GraphMap DiscMseSolution::graph(std::string name) const {
  auto self = std::make_shared<const DiscMseSolution>(*this);
  auto jet = [self](const Vec& x) {
    const double fx = (x[0] + self->radius_) / self->h_;
    const double fy = (x[1] + self->radius_) / self->h_;
    const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, self->nodes_ - 2);
    const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, self->nodes_ - 2);
    const double s = fx - i;
    const double t = fy - j;
    Jet out{Vec::Zero(1), Mat::Zero(1, 2), {Mat::Zero(2, 2)}};
    const double w[2][2] = {{(1 - s) * (1 - t), (1 - s) * t}, {s * (1 - t), s * t}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Jet c = self->node_jet(i + a, j + b);
        out.value += w[a][b] * c.value;
        out.d1 += w[a][b] * c.d1;
        out.d2[0] += w[a][b] * c.d2[0];
      }
    }
    return out;
  };
  return GraphMap(std::move(name), 2, 3, Domain::ball(Vec::Zero(2), radius_ - 3.0 * h_), jet);
}

DiscMseSolution solve_mse_disc(const std::function<double(double, double)>& boundary,
                               const DiscSolveOptions& options) {
  require(options.nodes >= 5, ErrorCode::invalid_argument, "disc solver needs at least 5 nodes per side");
  require(options.radius > 0, ErrorCode::invalid_argument, "disc radius must be positive");
  DiscMseSolution sol;
  const int n = options.nodes;
  sol.nodes_ = n;
  sol.radius_ = options.radius;
  sol.h_ = 2.0 * options.radius / (n - 1);
  sol.values_.assign(n * n, 0.0);
  sol.unknown_.assign(n * n, 0);

  std::vector<int> slot(n * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec p = sol.node(i, j);
      sol.values_[i * n + j] = boundary(p[0], p[1]);
      const bool inside = i > 0 && j > 0 && i < n - 1 && j < n - 1 && p.norm() < options.radius - 1e-12;
      if (inside) {
        sol.unknown_[i * n + j] = 1;
        slot[i * n + j] = static_cast<int>(sol.unknowns_.size());
        sol.unknowns_.emplace_back(i, j);
      }
    }
  }
  const int m = static_cast<int>(sol.unknowns_.size());
  require(m > 0, ErrorCode::invalid_argument, "disc grid has no interior nodes");
  const double h = sol.h_;
  auto& u = sol.values_;
  auto at = [&](int a, int b) { return u[a * n + b]; };

  Vec residual(m);
  auto evaluate = [&](std::vector<Eigen::Triplet<double>>* jac) {
    for (int r = 0; r < m; ++r) {
      const auto [i, j] = sol.unknowns_[r];
      const double ux = (at(i + 1, j) - at(i - 1, j)) / (2 * h);
      const double uy = (at(i, j + 1) - at(i, j - 1)) / (2 * h);
      const double uxx = (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (h * h);
      const double uyy = (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (h * h);
      const double uxy = (at(i + 1, j + 1) - at(i - 1, j + 1) - at(i + 1, j - 1) + at(i - 1, j - 1)) / (4 * h * h);
      residual[r] = (1 + uy * uy) * uxx - 2 * ux * uy * uxy + (1 + ux * ux) * uyy;
      if (!jac) continue;
      const double f_ux = 2 * ux * uyy - 2 * uy * uxy;
      const double f_uy = 2 * uy * uxx - 2 * ux * uxy;
      const double f_uxx = 1 + uy * uy;
      const double f_uyy = 1 + ux * ux;
      const double f_uxy = -2 * ux * uy;
      auto add = [&](int a, int b, double v) {
        const int c = slot[a * n + b];
        if (c >= 0 && v != 0.0) jac->emplace_back(r, c, v);
      };
      add(i, j, -2 * f_uxx / (h * h) - 2 * f_uyy / (h * h));
      add(i + 1, j, f_ux / (2 * h) + f_uxx / (h * h));
      add(i - 1, j, -f_ux / (2 * h) + f_uxx / (h * h));
      add(i, j + 1, f_uy / (2 * h) + f_uyy / (h * h));
      add(i, j - 1, -f_uy / (2 * h) + f_uyy / (h * h));
      add(i + 1, j + 1, f_uxy / (4 * h * h));
      add(i - 1, j - 1, f_uxy / (4 * h * h));
      add(i - 1, j + 1, -f_uxy / (4 * h * h));
      add(i + 1, j - 1, -f_uxy / (4 * h * h));
    }
  };

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::vector<Eigen::Triplet<double>> triplets;
    evaluate(&triplets);
    if (residual.cwiseAbs().maxCoeff() <= options.tolerance) break;
    Eigen::SparseMatrix<double> jac(m, m);
    jac.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(jac);
    require(lu.info() == Eigen::Success, ErrorCode::precondition_failed, "disc solver: singular Newton matrix");
    const Vec delta = lu.solve(-residual);
    for (int r = 0; r < m; ++r) {
      const auto [i, j] = sol.unknowns_[r];
      u[i * n + j] += delta[r];
    }
    require(delta.allFinite(), ErrorCode::non_finite, "disc solver diverged");
  }
  evaluate(nullptr);
  sol.iterations_ = it;
  sol.residual_ = residual.cwiseAbs().maxCoeff();
  if (sol.residual_ > std::max(options.tolerance, 1e-9)) {
    fail(ErrorCode::precondition_failed, "disc solver did not converge (residual " + std::to_string(sol.residual_) + ")");
  }
  return sol;
}

}  // namespace calibra
