#pragma once

// Finite-difference Newton solver for the minimal surface equation on a disc
// with Dirichlet data, exposed as a GraphMap.

#include <functional>
#include <memory>

#include "calibra/graph_mss.hpp"

namespace calibra {

struct DiscSolveOptions {
  int nodes = 41;          // grid nodes per side of [-R, R]^2
  double radius = 1.0;
  double tolerance = 1e-12;
  int max_iterations = 50;
};

class DiscMseSolution {
 public:
  int nodes() const { return nodes_; }
  double spacing() const { return h_; }
  double radius() const { return radius_; }
  int newton_iterations() const { return iterations_; }
  // Max |(1 + u_y^2) u_xx - 2 u_x u_y u_xy + (1 + u_x^2) u_yy| over unknowns.
  double max_residual() const { return residual_; }

  Vec node(int i, int j) const;
  bool is_unknown(int i, int j) const;
  // Grid indices (i, j) of the unknowns.
  const std::vector<std::pair<int, int>>& unknowns() const { return unknowns_; }
  // Central-difference jet at an unknown node.
  Jet node_jet(int i, int j) const;
  double value(int i, int j) const;

  // Bilinear interpolation of the nodal jets on the disc of radius R - 3h.
  GraphMap graph(std::string name = "graph:disc") const;

 private:
  friend DiscMseSolution solve_mse_disc(const std::function<double(double, double)>& boundary,
                                        const DiscSolveOptions& options);
  int nodes_ = 0;
  double h_ = 0.0;
  double radius_ = 0.0;
  int iterations_ = 0;
  double residual_ = 0.0;
  std::vector<double> values_;
  std::vector<char> unknown_;
  std::vector<std::pair<int, int>> unknowns_;
};

DiscMseSolution solve_mse_disc(const std::function<double(double, double)>& boundary,
                               const DiscSolveOptions& options = {});

// Dirichlet data of the bundled disc example.
double default_disc_boundary(double x, double y);
// Second disc example, used for difference-operator checks.
double alternate_disc_boundary(double x, double y);

}  // namespace calibra
