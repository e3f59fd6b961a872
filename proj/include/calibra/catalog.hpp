#pragma once

// Named calibrations: volume, Kaehler powers, special Lagrangian, the
// coassociative 4-form and the graph calibration of a minimal graph.

#include <string>
#include <vector>

#include "calibra/graph_mss.hpp"

namespace calibra {

// dx^1 ^ ... ^ dx^k on R^n.
FormField volume_form(int k, int n);

// omega^p / p! on R^{2m}, omega = sum_j dx^j ^ dy^j with coordinates
// (x^1..x^m, y^1..y^m).
FormField kahler_form(int m, int p = 1);
KCovector kahler_covector(int m, int p = 1);

// Re(e^{-i theta} dz^1 ^ ... ^ dz^m), z^j = x^j + i y^j.
FormField slag_form(int m, double theta = 0.0);
KCovector slag_covector(int m, double theta = 0.0);

FormField coassociative_form();
KCovector coassociative_covector();

// For a scalar graph u on Omega in R^n:
// (-1)^n W^{-1} dx^{1..n} + sum_i (-1)^i u_i W^{-1} dx^{1..i^..n} ^ dy,
// W = sqrt(1 + |Du|^2), frozen in y. It pairs to +1 with the graph oriented
// by (-1)^n times the domain orientation, see graph_for_calibration().
FormField graph_calibration(const GraphMap& u);
GraphMap graph_for_calibration(const GraphMap& u);

// Resolves a catalog id:
//   volume, kahler[:p], slag-re[:theta], coassociative,
//   graph:flat:<n>, graph:affine:<a1,a2,...>, graph:scherk, graph:disc,
//   scale:<c>:<id>.
// `k` and `dim` are used by ids without intrinsic dimensions (volume takes
// both, kahler and slag-re take dim = 2m).
FormField form_from_id(const std::string& id, int k = 2, int dim = 4);

// Graph behind a graph:* id.
GraphMap graph_from_id(const std::string& id);

struct CatalogEntry {
  std::string id;
  FormField form;
};

// The calibrations used by the property checks. Graph forms come from exact
// solutions only (flat, affine, Scherk).
std::vector<CatalogEntry> standard_calibrations();

}  // namespace calibra
