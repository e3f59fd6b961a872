#pragma once

// Simplicial complexes in R^n, integral chains, real cochains and the
// operations on them: boundary, mass, pairing with forms, density, filling
// cycles, cones.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "calibra/calibration.hpp"

namespace calibra {

using Simplex = std::vector<int>;  // oriented vertex tuple

// Sparse integer matrix stored by columns: column j lists (row, entry).
struct IncidenceMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, int>>> columns;
};

class SimplicialComplex {
 public:
  // Top-level simplices of any degree; missing faces are added with sorted
  // vertex order. Given simplices keep their orientation. Degree-0 simplices
  // are the vertices in order.
  SimplicialComplex(std::vector<Vec> vertices, const std::map<int, std::vector<Simplex>>& simplices);

  int dim() const { return dim_; }
  int max_degree() const { return static_cast<int>(simplices_.size()) - 1; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  // Simplices of degree k (empty for k outside [0, max_degree]).
  const std::vector<Simplex>& simplices(int k) const;
  int count(int k) const { return static_cast<int>(simplices(k).size()); }
  std::optional<int> find(const Simplex& s) const;
  // Index of the stored simplex with the same vertex set and the relative sign.
  std::optional<std::pair<int, int>> find_oriented(const Simplex& s) const;

  // Boundary of degree-k simplices as a (k-1)-by-k incidence matrix.
  const IncidenceMatrix& boundary_matrix(int k) const;
  double volume(int k, int index) const;
  const KVector& orientation(int k, int index) const;
  Mat edge_vectors(int k, int index) const;  // columns v_i - v_0
  std::pair<Vec, Vec> bounding_box() const;

 private:
  int dim_;
  std::vector<Vec> vertices_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<std::vector<int>, int>> lookup_;  // sorted tuple -> index
  std::vector<IncidenceMatrix> boundary_;
  std::vector<std::vector<double>> volume_;
  std::vector<std::vector<KVector>> orientation_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

class Chain {
 public:
  Chain(ComplexPtr complex, int degree);
  Chain(ComplexPtr complex, int degree, const std::map<int, std::int64_t>& coeffs);

  const ComplexPtr& complex() const { return complex_; }
  int degree() const { return degree_; }
  const std::map<int, std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t coeff(int index) const;
  void add(int index, std::int64_t value);
  bool empty() const { return coeffs_.empty(); }
  std::vector<std::int64_t> dense() const;

  Chain& operator+=(const Chain& o);
  Chain& operator-=(const Chain& o);
  Chain& operator*=(std::int64_t s);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(std::int64_t s, Chain a) { return a *= s; }
  friend bool operator==(const Chain& a, const Chain& b);

 private:
  void check_compatible(const Chain& o) const;
  ComplexPtr complex_;
  int degree_;
  std::map<int, std::int64_t> coeffs_;
};

class DiscreteCochain {
 public:
  DiscreteCochain(ComplexPtr complex, int degree, std::vector<double> values);
  const ComplexPtr& complex() const { return complex_; }
  int degree() const { return degree_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(int index) const { return values_.at(index); }
  double evaluate(const Chain& chain) const;

 private:
  ComplexPtr complex_;
  int degree_;
  std::vector<double> values_;
};

Chain boundary(const Chain& t);
double mass(const Chain& t);

inline constexpr int kDefaultQuadratureOrder = 4;

// T(phi) by per-simplex Grundmann-Moeller quadrature.
double pair(const Chain& t, const FormField& phi, int quad_order = kDefaultQuadratureOrder);
// phi integrated over a single oriented simplex.
double integrate_simplex(const SimplicialComplex& complex, int k, int index, const FormField& phi,
                         int quad_order = kDefaultQuadratureOrder);

struct CalibrationDefectOptions {
  double tolerance = 1e-6;
  int quad_order = kDefaultQuadratureOrder;
  AscentOptions ascent{};
};

// mass(T) - T(phi) after checking comass(phi) <= 1 + tol at the simplex
// quadrature nodes.
double calibration_defect(const Chain& t, const FormField& phi, const CalibrationDefectOptions& options = {});

inline constexpr int kDensityLevels = 4;

// M(T restricted to B_r(p)) / (omega_k r^k) for each r; simplices are cut
// into (2^levels)^k congruent pieces and a piece counts when its centroid lies
// in the ball.
std::vector<double> density_estimate(const Chain& t, const Vec& p, const std::vector<double>& radii,
                                     int levels = kDensityLevels);

// S with boundary(S) = T, or nullopt when T is a cycle that bounds nothing in
// the complex. Throws precondition_failed when T is not a cycle.
std::optional<Chain> fill_cycle(const Chain& t);

struct Cone {
  ComplexPtr complex;
  Chain chain;          // apex * link
  Chain link;           // the link transported into the cone complex
};

// Cone apex * sigma over each simplex sigma of the link, as [apex, v0..vk].
Cone cone_chain(const Chain& link, const Vec& apex, double sphere_tolerance = 1e-9);

// |boundary(T)(psi) - T(d psi)| with d psi by central differences of step h.
double stokes_check(const Chain& t, const FormField& psi, double h = 1e-3, int quad_order = 6);

}  // namespace calibra
