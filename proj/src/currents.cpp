#include "calibra/currents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "calibra/quadrature.hpp"

namespace calibra {

namespace {

int permutation_sign(std::vector<int> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[p[i]]);
      sign = -sign;
    }
  }
  return sign;
}

// Sign of the permutation taking tuple a to tuple b (same vertex set).
int relative_sign(const Simplex& a, const Simplex& b) {
  std::vector<int> p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    p[i] = static_cast<int>(std::find(a.begin(), a.end(), b[i]) - a.begin());
  }
  return permutation_sign(std::move(p));
}

std::vector<int> sorted(Simplex s) {
  std::sort(s.begin(), s.end());
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<Vec> vertices, const std::map<int, std::vector<Simplex>>& simplices)
    : vertices_(std::move(vertices)) {
  require(!vertices_.empty(), ErrorCode::invalid_argument, "complex has no vertices");
  dim_ = static_cast<int>(vertices_[0].size());
  require(dim_ >= 1 && dim_ <= kMaxDim, ErrorCode::invalid_argument, "ambient dimension must be in [1, 32]");
  for (const Vec& v : vertices_) {
    require(v.size() == dim_, ErrorCode::dimension_mismatch, "vertices of different dimension");
    require(v.allFinite(), ErrorCode::non_finite, "non-finite vertex coordinate");
  }
  int top = 0;
  for (const auto& [k, list] : simplices) {
    require(k >= 0 && k <= dim_, ErrorCode::degree_overflow, "simplex degree must lie in [0, dim]");
    if (!list.empty()) top = std::max(top, k);
  }
  simplices_.resize(top + 1);
  lookup_.resize(top + 1);
  const int nv = vertex_count();
  for (int v = 0; v < nv; ++v) {
    simplices_[0].push_back({v});
    lookup_[0][{v}] = v;
  }

  auto insert = [&](int k, const Simplex& s) {
    auto key = sorted(s);
    if (lookup_[k].count(key)) return;
    lookup_[k][key] = static_cast<int>(simplices_[k].size());
    simplices_[k].push_back(s);
  };

  for (const auto& [k, list] : simplices) {
    for (const Simplex& s : list) {
      require(static_cast<int>(s.size()) == k + 1, ErrorCode::invalid_argument,
              "a " + std::to_string(k) + "-simplex needs " + std::to_string(k + 1) + " vertices");
      for (int v : s) require(v >= 0 && v < nv, ErrorCode::invalid_argument, "simplex vertex index out of range");
      auto key = sorted(s);
      require(std::adjacent_find(key.begin(), key.end()) == key.end(), ErrorCode::invalid_argument,
              "simplex has a repeated vertex");
      if (k == 0) continue;
      insert(k, s);
    }
  }
  for (int k = top; k >= 1; --k) {
    for (std::size_t idx = 0; idx < simplices_[k].size(); ++idx) {
      const Simplex s = simplices_[k][idx];
      for (int i = 0; i <= k; ++i) {
        Simplex face;
        for (int j = 0; j <= k; ++j)
          if (j != i) face.push_back(s[j]);
        insert(k - 1, sorted(face));
      }
    }
  }

  boundary_.resize(top + 1);
  volume_.resize(top + 1);
  orientation_.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    IncidenceMatrix& b = boundary_[k];
    b.rows = k == 0 ? 0 : count(k - 1);
    b.cols = count(k);
    b.columns.resize(b.cols);
    for (int idx = 0; idx < count(k); ++idx) {
      const Simplex& s = simplices_[k][idx];
      if (k >= 1) {
        for (int i = 0; i <= k; ++i) {
          Simplex face;
          for (int j = 0; j <= k; ++j)
            if (j != i) face.push_back(s[j]);
          const auto found = find_oriented(face);
          const int sign = (i % 2 ? -1 : 1) * found->second;
          b.columns[idx].emplace_back(found->first, sign);
        }
        std::sort(b.columns[idx].begin(), b.columns[idx].end());
      }
      if (k == 0) {
        volume_[k].push_back(1.0);
        orientation_[k].push_back(KVector::scalar(dim_, 1.0));
        continue;
      }
      const Mat e = edge_vectors(k, idx);
      const double gram = (e.transpose() * e).determinant();
      const double vol = std::sqrt(std::max(gram, 0.0)) / factorial(k);
      const double scale = std::pow(e.colwise().norm().maxCoeff(), k) / factorial(k);
      require(vol > 1e-12 * scale && vol > 0.0, ErrorCode::precondition_failed,
              "degenerate " + std::to_string(k) + "-simplex " + std::to_string(idx));
      volume_[k].push_back(vol);
      KVector xi = wedge_of_columns(e);
      orientation_[k].push_back(xi * (1.0 / xi.norm()));
    }
  }

  // d o d = 0 on every degree.
  for (int k = 2; k <= top; ++k) {
    for (int idx = 0; idx < count(k); ++idx) {
      std::map<int, int> acc;
      for (const auto& [f, s1] : boundary_[k].columns[idx])
        for (const auto& [g, s2] : boundary_[k - 1].columns[f]) acc[g] += s1 * s2;
      for (const auto& [g, v] : acc) {
        require(v == 0, ErrorCode::precondition_failed, "boundary of boundary is not zero");
      }
    }
  }
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> empty;
  if (k < 0 || k > max_degree()) return empty;
  return simplices_[k];
}

std::optional<int> SimplicialComplex::find(const Simplex& s) const {
  const auto r = find_oriented(s);
  if (!r) return std::nullopt;
  return r->first;
}

std::optional<std::pair<int, int>> SimplicialComplex::find_oriented(const Simplex& s) const {
  const int k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > max_degree()) return std::nullopt;
  const auto key = sorted(s);
  if (std::adjacent_find(key.begin(), key.end()) != key.end()) return std::nullopt;
  auto it = lookup_[k].find(key);
  if (it == lookup_[k].end()) return std::nullopt;
  return std::make_pair(it->second, relative_sign(simplices_[k][it->second], s));
}

const IncidenceMatrix& SimplicialComplex::boundary_matrix(int k) const {
  require(k >= 1 && k <= max_degree(), ErrorCode::invalid_argument, "boundary matrix degree out of range");
  return boundary_[k];
}

double SimplicialComplex::volume(int k, int index) const {
  require(k >= 0 && k <= max_degree() && index >= 0 && index < count(k), ErrorCode::invalid_argument,
          "simplex index out of range");
  return volume_[k][index];
}

const KVector& SimplicialComplex::orientation(int k, int index) const {
  require(k >= 0 && k <= max_degree() && index >= 0 && index < count(k), ErrorCode::invalid_argument,
          "simplex index out of range");
  return orientation_[k][index];
}

Mat SimplicialComplex::edge_vectors(int k, int index) const {
  const Simplex& s = simplices(k).at(index);
  Mat e(dim_, k);
  for (int i = 1; i <= k; ++i) e.col(i - 1) = vertices_[s[i]] - vertices_[s[0]];
  return e;
}

std::pair<Vec, Vec> SimplicialComplex::bounding_box() const {
  Vec lo = vertices_[0];
  Vec hi = vertices_[0];
  for (const Vec& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

// --- chains ------------------------------------------------------------------

Chain::Chain(ComplexPtr complex, int degree) : complex_(std::move(complex)), degree_(degree) {
  require(complex_ != nullptr, ErrorCode::invalid_argument, "chain needs a complex");
  require(degree >= 0 && degree <= complex_->max_degree(), ErrorCode::degree_overflow,
          "chain degree exceeds the complex");
}

Chain::Chain(ComplexPtr complex, int degree, const std::map<int, std::int64_t>& coeffs)
    : Chain(std::move(complex), degree) {
  for (const auto& [i, c] : coeffs) add(i, c);
}

std::int64_t Chain::coeff(int index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? 0 : it->second;
}

void Chain::add(int index, std::int64_t value) {
  require(index >= 0 && index < complex_->count(degree_), ErrorCode::invalid_argument,
          "chain coefficient on a simplex outside the complex");
  if (value == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coeffs_.erase(it);
  }
}

std::vector<std::int64_t> Chain::dense() const {
  std::vector<std::int64_t> out(complex_->count(degree_), 0);
  for (const auto& [i, c] : coeffs_) out[i] = c;
  return out;
}

void Chain::check_compatible(const Chain& o) const {
  require(complex_ == o.complex_, ErrorCode::invalid_argument, "chains live on different complexes");
  require(degree_ == o.degree_, ErrorCode::invalid_argument, "chains of different degree");
}

Chain& Chain::operator+=(const Chain& o) {
  check_compatible(o);
  for (const auto& [i, c] : o.coeffs_) add(i, c);
  return *this;
}

Chain& Chain::operator-=(const Chain& o) {
  check_compatible(o);
  for (const auto& [i, c] : o.coeffs_) add(i, -c);
  return *this;
}

Chain& Chain::operator*=(std::int64_t s) {
  if (s == 0) coeffs_.clear();
  for (auto& [_, c] : coeffs_) c *= s;
  return *this;
}

bool operator==(const Chain& a, const Chain& b) {
  return a.complex_ == b.complex_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

DiscreteCochain::DiscreteCochain(ComplexPtr complex, int degree, std::vector<double> values)
    : complex_(std::move(complex)), degree_(degree), values_(std::move(values)) {
  require(complex_ != nullptr, ErrorCode::invalid_argument, "cochain needs a complex");
  require(degree >= 0 && degree <= complex_->max_degree(), ErrorCode::degree_overflow,
          "cochain degree exceeds the complex");
  require(static_cast<int>(values_.size()) == complex_->count(degree), ErrorCode::dimension_mismatch,
          "cochain needs one value per simplex");
  for (double v : values_) require(std::isfinite(v), ErrorCode::non_finite, "non-finite cochain value");
}

double DiscreteCochain::evaluate(const Chain& chain) const {
  require(chain.complex() == complex_ && chain.degree() == degree_, ErrorCode::invalid_argument,
          "cochain and chain do not match");
  double acc = 0.0;
  for (const auto& [i, c] : chain.coeffs()) acc += static_cast<double>(c) * values_[i];
  return acc;
}

Chain boundary(const Chain& t) {
  require(t.degree() >= 1, ErrorCode::invalid_argument, "boundary of a 0-chain is not defined");
  const IncidenceMatrix& m = t.complex()->boundary_matrix(t.degree());
  Chain out(t.complex(), t.degree() - 1);
  for (const auto& [i, c] : t.coeffs())
    for (const auto& [r, s] : m.columns[i]) out.add(r, c * s);
  return out;
}

double mass(const Chain& t) {
  double acc = 0.0;
  for (const auto& [i, c] : t.coeffs()) acc += std::abs(static_cast<double>(c)) * t.complex()->volume(t.degree(), i);
  return acc;
}

double integrate_simplex(const SimplicialComplex& complex, int k, int index, const FormField& phi, int quad_order) {
  require(phi.degree() == k, ErrorCode::invalid_argument, "form degree differs from the simplex degree");
  require(phi.dim() == complex.dim(), ErrorCode::dimension_mismatch, "form and complex live in different spaces");
  const Simplex& s = complex.simplices(k).at(index);
  const KVector& xi = complex.orientation(k, index);
  if (k == 0) return pair(phi.at(complex.vertices()[s[0]]), xi);
  const SimplexRule& rule = grundmann_moeller(k, quad_order);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    Vec x = Vec::Zero(complex.dim());
    for (int j = 0; j <= k; ++j) x += rule.barycentric[q][j] * complex.vertices()[s[j]];
    acc += rule.weights[q] * pair(phi.at(x), xi);
  }
  return acc * complex.volume(k, index);
}

double pair(const Chain& t, const FormField& phi, int quad_order) {
  double acc = 0.0;
  for (const auto& [i, c] : t.coeffs()) {
    acc += static_cast<double>(c) * integrate_simplex(*t.complex(), t.degree(), i, phi, quad_order);
  }
  return acc;
}

double calibration_defect(const Chain& t, const FormField& phi, const CalibrationDefectOptions& options) {
  require(phi.degree() == t.degree() && t.degree() >= 1, ErrorCode::invalid_argument,
          "calibration_defect: degree mismatch");
  const SimplicialComplex& cx = *t.complex();
  const SimplexRule& rule = grundmann_moeller(t.degree(), options.quad_order);
  std::optional<double> constant_comass;
  auto check = [&](const Vec& x) {
    double c;
    if (phi.is_constant()) {
      if (!constant_comass) constant_comass = comass_at(phi, x, options.ascent).value;
      c = *constant_comass;
    } else {
      c = comass_at(phi, x, options.ascent).value;
    }
    if (c > 1.0 + options.tolerance) {
      fail(ErrorCode::precondition_failed, "calibration_defect: form has comass " + std::to_string(c) + " > 1");
    }
  };
  for (const auto& [i, _] : t.coeffs()) {
    const Simplex& s = cx.simplices(t.degree())[i];
    for (const Vec& b : rule.barycentric) {
      Vec x = Vec::Zero(cx.dim());
      for (int j = 0; j <= t.degree(); ++j) x += b[j] * cx.vertices()[s[j]];
      check(x);
      if (phi.is_constant()) break;
    }
  }
  return mass(t) - pair(t, phi, options.quad_order);
}

// --- density -----------------------------------------------------------------

namespace {

// Centroids of the m^k Kuhn pieces of {1 >= t1 >= ... >= tk >= 0}.
std::vector<Vec> kuhn_centroids(int k, int m) {
  std::vector<Vec> out;
  if (k == 0) {
    out.emplace_back(0);
    return out;
  }
  std::vector<int> perm(k);
  std::vector<int> c(k, 0);
  std::function<void(int, int)> cells = [&](int slot, int upper) {
    if (slot == k) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<int> pos(k);
        for (int l = 0; l < k; ++l) pos[perm[l]] = l;
        bool ok = true;
        for (int i = 0; i + 1 < k && ok; ++i)
          if (c[i] == c[i + 1] && pos[i] > pos[i + 1]) ok = false;
        if (!ok) continue;
        Vec t(k);
        for (int i = 0; i < k; ++i) t[i] = (c[i] + static_cast<double>(k - pos[i]) / (k + 1)) / m;
        out.push_back(std::move(t));
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int v = 0; v <= upper; ++v) {
      c[slot] = v;
      cells(slot + 1, v);
    }
  };
  cells(0, m - 1);
  return out;
}

double unit_ball_volume(int k) { return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0); }

}  // namespace

std::vector<double> density_estimate(const Chain& t, const Vec& p, const std::vector<double>& radii, int levels) {
  const SimplicialComplex& cx = *t.complex();
  require(p.size() == cx.dim(), ErrorCode::dimension_mismatch, "density point has the wrong dimension");
  require(levels >= 0 && levels <= 8, ErrorCode::invalid_argument, "density subdivision levels must be in [0, 8]");
  const auto [lo, hi] = cx.bounding_box();
  const double slack = 1e-12 * std::max(1.0, (hi - lo).norm());
  require(((p.array() >= lo.array() - slack) && (p.array() <= hi.array() + slack)).all(), ErrorCode::out_of_region,
          "density point outside the complex bounding box");
  for (double r : radii) require(r > 0 && std::isfinite(r), ErrorCode::invalid_argument, "radii must be positive");

  const int k = t.degree();
  const int m = 1 << levels;
  const std::vector<Vec> centroids = kuhn_centroids(k, m);
  std::vector<double> inside(radii.size(), 0.0);
  for (const auto& [idx, c] : t.coeffs()) {
    const Simplex& s = cx.simplices(k)[idx];
    const double piece = std::abs(static_cast<double>(c)) * cx.volume(k, idx) / static_cast<double>(centroids.size());
    for (const Vec& tc : centroids) {
      Vec x = cx.vertices()[s[0]];
      for (int i = 0; i < k; ++i) x += tc[i] * (cx.vertices()[s[i + 1]] - cx.vertices()[s[i]]);
      const double d = (x - p).norm();
      for (std::size_t r = 0; r < radii.size(); ++r)
        if (d <= radii[r]) inside[r] += piece;
    }
  }
  std::vector<double> out(radii.size());
  for (std::size_t r = 0; r < radii.size(); ++r) out[r] = inside[r] / (unit_ball_volume(k) * std::pow(radii[r], k));
  return out;
}

// --- filling -----------------------------------------------------------------

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Extended gcd: g = x a + y b, g >= 0.
void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

}  // namespace

std::optional<Chain> fill_cycle(const Chain& t) {
  const int k = t.degree();
  const ComplexPtr& cx = t.complex();
  if (k >= 1 && !boundary(t).empty()) fail(ErrorCode::precondition_failed, "fill_cycle: chain is not a cycle");
  if (k + 1 > cx->max_degree()) return std::nullopt;
  const IncidenceMatrix& b = cx->boundary_matrix(k + 1);
  const int rows = b.rows;
  const int cols = b.cols;
  // Column operations on H = B, mirrored on U so that B U = H throughout.
  std::vector<std::vector<BigInt>> h(cols, std::vector<BigInt>(rows, 0));
  std::vector<std::vector<BigInt>> u(cols, std::vector<BigInt>(cols, 0));
  for (int j = 0; j < cols; ++j) {
    for (const auto& [r, s] : b.columns[j]) h[j][r] = s;
    u[j][j] = 1;
  }
  std::vector<std::pair<int, int>> pivots;  // (row, column)
  int p = 0;
  for (int r = 0; r < rows && p < cols; ++r) {
    for (int j = p + 1; j < cols; ++j) {
      if (h[j][r] == 0) continue;
      if (h[p][r] == 0) {
        std::swap(h[p], h[j]);
        std::swap(u[p], u[j]);
        continue;
      }
      BigInt g, x, y;
      ext_gcd(h[p][r], h[j][r], g, x, y);
      const BigInt a = h[p][r] / g;
      const BigInt c = h[j][r] / g;
      for (int rr = 0; rr < rows; ++rr) {
        const BigInt hp = h[p][rr], hj = h[j][rr];
        if (hp == 0 && hj == 0) continue;
        h[p][rr] = x * hp + y * hj;
        h[j][rr] = -c * hp + a * hj;
      }
      for (int cc = 0; cc < cols; ++cc) {
        const BigInt up = u[p][cc], uj = u[j][cc];
        if (up == 0 && uj == 0) continue;
        u[p][cc] = x * up + y * uj;
        u[j][cc] = -c * up + a * uj;
      }
    }
    if (h[p][r] != 0) {
      pivots.emplace_back(r, p);
      ++p;
    }
  }
  // Forward substitution H y = T.
  std::vector<BigInt> target(rows, 0);
  for (const auto& [i, c] : t.coeffs()) target[i] = c;
  std::vector<BigInt> yv(cols, 0);
  for (const auto& [r, col] : pivots) {
    BigInt acc = target[r];
    for (int q = 0; q < col; ++q)
      if (yv[q] != 0) acc -= h[q][r] * yv[q];
    if (acc % h[col][r] != 0) return std::nullopt;
    yv[col] = acc / h[col][r];
  }
  for (int r = 0; r < rows; ++r) {
    BigInt acc = 0;
    for (int q = 0; q < cols; ++q)
      if (yv[q] != 0) acc += h[q][r] * yv[q];
    if (acc != target[r]) return std::nullopt;
  }
  Chain s(cx, k + 1);
  for (int q = 0; q < cols; ++q) {
    if (yv[q] == 0) continue;
    for (int j = 0; j < cols; ++j) {
      if (u[q][j] == 0) continue;
      const BigInt v = u[q][j] * yv[q];
      require(boost::multiprecision::abs(v) < BigInt(std::numeric_limits<std::int64_t>::max() / 4),
              ErrorCode::resource_limit, "fill_cycle: filling coefficients overflow 64 bits");
      s.add(j, static_cast<std::int64_t>(v));
    }
  }
  require(boundary(s) == t, ErrorCode::precondition_failed, "fill_cycle: internal check failed");
  return s;
}

// --- cones -------------------------------------------------------------------

Cone cone_chain(const Chain& link, const Vec& apex, double sphere_tolerance) {
  const SimplicialComplex& cx = *link.complex();
  require(apex.size() == cx.dim(), ErrorCode::dimension_mismatch, "apex has the wrong dimension");
  require(!link.empty(), ErrorCode::invalid_argument, "cone over an empty chain");
  const int k = link.degree();
  require(k + 1 <= cx.dim(), ErrorCode::degree_overflow, "cone degree exceeds the ambient dimension");

  std::optional<double> radius;
  for (const auto& [idx, _] : link.coeffs()) {
    for (int v : cx.simplices(k)[idx]) {
      const double d = (cx.vertices()[v] - apex).norm();
      require(d > 1e-12, ErrorCode::invalid_argument, "apex coincides with a link vertex");
      if (!radius) radius = d;
      require(std::abs(d - *radius) <= sphere_tolerance * *radius, ErrorCode::precondition_failed,
              "link is not on a sphere around the apex");
    }
  }

  std::vector<Vec> vertices = cx.vertices();
  const int a = static_cast<int>(vertices.size());
  vertices.push_back(apex);
  std::map<int, std::vector<Simplex>> simplices;
  for (const auto& [idx, _] : link.coeffs()) {
    const Simplex& s = cx.simplices(k)[idx];
    Simplex c{a};
    c.insert(c.end(), s.begin(), s.end());
    simplices[k + 1].push_back(std::move(c));
    if (k >= 1) simplices[k].push_back(s);
  }
  auto complex = std::make_shared<const SimplicialComplex>(std::move(vertices), simplices);
  Cone out{complex, Chain(complex, k + 1), Chain(complex, k)};
  for (const auto& [idx, c] : link.coeffs()) {
    const Simplex& s = cx.simplices(k)[idx];
    Simplex cs{a};
    cs.insert(cs.end(), s.begin(), s.end());
    const auto cone_idx = complex->find_oriented(cs);
    out.chain.add(cone_idx->first, c * cone_idx->second);
    const auto link_idx = complex->find_oriented(s);
    out.link.add(link_idx->first, c * link_idx->second);
  }
  return out;
}

double stokes_check(const Chain& t, const FormField& psi, double h, int quad_order) {
  require(t.degree() >= 1 && psi.degree() == t.degree() - 1, ErrorCode::invalid_argument,
          "stokes_check: psi must have degree k - 1");
  const FormField dpsi = exterior_derivative_field(psi, h);
  return std::abs(pair(boundary(t), psi, quad_order) - pair(t, dpsi, quad_order));
}

}  // namespace calibra
