#include "calibra/catalog.hpp"

#include <cmath>
#include <sstream>

#include "calibra/mse_solver.hpp"

namespace calibra {

namespace {

KCovector dx(int n, int axis1) { return KCovector::basis(n, MultiIndex::single(axis1 - 1)); }

KCovector dx(int n, std::initializer_list<int> axes1) {
  KCovector out = KCovector::scalar(n, 1.0);
  for (int a : axes1) out = wedge(out, dx(n, a));
  return out;
}

double binomial_factorial(int p) {
  double f = 1.0;
  for (int i = 2; i <= p; ++i) f *= i;
  return f;
}

std::vector<double> parse_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      require(used == item.size(), ErrorCode::parse_error, "bad number '" + item + "'");
    } catch (const std::logic_error&) {
      fail(ErrorCode::parse_error, "bad number '" + item + "'");
    }
  }
  return out;
}

double parse_number(const std::string& text) {
  const auto v = parse_numbers(text, ',');
  require(v.size() == 1, ErrorCode::parse_error, "expected a single number, got '" + text + "'");
  return v[0];
}

int parse_int(const std::string& text) {
  const double v = parse_number(text);
  require(v == std::floor(v) && std::abs(v) < 1e6, ErrorCode::parse_error, "expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

}  // namespace

FormField volume_form(int k, int n) {
  require(k >= 1 && k <= n && n <= kMaxDim, ErrorCode::invalid_argument, "volume form needs 1 <= k <= n");
  return FormField::constant("volume", KCovector::basis(n, MultiIndex::leading(k)));
}

KCovector kahler_covector(int m, int p) {
  require(m >= 1 && 2 * m <= kMaxDim, ErrorCode::invalid_argument, "Kaehler form needs m >= 1");
  require(p >= 1 && p <= m, ErrorCode::degree_overflow, "Kaehler power p must lie in [1, m]");
  const int n = 2 * m;
  KCovector omega(2, n);
  for (int j = 1; j <= m; ++j) omega += dx(n, {j, m + j});
  KCovector power = omega;
  for (int i = 1; i < p; ++i) power = wedge(power, omega);
  return power * (1.0 / binomial_factorial(p));
}

FormField kahler_form(int m, int p) {
  return FormField::constant(p == 1 ? "kahler" : "kahler:" + std::to_string(p), kahler_covector(m, p));
}

KCovector slag_covector(int m, double theta) {
  require(m >= 1 && 2 * m <= kMaxDim, ErrorCode::invalid_argument, "special Lagrangian form needs m >= 1");
  const int n = 2 * m;
  KCovector out(m, n);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (std::uint32_t subset = 0; subset < (1u << m); ++subset) {
    // i^{|S|} = a + i b.
    const int q = std::popcount(subset) % 4;
    const double a = q == 0 ? 1.0 : (q == 2 ? -1.0 : 0.0);
    const double b = q == 1 ? 1.0 : (q == 3 ? -1.0 : 0.0);
    const double coeff = a * c + b * s;
    if (coeff == 0.0) continue;
    KCovector term = KCovector::scalar(n, coeff);
    for (int j = 1; j <= m; ++j) term = wedge(term, dx(n, (subset >> (j - 1)) & 1u ? m + j : j));
    out += term;
  }
  return out;
}

FormField slag_form(int m, double theta) {
  return FormField::constant(theta == 0.0 ? "slag-re" : "slag-re:" + std::to_string(theta), slag_covector(m, theta));
}

KCovector coassociative_covector() {
  const int n = 7;
  return dx(n, {1, 2, 3, 4}) - wedge(dx(n, {6, 7}), dx(n, {1, 2}) - dx(n, {3, 4})) +
         wedge(dx(n, {5, 7}), dx(n, {1, 3}) + dx(n, {2, 4})) - wedge(dx(n, {5, 6}), dx(n, {1, 4}) - dx(n, {2, 3}));
}

FormField coassociative_form() { return FormField::constant("coassociative", coassociative_covector()); }

FormField graph_calibration(const GraphMap& u) {
  require(u.codim() == 1, ErrorCode::invalid_argument, "graph calibration needs a scalar graph");
  const int k = u.k();
  const int n = k + 1;
  for (int i = 0; i < n; ++i) {
    require(u.axes()[i] == i, ErrorCode::invalid_argument, "graph calibration needs the standard axis placement");
  }
  // Coefficient basis fixed once: dx^{1..k} and dx^{1..i^..k} ^ dy.
  std::vector<KCovector> basis;
  basis.push_back(KCovector::basis(n, MultiIndex::leading(k)));
  for (int i = 0; i < k; ++i) {
    KCovector term = KCovector::scalar(n, 1.0);
    for (int a = 0; a < k; ++a)
      if (a != i) term = wedge(term, dx(n, a + 1));
    basis.push_back(wedge(term, dx(n, n)));
  }
  auto evaluator = [u, basis, k](const Vec& p) {
    const Jet j = u.jet(p.head(k));
    const double w = std::sqrt(1.0 + j.d1.squaredNorm());
    const double top = (k % 2 == 0) ? 1.0 : -1.0;
    KCovector out = basis[0] * (top / w);
    for (int i = 0; i < k; ++i) {
      const double sign = ((i + 1) % 2 == 0) ? 1.0 : -1.0;
      out += basis[i + 1] * (sign * j.d1(0, i) / w);
    }
    return out;
  };
  return FormField("graph:" + u.name(), k, n, Region(n, u.domain()), evaluator, false);
}

GraphMap graph_for_calibration(const GraphMap& u) { return u.with_orientation(u.k() % 2 == 0 ? 1 : -1); }

GraphMap graph_from_id(const std::string& id) {
  require(id.rfind("graph:", 0) == 0, ErrorCode::invalid_argument, "not a graph id: '" + id + "'");
  const std::string rest = id.substr(6);
  if (rest.rfind("flat:", 0) == 0) {
    const int k = parse_int(rest.substr(5));
    require(k >= 1 && k < kMaxDim, ErrorCode::invalid_argument, "graph:flat needs 1 <= n < 32");
    GraphMap g = affine_graph(Mat::Zero(1, k), Vec::Zero(1));
    return GraphMap(id, g.k(), g.n(), g.domain(), [g](const Vec& x) { return g.jet(x); });
  }
  if (rest.rfind("affine:", 0) == 0) {
    const auto a = parse_numbers(rest.substr(7), ',');
    require(!a.empty() && a.size() < kMaxDim, ErrorCode::invalid_argument, "graph:affine needs 1..31 slopes");
    Mat row(1, static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) row(0, static_cast<Eigen::Index>(i)) = a[i];
    GraphMap g = affine_graph(row, Vec::Zero(1));
    return GraphMap(id, g.k(), g.n(), g.domain(), [g](const Vec& x) { return g.jet(x); });
  }
  if (rest == "scherk") {
    GraphMap g = scherk_graph();
    return GraphMap(id, g.k(), g.n(), g.domain(), [g](const Vec& x) { return g.jet(x); });
  }
  if (rest == "disc") return solve_mse_disc(default_disc_boundary).graph(id);
  fail(ErrorCode::invalid_argument, "unknown graph id '" + id + "'");
}

FormField form_from_id(const std::string& id, int k, int dim) {
  if (id.rfind("scale:", 0) == 0) {
    const auto colon = id.find(':', 6);
    require(colon != std::string::npos, ErrorCode::parse_error, "scale id must be scale:<c>:<id>");
    const double c = parse_number(id.substr(6, colon - 6));
    return form_from_id(id.substr(colon + 1), k, dim).scaled(c);
  }
  if (id == "volume") return volume_form(k, dim);
  if (id == "kahler" || id.rfind("kahler:", 0) == 0) {
    require(dim % 2 == 0, ErrorCode::invalid_argument, "kahler needs an even dimension");
    const int p = id == "kahler" ? 1 : parse_int(id.substr(7));
    return kahler_form(dim / 2, p);
  }
  if (id == "slag-re" || id.rfind("slag-re:", 0) == 0) {
    require(dim % 2 == 0, ErrorCode::invalid_argument, "slag-re needs an even dimension");
    const double theta = id == "slag-re" ? 0.0 : parse_number(id.substr(8));
    return slag_form(dim / 2, theta);
  }
  if (id == "coassociative") return coassociative_form();
  if (id.rfind("graph:", 0) == 0) return graph_calibration(graph_from_id(id));
  fail(ErrorCode::invalid_argument, "unknown form id '" + id + "'");
}

std::vector<CatalogEntry> standard_calibrations() {
  std::vector<CatalogEntry> out;
  out.push_back({"volume:2:3", volume_form(2, 3)});
  out.push_back({"volume:3:5", volume_form(3, 5)});
  out.push_back({"kahler:R4", kahler_form(2, 1)});
  out.push_back({"kahler:R6", kahler_form(3, 1)});
  out.push_back({"kahler2:R6", kahler_form(3, 2)});
  out.push_back({"slag-re:C2", slag_form(2)});
  out.push_back({"slag-re:C3", slag_form(3)});
  out.push_back({"slag-re:C2:0.7", slag_form(2, 0.7)});
  out.push_back({"coassociative", coassociative_form()});
  out.push_back({"graph:flat:2", form_from_id("graph:flat:2")});
  out.push_back({"graph:affine:0.5,-0.3", form_from_id("graph:affine:0.5,-0.3")});
  out.push_back({"graph:scherk", form_from_id("graph:scherk")});
  return out;
}

}  // namespace calibra
