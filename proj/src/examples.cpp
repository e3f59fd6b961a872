#include "calibra/examples.hpp"

#include <cctype>
#include <cmath>
#include <random>
#include <sstream>

namespace calibra {

bool VerifyReport::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

std::vector<Vec> domain_samples(const Domain& d, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(d.sample(rng));
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::invalid_argument, "bad number '" + s + "' in " + what);
}

std::vector<double> split_reals(const std::string& s, char sep, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(parse_real(item, what));
  require(!out.empty(), ErrorCode::invalid_argument, "empty list in " + what);
  return out;
}

CheckResult at_most(std::string name, double value, double limit) {
  return {std::move(name), value, limit, std::isfinite(value) && value <= limit};
}

// Residual, calibration defect and first-cousin checks of a graph against a
// form known to have comass one.
void graph_checks(VerifyReport& r, const GraphMap& g, const FormField& phi, const std::vector<Vec>& xs, double tol) {
  double residual = 0.0;
  double cousins = 0.0;
  ContactOptions contact;
  contact.tolerance = tol;
  contact.known_comass = 1.0;
  for (const Vec& x : xs) residual = std::max(residual, mss_residual(g, x).cwiseAbs().maxCoeff());
  const double defect = graph_calibrated_defect(g, phi, xs);
  r.checks.push_back(at_most("mss_residual", residual, tol));
  r.checks.push_back(at_most("calibration_defect", defect, tol));
  if (defect > tol) return;
  for (const Vec& x : xs) cousins = std::max(cousins, first_cousin_check(phi, g.point(x), tangent_plane(g, x), contact));
  r.checks.push_back(at_most("first_cousins", cousins, tol));
}

KCovector dual_of(const KVector& xi) {
  KCovector out(xi.degree(), xi.dim());
  for (const auto& [idx, c] : xi.terms()) out.add_term(idx, c);
  return out;
}

Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
  return v / v.norm();
}

}  // namespace

std::vector<double> parse_polynomial(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  require(!s.empty(), ErrorCode::invalid_argument, "empty polynomial");
  std::vector<double> coeffs;
  std::size_t pos = 0;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') {
      // exponent notation such as 1e-3
      if ((s[end] == 'e' || s[end] == 'E') && end + 1 < s.size() && (s[end + 1] == '+' || s[end + 1] == '-')) ++end;
      ++end;
    }
    const std::string term = s.substr(pos, end - pos);
    require(!term.empty(), ErrorCode::invalid_argument, "malformed polynomial '" + text + "'");
    const std::size_t z = term.find('z');
    double c = 1.0;
    int power = 0;
    if (z == std::string::npos) {
      c = parse_real(term, "polynomial");
    } else {
      std::string head = term.substr(0, z);
      if (!head.empty() && head.back() == '*') head.pop_back();
      if (!head.empty()) c = parse_real(head, "polynomial");
      const std::string tail = term.substr(z + 1);
      if (tail.empty()) {
        power = 1;
      } else {
        require(tail[0] == '^', ErrorCode::invalid_argument, "malformed term '" + term + "'");
        const double p = parse_real(tail.substr(1), "polynomial exponent");
        require(p >= 0 && p <= 16 && p == std::floor(p), ErrorCode::invalid_argument,
                "exponent must be an integer in [0, 16]");
        power = static_cast<int>(p);
      }
    }
    if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(power + 1, 0.0);
    coeffs[power] += sign * c;
    pos = end;
  }
  return coeffs;
}

VerifyReport verify_example(const std::string& id, const VerifyOptions& options) {
  require(options.samples >= 1, ErrorCode::invalid_argument, "verify: samples must be positive");
  require(options.tolerance > 0, ErrorCode::invalid_argument, "verify: tolerance must be positive");
  VerifyReport r{id, {}};
  const double tol = options.tolerance;
  const auto split = id.find(':');
  const std::string head = id.substr(0, split);
  const std::string arg = split == std::string::npos ? "" : id.substr(split + 1);

  if (id == "loc") {
    const GraphMap g = lawson_osserman_graph();
    const auto xs = domain_samples(g.domain(), options.samples, options.seed);
    graph_checks(r, g, coassociative_form(), xs, tol);
    double norm_err = 0.0;
    for (const Vec& x : xs)
      norm_err = std::max(norm_err, std::abs(lawson_osserman_map(x).norm() - std::sqrt(5.0) / 2.0 * x.norm()));
    r.checks.push_back(at_most("norm_identity", norm_err, 1e-12));
  } else if (head == "holomorphic") {
    const GraphMap g = holomorphic_graph(parse_polynomial(arg));
    graph_checks(r, g, kahler_form(2), domain_samples(g.domain(), options.samples, options.seed), tol);
  } else if (head == "slag-quadratic") {
    const auto c = split_reals(arg, ',', "slag-quadratic");
    Vec cv(static_cast<Eigen::Index>(c.size()));
    double theta = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      cv[static_cast<Eigen::Index>(i)] = c[i];
      theta += std::atan(c[i]);
    }
    const GraphMap g = quadratic_gradient_graph(cv);
    graph_checks(r, g, slag_form(static_cast<int>(c.size()), theta),
                 domain_samples(g.domain(), options.samples, options.seed), tol);
  } else if (head == "affine" && !arg.empty()) {
    std::vector<std::vector<double>> rows;
    std::stringstream in(arg);
    std::string row;
    while (std::getline(in, row, ';')) rows.push_back(split_reals(row, ',', "affine matrix"));
    const std::size_t k = rows.front().size();
    for (const auto& rw : rows)
      require(rw.size() == k, ErrorCode::invalid_argument, "affine matrix rows differ in length");
    require(k + rows.size() <= static_cast<std::size_t>(kMaxDim), ErrorCode::invalid_argument, "affine: too large");
    Mat a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    const GraphMap g = affine_graph(a, Vec::Zero(a.rows()));
    const KCovector phi = dual_of(tangent_plane(g, Vec::Zero(g.k())).plucker());
    r.checks.push_back(at_most("form_comass_error", std::abs(comass(phi).value - 1.0), tol));
    graph_checks(r, g, FormField::constant("affine-dual", phi), domain_samples(g.domain(), options.samples, options.seed),
                 tol);
  } else if (head == "affine-tilted") {
    const double theta = arg.empty() ? 0.5 : parse_real(arg, "affine-tilted");
    require(std::abs(theta) < M_PI / 2, ErrorCode::invalid_argument, "affine-tilted: |theta| must be below pi/2");
    Mat a(1, 2);
    a << std::tan(theta), 0.0;
    const GraphMap g = affine_graph(a, Vec::Zero(1));
    const auto xs = domain_samples(g.domain(), options.samples, options.seed);
    double residual = 0.0;
    for (const Vec& x : xs) residual = std::max(residual, mss_residual(g, x).cwiseAbs().maxCoeff());
    const double defect = graph_calibrated_defect(g, volume_form(2, 3), xs);
    r.checks.push_back(at_most("mss_residual", residual, tol));
    r.checks.push_back(at_most("calibration_defect", defect, tol));
    r.checks.push_back(at_most("defect_vs_1_minus_cos", std::abs(defect - (1.0 - std::cos(theta))), 1e-12));
  } else if (id == "scherk") {
    const GraphMap g = graph_for_calibration(graph_from_id("graph:scherk"));
    graph_checks(r, g, form_from_id("graph:scherk"), domain_samples(g.domain(), options.samples, options.seed), tol);
  } else if (id == "simons") {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> radius(0.2, 1.0);
    double analytic = 0.0;
    double numeric = 0.0;
    double agreement = 0.0;
    for (int i = 0; i < options.samples; ++i) {
      const double rad = radius(rng);
      Vec p(8);
      p << rad * random_unit(rng, 4), rad * random_unit(rng, 4);
      analytic = std::max(analytic, std::abs(simons_mean_curvature(p)));
      numeric = std::max(numeric, std::abs(simons_mean_curvature_fd(p, 1e-4)));
      // Off the cone both formulas must agree.
      Vec q = p;
      q.head(4) *= 1.0 + 0.5 * radius(rng);
      agreement = std::max(agreement, std::abs(simons_mean_curvature(q) - simons_mean_curvature_fd(q, 1e-4)));
    }
    r.checks.push_back(at_most("mean_curvature", analytic, tol));
    r.checks.push_back(at_most("mean_curvature_fd", numeric, tol));
    r.checks.push_back(at_most("fd_agreement_off_cone", agreement, tol));
  } else {
    fail(ErrorCode::invalid_argument, "unknown example id '" + id + "'");
  }
  return r;
}

}  // namespace calibra
