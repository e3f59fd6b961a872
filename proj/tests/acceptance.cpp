// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <limits>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "calibra/json_io.hpp"
#include "calibra/mse_solver.hpp"
#include "oracles.hpp"

using namespace calibra;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(CALIBRA_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PlateauInstance load_instance(const std::string& name) { return instance_from_json(parse_json(read_fixture(name))); }

std::vector<Vec> sample_points(const Region& r, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) out.push_back(r.sample(rng));
  return out;
}

// 1. comass suite
Outcome comass_suite() {
  AscentOptions opts;
  opts.seed = 11;
  struct Case {
    std::string name;
    FormField form;
    double expected;
  };
  std::vector<Case> cases = {
      {"volume(2,3)", volume_form(2, 3), 1.0},
      {"volume(3,5)", volume_form(3, 5), 1.0},
      {"kahler R4", kahler_form(2), 1.0},
      {"kahler R6", kahler_form(3), 1.0},
      {"kahler^2/2 R6", kahler_form(3, 2), 1.0},
      {"Re dz C2", slag_form(2), 1.0},
      {"Re dz C3", slag_form(3), 1.0},
      {"coassociative", coassociative_form(), 1.0},
      {"graph flat", form_from_id("graph:flat:2"), 1.0},
      {"graph affine", form_from_id("graph:affine:0.5,-0.3"), 1.0},
      {"graph disc", form_from_id("graph:disc"), 1.0},
      {"2 volume", volume_form(2, 3).scaled(2.0), 2.0},
  };
  double worst = 0.0;
  std::string worst_name;
  for (const Case& c : cases) {
    const auto pts = c.form.is_constant() ? std::vector<Vec>{Vec::Zero(c.form.dim())}
                                          : sample_points(c.form.region(), 24, 5);
    const double v = comass_global(c.form, pts, opts).value;
    double err = std::abs(v - c.expected);
    // independent check for 2-forms
    if (c.form.degree() == 2 && c.form.is_constant())
      err = std::max(err, std::abs(oracle::comass_2form(c.form.at(pts[0])) - c.expected));
    if (err >= worst) {
      worst = err;
      worst_name = c.name;
    }
  }
  return {worst <= 1e-5, std::to_string(cases.size()) + " forms, max |comass - expected| = " + fmt("%.2e", worst) +
                             " (" + worst_name + ")"};
}

// 2. first cousins and plane completion
Outcome cousins_and_completion() {
  const auto catalog = standard_calibrations();
  std::vector<CatalogEntry> entries = catalog;
  std::mt19937_64 rng(2024);
  ContactOptions contact;
  contact.known_comass = 1.0;
  double worst_cousin = 0.0;
  int pairs = 0;
  int multiple = 0;
  int dropped = 0;
  int unique_ok = 0;
  int completions = 0;
  double worst_completion = 0.0;
  const int per_entry = 1000 / static_cast<int>(entries.size()) + 1;
  for (const CatalogEntry& e : entries) {
    for (int t = 0; t < per_entry; ++t) {
      const auto s = oracle::contact_sample(e, rng);
      const SimplePlane plane = plane_from_frame(s.frame);
      worst_cousin = std::max(worst_cousin, first_cousin_check(e.form, s.point, plane, contact));
      ++pairs;
      // Drop a random direction of the plane; the rest must complete uniquely
      // back to the plane.
      if (plane.k() < 2) continue;
      const Mat rot = oracle::random_rotation(rng, plane.k());
      const Mat f = plane.frame() * rot;
      const SimplePlane eta = plane_from_frame(f.leftCols(plane.k() - 1));
      const Completion c = complete_plane(e.form, s.point, eta, contact);
      ++completions;
      ++dropped;
      if (c.kind == CompletionKind::multiple) ++multiple;
      if (c.kind == CompletionKind::unique) {
        ++unique_ok;
        Mat full(plane.n(), plane.k());
        full << eta.frame(), c.v;
        worst_completion = std::max(worst_completion, std::abs(plane_angle(plane_from_frame(full), plane)));
      }
      // A random (k-1)-plane usually has no completion; it must never be MULTIPLE.
      std::normal_distribution<double> g;
      Mat r(plane.n(), plane.k() - 1);
      for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = g(rng);
      const Completion rc = complete_plane(e.form, s.point, plane_from_frame(r), contact);
      ++completions;
      if (rc.kind == CompletionKind::multiple) ++multiple;
    }
  }
  const bool pass = pairs >= 1000 && worst_cousin <= 1e-6 && completions >= 1000 && multiple == 0 &&
                    unique_ok == dropped && worst_completion <= 1e-6;
  return {pass, std::to_string(pairs) + " pairs, max cousin pairing " + fmt("%.2e", worst_cousin) + "; " +
                    std::to_string(completions) + " completions, MULTIPLE " + std::to_string(multiple) +
                    ", recovered planes within " + fmt("%.1e", worst_completion) + " rad"};
}

// 3. Lawson-Osserman cone
Outcome loc_verification() {
  const GraphMap g = lawson_osserman_graph();
  std::mt19937_64 rng(7);
  std::vector<Vec> xs;
  while (xs.size() < 500) {
    const Vec x = g.domain().sample(rng);
    if (x.norm() >= 0.1 && x.norm() <= 1.0) xs.push_back(x);
  }
  double residual = 0.0, residual_oracle = 0.0, norm_err = 0.0, map_err = 0.0;
  for (const Vec& x : xs) {
    residual = std::max(residual, mss_residual(g, x).cwiseAbs().maxCoeff());
    const Jet j = lawson_osserman_jet(x);
    residual_oracle = std::max(residual_oracle, oracle::mss_residual(j).cwiseAbs().maxCoeff());
    norm_err = std::max(norm_err, std::abs(lawson_osserman_map(x).norm() - std::sqrt(5.0) / 2.0 * x.norm()));
    map_err = std::max(map_err, (lawson_osserman_map(x) - oracle::loc_map(x)).cwiseAbs().maxCoeff());
  }
  const double defect = graph_calibrated_defect(g, coassociative_form(), xs);
  const bool pass = residual <= 1e-6 && residual_oracle <= 1e-6 && std::abs(defect) <= 1e-6 && norm_err <= 1e-12 &&
                    map_err <= 1e-12;
  return {pass, "residual " + fmt("%.2e", std::max(residual, residual_oracle)) + ", defect " + fmt("%.2e", defect) +
                    ", | |L(x)| - sqrt5/2 |x| | " + fmt("%.2e", norm_err) + ", map vs Hopf formula " +
                    fmt("%.2e", map_err)};
}

// 4. closedness of the catalog calibrations
Outcome closedness() {
  double worst_final = 0.0;
  double worst_order = std::numeric_limits<double>::infinity();
  int exact = 0;
  for (const CatalogEntry& e : standard_calibrations()) {
    if (e.form.degree() >= e.form.dim()) {
      ++exact;
      continue;
    }
    std::mt19937_64 rng(99);
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) {
      Vec p = e.form.region().sample(rng);
      p.head(e.form.region().base().dim()) *= 0.9;
      pts.push_back(p);
    }
    std::vector<double> err;
    for (double h : {4e-3, 2e-3, 1e-3}) {
      double m = 0.0;
      for (const Vec& p : pts)
        for (const auto& [_, c] : exterior_derivative_numeric(e.form, p, h).terms()) m = std::max(m, std::abs(c));
      err.push_back(m);
    }
    worst_final = std::max(worst_final, err.back());
    if (err.front() < 1e-13) {
      ++exact;  // the difference quotients vanish identically
      continue;
    }
    const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
    worst_order = std::min(worst_order, order);
  }
  const bool pass = worst_final <= 1e-6 && (worst_order >= 1.9);
  return {pass, "max |d phi| at h=1e-3 " + fmt("%.2e", worst_final) + ", min observed order " +
                    (std::isfinite(worst_order) ? fmt("%.2f", worst_order) : std::string("n/a")) + ", " +
                    std::to_string(exact) + " forms with constant coefficients (exactly zero)"};
}

// Demo complexes for Stokes.
std::vector<Chain> demo_chains() {
  std::vector<Chain> out;
  for (const char* name : {"four-corners.json", "cone-16gon.json"}) {
    const auto in = load_instance(name);
    if (in.candidate) out.push_back(*in.candidate);
  }
  {
    const Json j = parse_json(read_fixture("square-density.json"));
    auto cx = complex_from_json(j);
    out.push_back(chain_from_json(j["chain"], cx));
  }
  {
    // Kuhn triangulation of the unit cube: six positively oriented tetrahedra.
    std::vector<Vec> v;
    for (int i = 0; i < 8; ++i) v.push_back(Eigen::Vector3d((i & 1) ? 1.0 : 0.0, (i & 2) ? 1.0 : 0.0, (i & 4) ? 1.0 : 0.0));
    std::vector<Simplex> tets;
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms) {
      Simplex s{0};
      int cur = 0;
      for (int a : p) s.push_back(cur |= (1 << a));
      tets.push_back(s);
    }
    auto cx = std::make_shared<const SimplicialComplex>(v, std::map<int, std::vector<Simplex>>{{3, tets}});
    Chain c(cx, 3);
    for (int i = 0; i < 6; ++i) {
      Mat e = cx->edge_vectors(3, i);
      c.add(i, e.determinant() > 0 ? 1 : -1);
    }
    out.push_back(c);
  }
  {
    // Polyline in R^4 and a 2-chain over two triangles sharing an edge.
    std::vector<Vec> v = {Vec::Zero(4), Vec::Ones(4) * 0.5, Vec::Unit(4, 2), Vec::Unit(4, 3) - Vec::Unit(4, 0)};
    std::map<int, std::vector<Simplex>> s{{1, {{0, 1}, {1, 2}, {2, 3}}}, {2, {{0, 1, 2}, {0, 2, 3}}}};
    auto cx = std::make_shared<const SimplicialComplex>(v, s);
    Chain c(cx, 2);
    c.add(*cx->find({0, 1, 2}), 1);
    c.add(*cx->find({0, 2, 3}), -2);
    out.push_back(c);
  }
  return out;
}

// 5. Stokes identity and boundary of boundary
Outcome stokes() {
  const auto chains = demo_chains();
  std::mt19937_64 rng(5);
  double worst = 0.0, worst_numeric = 0.0;
  long dd_nonzero = 0;
  for (const Chain& t : chains) {
    const int n = t.complex()->dim();
    for (int trial = 0; trial < 20; ++trial) {
      const auto pf = oracle::PolyForm::random(rng, n, t.degree() - 1);
      const FormField psi("poly", pf.degree, n, Region::whole(n), [pf](const Vec& x) { return pf.value(x); }, false);
      const FormField dpsi("dpoly", pf.degree + 1, n, Region::whole(n), [pf](const Vec& x) { return pf.derivative(x); },
                           false);
      worst = std::max(worst, std::abs(pair(boundary(t), psi, 6) - pair(t, dpsi, 6)));
      worst_numeric = std::max(worst_numeric, stokes_check(t, psi, 1e-3, 6));
    }
    const auto& cx = *t.complex();
    for (int k = 2; k <= cx.max_degree(); ++k) {
      const auto& hi = cx.boundary_matrix(k);
      const auto& lo = cx.boundary_matrix(k - 1);
      for (int c = 0; c < hi.cols; ++c) {
        std::map<int, long> acc;
        for (const auto& [r, s] : hi.columns[c])
          for (const auto& [r2, s2] : lo.columns[r]) acc[r2] += static_cast<long>(s) * s2;
        for (const auto& [_, v] : acc)
          if (v != 0) ++dd_nonzero;
      }
    }
    // and through the chain-level operator
    if (t.degree() >= 2 && !boundary(boundary(t)).empty()) ++dd_nonzero;
  }
  const bool pass = chains.size() >= 5 && worst <= 1e-5 && worst_numeric <= 1e-5 && dd_nonzero == 0;
  return {pass, std::to_string(chains.size()) + " complexes x 20 forms, max |dT(psi) - T(d psi)| " +
                    fmt("%.2e", worst) + " (exact d), " + fmt("%.2e", worst_numeric) +
                    " (numerical d); nonzero entries of dd: " + std::to_string(dd_nonzero)};
}

// 6. density
Outcome density() {
  const Json j1 = parse_json(read_fixture("square-density.json"));
  const Json j2 = parse_json(read_fixture("square-density-2.json"));
  auto c1 = complex_from_json(j1);
  auto c2 = complex_from_json(j2);
  const Chain t1 = chain_from_json(j1["chain"], c1);
  const Chain t2 = chain_from_json(j2["chain"], c2);
  const std::vector<double> radii = {0.5, 0.25, 0.125};
  const auto interior = density_estimate(t1, Eigen::Vector2d(1.0, 1.0), radii);
  const auto edge = density_estimate(t1, Eigen::Vector2d(1.0, 0.0), radii);
  const auto doubled = density_estimate(t2, Eigen::Vector2d(0.9, 1.1), radii);
  double e1 = 0, e2 = 0, e3 = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    e1 = std::max(e1, std::abs(interior[i] - 1.0));
    e2 = std::max(e2, std::abs(edge[i] - 0.5) / 0.5);
    e3 = std::max(e3, std::abs(doubled[i] - 2.0) / 2.0);
  }
  return {e1 <= 0.02 && e2 <= 0.02 && e3 <= 0.02,
          "relative errors: interior " + fmt("%.2e", e1) + ", edge " + fmt("%.2e", e2) + ", multiplicity 2 " +
              fmt("%.2e", e3)};
}

// Random small instances for the oracle comparison.
PlateauInstance random_instance(std::mt19937_64& rng, int kind) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec> v;
  std::map<int, std::vector<Simplex>> s;
  int k = 1;
  if (kind == 0) {
    // random points, random edges
    const int nv = 6;
    for (int i = 0; i < nv; ++i) v.push_back(Eigen::Vector2d(u(rng), u(rng)));
    std::vector<Simplex> all;
    for (int a = 0; a < nv; ++a)
      for (int b = a + 1; b < nv; ++b) all.push_back({a, b});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(11);
    for (auto& e : all)
      if (rng() & 1) std::swap(e[0], e[1]);
    s[1] = all;
  } else if (kind == 1) {
    // lattice graph: Manhattan paths tie
    const int w = 3;
    for (int y = 0; y < w; ++y)
      for (int x = 0; x < w; ++x) v.push_back(Eigen::Vector2d(x, y));
    std::vector<Simplex> e;
    for (int y = 0; y < w; ++y)
      for (int x = 0; x < w; ++x) {
        if (x + 1 < w) e.push_back({y * w + x, y * w + x + 1});
        if (y + 1 < w) e.push_back({y * w + x, (y + 1) * w + x});
      }
    if (rng() & 1) e.push_back({0, 4});
    s[1] = e;
  } else {
    // two or three tents over a polygon in R^3
    k = 2;
    const int m = 3 + static_cast<int>(rng() % 2);
    v.push_back(Eigen::Vector3d(0, 0, 0));
    for (int i = 0; i < m; ++i) {
      const double a = 2 * std::numbers::pi * i / m;
      v.push_back(Eigen::Vector3d(std::cos(a), std::sin(a), 0));
    }
    const double h = 0.3 + 0.5 * std::abs(u(rng));
    std::vector<double> heights = {h, -h};
    if (rng() & 1) heights.push_back(0.2 * u(rng) + 1.0);
    std::vector<Simplex> tris;
    for (double z : heights) {
      v.push_back(Eigen::Vector3d(0, 0, z));
      const int apex = static_cast<int>(v.size()) - 1;
      for (int i = 0; i < m; ++i) tris.push_back({apex, 1 + i, 1 + (i + 1) % m});
    }
    s[2] = tris;
  }
  auto cx = std::make_shared<const SimplicialComplex>(v, s);
  // boundary of a random chain so that the instance is feasible
  Chain seed(cx, k);
  if (k == 1) {
    const int n = cx->count(1);
    for (int t = 0; t < 2; ++t) seed.add(static_cast<int>(rng() % n), (rng() & 1) ? 1 : -1);
    if (boundary(seed).empty()) seed.add(0, 1);
  } else {
    // one full tent
    for (int i = 0; i < cx->count(2); ++i) {
      const Simplex& t = cx->simplices(2)[i];
      if (t[0] == cx->simplices(2)[0][0]) seed.add(i, 1);
    }
  }
  return PlateauInstance{cx, k, boundary(seed)};
}

// 7. oracle equivalence
Outcome oracle_equivalence() {
  std::mt19937_64 rng(77);
  int instances = 0, mass_ok = 0, verdict_ok = 0, multiple = 0;
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const PlateauInstance in = random_instance(rng, i % 3);
    if (in.complex->count(in.k) > 14) continue;
    ++instances;
    const PlateauSolution sol = solve(in);
    const ProbeResult probe = uniqueness_probe(in, sol, 4, static_cast<std::uint64_t>(i));
    const OracleResult o = brute_force_oracle(in, 2);
    const double err = std::abs(sol.mass - o.mass);
    worst = std::max(worst, err);
    if (o.feasible && err <= 1e-9) ++mass_ok;
    const bool unique = probe.verdict == Verdict::unique;
    if (probe.verdict != Verdict::unknown && unique == (o.minimizers.size() == 1) &&
        (unique || probe.minimizers.size() == o.minimizers.size()))
      ++verdict_ok;
    if (o.minimizers.size() > 1) ++multiple;
  }
  const bool pass = instances >= 20 && mass_ok == instances && verdict_ok == instances;
  return {pass, std::to_string(instances) + " instances (" + std::to_string(multiple) +
                    " with several minimizers): mass agrees " + std::to_string(mass_ok) + ", verdict agrees " +
                    std::to_string(verdict_ok) + ", max mass difference " + fmt("%.1e", worst)};
}

std::string chain_names(const Chain& c, const std::vector<std::string>& labels) {
  std::vector<std::string> names;
  for (const auto& [i, v] : c.coeffs()) {
    std::string n;
    for (int vtx : c.complex()->simplices(c.degree())[i]) n += labels[vtx];
    if (v != 1) n = std::to_string(v) + n;
    names.push_back(n);
  }
  std::sort(names.begin(), names.end());
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return "{" + out + "}";
}

// 8. four corners
Outcome four_corners() {
  const Json j = parse_json(read_fixture("four-corners.json"));
  const PlateauInstance in = instance_from_json(j);
  const std::vector<std::string> labels = j["labels"].get<std::vector<std::string>>();
  const PlateauSolution sol = solve(in);
  const ProbeResult probe = uniqueness_probe(in, sol, 32, 1);
  std::vector<std::string> found;
  for (const Chain& c : probe.minimizers) found.push_back(chain_names(c, labels));
  std::sort(found.begin(), found.end());
  const std::vector<std::string> expected = {"{AB,CD}", "{AD,CB}"};

  // Cochain from the piecewise form, integrated edge by edge.
  const auto& cx = *in.complex;
  std::vector<double> values;
  double fixture_err = 0.0;
  for (int e = 0; e < cx.count(1); ++e) {
    const Simplex& s = cx.simplices(1)[e];
    const Eigen::Vector2d a = cx.vertices()[s[0]], b = cx.vertices()[s[1]];
    values.push_back(oracle::integrate_four_corners(a, b));
    fixture_err = std::max(fixture_err, std::abs(values.back() - (*in.certificate)(e)));
  }
  const DiscreteCochain alpha(in.complex, 1, values);
  bool cert = true;
  for (const Chain& c : probe.minimizers) cert = cert && verify_certificate(in, c, alpha).pass;
  const bool pass = std::abs(sol.mass - 4.0) <= 1e-9 && probe.verdict == Verdict::multiple && found == expected &&
                    cert && fixture_err <= 1e-9;
  std::string listed;
  for (const auto& f : found) listed += (listed.empty() ? "" : " ") + f;
  return {pass, "mass " + fmt("%.6f", sol.mass) + ", verdict " + to_string(probe.verdict) + ", minimizers " + listed +
                    ", certificate " + (cert ? "passes on both" : "FAILS") + ", fixture cochain error " +
                    fmt("%.1e", fixture_err)};
}

// 9. certificate duality
Outcome duality() {
  double worst_gap = 0.0, worst_alt = 0.0;
  int certified = 0, alternatives = 0;
  bool all_pass = true;
  for (const char* name : {"four-corners.json", "cone-16gon.json", "segment.json"}) {
    const PlateauInstance in = load_instance(name);
    if (!in.certificate) continue;
    ++certified;
    const PlateauSolution sol = solve(in);
    const auto rep = verify_certificate(in, sol.chain, *in.certificate);
    all_pass = all_pass && rep.pass;
    worst_gap = std::max(worst_gap, std::abs(rep.gap));
    const ProbeResult probe = uniqueness_probe(in, sol, 8, 3);
    for (const Chain& s : probe.minimizers) {
      if (s == sol.chain) continue;
      ++alternatives;
      worst_alt = std::max(worst_alt, std::abs(in.certificate->evaluate(s) - mass(s)));
    }
  }
  const bool pass = certified == 3 && all_pass && worst_gap <= 1e-9 && worst_alt <= 1e-9;
  return {pass, std::to_string(certified) + " certified instances, max gap " + fmt("%.1e", worst_gap) + ", " +
                    std::to_string(alternatives) + " alternative minimizers with max |alpha(S) - M(S)| " +
                    fmt("%.1e", worst_alt)};
}

// 10. cone demo
Outcome cone_demo() {
  const PlateauInstance in = load_instance("cone-16gon.json");
  OracleLimits limits;
  limits.max_simplices = 64;
  const OracleResult o = brute_force_oracle(in, 2, limits);
  const PlateauSolution sol = solve(in);
  const bool disc_wins = o.feasible && o.minimizers.size() == 1 && in.candidate && o.minimizers.front() == *in.candidate &&
                         sol.chain == *in.candidate;

  // Refinement: cone from the origin over the regular 64-gon.
  auto polygon = [](int n) {
    std::vector<Vec> v;
    std::vector<Simplex> e;
    for (int i = 0; i < n; ++i) {
      const double a = 2 * std::numbers::pi * i / n;
      v.push_back(Eigen::Vector3d(std::cos(a), std::sin(a), 0.0));
      e.push_back({i, (i + 1) % n});
    }
    auto cx = std::make_shared<const SimplicialComplex>(v, std::map<int, std::vector<Simplex>>{{1, e}});
    Chain c(cx, 1);
    for (int i = 0; i < n; ++i) c.add(i, 1);
    return cone_chain(c, Vec::Zero(3));
  };
  const double m16 = mass(polygon(16).chain);
  const double m64 = mass(polygon(64).chain);
  const double rel = std::abs(m64 - std::numbers::pi) / std::numbers::pi;
  const bool pass = disc_wins && std::abs(m16 - sol.mass) <= 1e-9 && rel <= 0.01;
  return {pass, std::string("16-gon disc ") + (disc_wins ? "is the unique oracle minimum" : "is NOT the oracle minimum") +
                    " (mass " + fmt("%.6f", sol.mass) + ", " + std::to_string(o.nodes) + " oracle nodes); 64-gon mass " +
                    fmt("%.6f", m64) + ", relative error to pi " + fmt("%.2e", rel)};
}

// 11. difference operator
Outcome difference() {
  const DiscMseSolution su = solve_mse_disc(default_disc_boundary);
  const DiscMseSolution sv = solve_mse_disc(alternate_disc_boundary);
  const GraphMap u = su.graph("u");
  const GraphMap v = sv.graph("v");
  // interior nodes well inside the disc
  std::vector<std::pair<int, int>> nodes;
  for (const auto& [i, j] : su.unknowns())
    if (su.node(i, j).norm() <= su.radius() - 4 * su.spacing()) nodes.emplace_back(i, j);
  std::mt19937_64 rng(13);
  std::shuffle(nodes.begin(), nodes.end(), rng);
  nodes.resize(std::min<std::size_t>(100, nodes.size()));
  DifferenceOptions opts;
  opts.residual_tolerance = 1e-8;
  double worst = 0.0, bracket_violation = 0.0;
  for (const auto& [i, j] : nodes) {
    const Vec x = su.node(i, j);
    const DifferenceOperator op = difference_operator(u, v, x, opts);
    const Jet w = jet_difference(u.jet(x), v.jet(x));
    worst = std::max(worst, op.apply(w).cwiseAbs().maxCoeff());
    const Vec eig = Eigen::SelfAdjointEigenSolver<Mat>(op.a).eigenvalues();
    bracket_violation = std::max({bracket_violation, op.lambda - eig.minCoeff(), eig.maxCoeff() - op.Lambda});
  }
  const double res = std::max(su.max_residual(), sv.max_residual());
  const bool pass = res <= 1e-8 && nodes.size() == 100 && worst <= 1e-5 && bracket_violation <= 0.0;
  return {pass, "grid residuals " + fmt("%.1e", res) + ", " + std::to_string(nodes.size()) +
                    " points, max |L(u - v)| " + fmt("%.2e", worst) + ", bracket " +
                    (bracket_violation <= 1e-12 ? "contains" : "MISSES") + " all eigenvalues"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria = {
      {1, "comass suite", comass_suite, 60},
      {2, "first cousins / plane completion", cousins_and_completion, 0},
      {3, "Lawson-Osserman cone", loc_verification, 10},
      {4, "closedness", closedness, 0},
      {5, "Stokes identity", stokes, 0},
      {6, "density", density, 0},
      {7, "oracle equivalence", oracle_equivalence, 120},
      {8, "four corners", four_corners, 0},
      {9, "certificate duality", duality, 0},
      {10, "cone demo", cone_demo, 0},
      {11, "difference operator", difference, 0},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over the time budget";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
