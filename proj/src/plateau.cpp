#include "calibra/plateau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "calibra/lp.hpp"

namespace calibra {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::unique: return "UNIQUE";
    case Verdict::multiple: return "MULTIPLE";
    case Verdict::unknown: return "UNKNOWN";
    case Verdict::not_probed: return "NOT_PROBED";
  }
  return "UNKNOWN";
}

bool chain_less(const Chain& a, const Chain& b) { return a.dense() < b.dense(); }

namespace {

void check_instance(const PlateauInstance& in) {
  require(in.complex != nullptr, ErrorCode::invalid_argument, "instance has no complex");
  require(in.k >= 1 && in.k <= in.complex->max_degree(), ErrorCode::degree_overflow,
          "instance degree k must lie in [1, top degree of the complex]");
  require(in.boundary.complex() == in.complex, ErrorCode::invalid_argument, "boundary chain is on another complex");
  require(in.boundary.degree() == in.k - 1, ErrorCode::invalid_argument, "boundary chain must have degree k - 1");
}

struct NetBound {
  int simplex;
  bool upper;  // net <= value, else net >= value
  std::int64_t value;
};

struct MipResult {
  bool feasible = false;
  bool limit_hit = false;
  std::vector<std::int64_t> net;
  double objective = std::numeric_limits<double>::infinity();
  long lp_solves = 0;
  long nodes = 0;
  long pivots = 0;
  bool root_integral = false;
  double root_objective = 0.0;
};

// min sum cost_s |x_s| subject to boundary(x) = b, x integral, extra bounds.
// Nodes whose relaxation exceeds `cutoff` are pruned.
MipResult solve_mip(const PlateauInstance& in, const std::vector<double>& cost, const std::vector<NetBound>& bounds,
                    double cutoff, const SolveOptions& options) {
  const SimplicialComplex& cx = *in.complex;
  const int n = cx.count(in.k);
  const IncidenceMatrix& bm = cx.boundary_matrix(in.k);

  LinearProgram base;
  base.variables = 2 * n;
  base.cost.resize(2 * n);
  for (int s = 0; s < n; ++s) base.cost[2 * s] = base.cost[2 * s + 1] = cost[s];
  std::vector<LpRow> rows(bm.rows);
  for (int s = 0; s < n; ++s) {
    for (const auto& [r, sign] : bm.columns[s]) {
      rows[r].coeffs.emplace_back(2 * s, sign);
      rows[r].coeffs.emplace_back(2 * s + 1, -sign);
    }
  }
  for (int r = 0; r < bm.rows; ++r) {
    rows[r].sense = RowSense::equal;
    rows[r].rhs = static_cast<double>(in.boundary.coeff(r));
  }
  base.rows = std::move(rows);

  auto bound_row = [](const NetBound& b) {
    LpRow row;
    row.coeffs = {{2 * b.simplex, 1.0}, {2 * b.simplex + 1, -1.0}};
    row.sense = b.upper ? RowSense::less_equal : RowSense::greater_equal;
    row.rhs = static_cast<double>(b.value);
    return row;
  };

  MipResult out;
  std::vector<std::vector<NetBound>> stack{bounds};
  const double tol = options.integrality_tolerance;
  while (!stack.empty()) {
    if (out.nodes >= options.node_limit) {
      out.limit_hit = true;
      break;
    }
    ++out.nodes;
    std::vector<NetBound> node = std::move(stack.back());
    stack.pop_back();
    LinearProgram lp = base;
    for (const NetBound& b : node) lp.rows.push_back(bound_row(b));
    const LpResult r = solve_lp(lp);
    ++out.lp_solves;
    out.pivots += r.pivots;
    if (r.status == LpStatus::pivot_limit) {
      out.limit_hit = true;
      continue;
    }
    if (r.status != LpStatus::optimal) continue;
    const double limit = std::min(cutoff, out.objective);
    if (r.objective > limit + kMassTieTolerance) continue;
    if (out.feasible && r.objective >= out.objective - 1e-12) continue;

    int frac = -1;
    double frac_value = 0.0;
    std::vector<std::int64_t> net(n);
    for (int s = 0; s < n; ++s) {
      const double v = r.x[2 * s] - r.x[2 * s + 1];
      const double rv = std::round(v);
      if (std::abs(v - rv) > tol && frac < 0) {
        frac = s;
        frac_value = v;
      }
      net[s] = static_cast<std::int64_t>(rv);
    }
    if (out.nodes == 1) {
      out.root_integral = frac < 0;
      out.root_objective = r.objective;
    }
    if (frac < 0) {
      out.feasible = true;
      out.objective = 0.0;
      for (int s = 0; s < n; ++s) out.objective += cost[s] * std::abs(static_cast<double>(net[s]));
      out.net = std::move(net);
      continue;
    }
    auto down = node;
    down.push_back({frac, true, static_cast<std::int64_t>(std::floor(frac_value))});
    auto up = std::move(node);
    up.push_back({frac, false, static_cast<std::int64_t>(std::ceil(frac_value))});
    stack.push_back(std::move(up));
    stack.push_back(std::move(down));
  }
  return out;
}

Chain chain_from_net(const PlateauInstance& in, const std::vector<std::int64_t>& net) {
  Chain c(in.complex, in.k);
  for (std::size_t s = 0; s < net.size(); ++s) c.add(static_cast<int>(s), net[s]);
  require(boundary(c) == in.boundary, ErrorCode::precondition_failed, "rounded LP solution has the wrong boundary");
  return c;
}

std::vector<double> volumes(const PlateauInstance& in) {
  const int n = in.complex->count(in.k);
  std::vector<double> v(n);
  for (int s = 0; s < n; ++s) v[s] = in.complex->volume(in.k, s);
  return v;
}

void insert_unique(std::vector<Chain>& list, const Chain& c) {
  for (const Chain& x : list)
    if (x == c) return;
  list.push_back(c);
}

}  // namespace

PlateauSolution solve(const PlateauInstance& instance, const SolveOptions& options) {
  check_instance(instance);
  if (instance.k >= 2 && !boundary(instance.boundary).empty()) {
    fail(ErrorCode::infeasible, "prescribed boundary is not a cycle");
  }
  if (!fill_cycle(instance.boundary)) fail(ErrorCode::infeasible, "prescribed boundary bounds no chain in the complex");

  const MipResult r = solve_mip(instance, volumes(instance), {}, std::numeric_limits<double>::infinity(), options);
  if (r.limit_hit && !r.feasible) fail(ErrorCode::resource_limit, "branch-and-bound node limit reached");
  if (!r.feasible) fail(ErrorCode::infeasible, "no integral chain with the prescribed boundary");
  Chain chain = chain_from_net(instance, r.net);
  PlateauSolution sol{chain, mass(chain), Verdict::not_probed, {chain}, {}};
  sol.diagnostics.lp_solves = r.lp_solves;
  sol.diagnostics.branch_nodes = r.nodes;
  sol.diagnostics.pivots = r.pivots;
  sol.diagnostics.root_integral = r.root_integral;
  sol.diagnostics.root_objective = r.root_objective;
  sol.diagnostics.node_limit_hit = r.limit_hit;
  if (r.limit_hit) {
    sol.proven = false;
    sol.verdict = Verdict::unknown;
  }
  return sol;
}

ProbeResult uniqueness_probe(const PlateauInstance& instance, const PlateauSolution& solution, int trials,
                             std::uint64_t seed, const SolveOptions& options) {
  check_instance(instance);
  require(trials >= 0, ErrorCode::invalid_argument, "probe trials must be non-negative");
  const Chain& t = solution.chain;
  require(t.complex() == instance.complex && t.degree() == instance.k, ErrorCode::invalid_argument,
          "probe: solution chain does not belong to the instance");
  require(boundary(t) == instance.boundary, ErrorCode::precondition_failed, "probe: solution has the wrong boundary");
  const double m = mass(t);
  const std::vector<double> vol = volumes(instance);
  const int n = static_cast<int>(vol.size());

  ProbeResult out;
  out.minimizers.push_back(t);
  if (!solution.proven) return out;  // unknown: t itself is not known to be minimal
  bool limit = false;

  auto consider = [&](const MipResult& r) {
    out.lp_solves += r.lp_solves;
    if (r.limit_hit) limit = true;
    if (!r.feasible) return;
    const Chain s = chain_from_net(instance, r.net);
    const double ms = mass(s);
    if (ms < m - kMassTieTolerance) {
      fail(ErrorCode::precondition_failed, "probe: input chain is not a minimizer (found mass " + std::to_string(ms) +
                                               " < " + std::to_string(m) + ")");
    }
    if (ms <= m + kMassTieTolerance) insert_unique(out.minimizers, s);
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> cost = vol;
    for (double& c : cost) c *= 1.0 + 1e-7 * unit(rng);
    consider(solve_mip(instance, cost, {}, std::numeric_limits<double>::infinity(), options));
    ++out.perturbation_trials;
  }
  const double cutoff = m + kMassTieTolerance;
  for (int s = 0; s < n; ++s) {
    const std::int64_t ts = t.coeff(s);
    consider(solve_mip(instance, vol, {{s, true, ts - 1}}, cutoff, options));
    consider(solve_mip(instance, vol, {{s, false, ts + 1}}, cutoff, options));
    out.forced_deviations += 2;
  }
  std::sort(out.minimizers.begin(), out.minimizers.end(), chain_less);
  if (out.minimizers.size() > 1)
    out.verdict = Verdict::multiple;
  else
    out.verdict = limit ? Verdict::unknown : Verdict::unique;
  return out;
}

CertificateReport verify_certificate(const PlateauInstance& instance, const Chain& t, const DiscreteCochain& alpha,
                                     double tolerance) {
  check_instance(instance);
  require(alpha.degree() == instance.k, ErrorCode::invalid_argument, "certificate degree differs from k");
  require(t.degree() == instance.k, ErrorCode::invalid_argument, "chain degree differs from k");
  require(alpha.complex() == instance.complex && t.complex() == instance.complex, ErrorCode::invalid_argument,
          "certificate and chain must live on the instance complex");
  const SimplicialComplex& cx = *instance.complex;
  const int k = instance.k;
  CertificateReport rep;

  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < cx.count(k); ++s) {
    const double e = std::abs(alpha(s)) - cx.volume(k, s);
    if (e > rep.max_excess) {
      rep.max_excess = e;
      rep.worst_simplex = s;
    }
  }
  rep.bounded = rep.max_excess <= tolerance;

  rep.max_closure = 0.0;
  if (k + 1 <= cx.max_degree()) {
    const IncidenceMatrix& b = cx.boundary_matrix(k + 1);
    for (int c = 0; c < b.cols; ++c) {
      double acc = 0.0;
      for (const auto& [r, sign] : b.columns[c]) acc += sign * alpha(r);
      if (std::abs(acc) > rep.max_closure) {
        rep.max_closure = std::abs(acc);
        rep.worst_coface = c;
      }
    }
  }
  rep.closed = rep.max_closure <= tolerance;

  rep.alpha_T = alpha.evaluate(t);
  rep.mass_T = mass(t);
  rep.gap = rep.mass_T - rep.alpha_T;
  rep.tight = std::abs(rep.gap) <= tolerance;
  rep.pass = rep.bounded && rep.closed && rep.tight;

  std::vector<char> touched(cx.vertex_count(), 0);
  for (const auto& [idx, _] : instance.boundary.coeffs())
    for (int v : cx.simplices(k - 1)[idx]) touched[v] = 1;
  for (int s = 0; s < cx.count(k); ++s) {
    const Simplex& sx = cx.simplices(k)[s];
    if (std::any_of(sx.begin(), sx.end(), [&](int v) { return touched[v] != 0; }))
      rep.near_boundary.emplace_back(s, alpha(s), cx.volume(k, s));
  }
  return rep;
}

InducedCochain induced_cochain(const FormField& phi, const ComplexPtr& complex, int degree, int quad_order) {
  require(complex != nullptr, ErrorCode::invalid_argument, "induced_cochain needs a complex");
  const int n = complex->count(degree);
  std::vector<double> values(n);
  double excess = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) {
    values[s] = integrate_simplex(*complex, degree, s, phi, quad_order);
    excess = std::max(excess, std::abs(values[s]) - complex->volume(degree, s));
  }
  return {DiscreteCochain(complex, degree, std::move(values)), excess};
}

// --- brute force -------------------------------------------------------------

namespace {

class Enumerator {
 public:
  Enumerator(const PlateauInstance& in, int bound, long node_limit)
      : in_(in), bound_(bound), node_limit_(node_limit) {
    const SimplicialComplex& cx = *in.complex;
    n_ = cx.count(in.k);
    const IncidenceMatrix& bm = cx.boundary_matrix(in.k);
    rows_.resize(bm.rows);
    for (int s = 0; s < n_; ++s)
      for (const auto& [r, sign] : bm.columns[s]) rows_[r].emplace_back(s, sign);
    target_.resize(bm.rows);
    for (int r = 0; r < bm.rows; ++r) target_[r] = in.boundary.coeff(r);
    var_rows_.resize(n_);
    for (int r = 0; r < bm.rows; ++r)
      for (const auto& [s, sign] : rows_[r]) var_rows_[s].emplace_back(r, sign);
    vol_.resize(n_);
    for (int s = 0; s < n_; ++s) vol_[s] = cx.volume(in.k, s);
    value_.assign(n_, 0);
    assigned_.assign(n_, 0);
    partial_.assign(bm.rows, 0);
    open_.resize(bm.rows);
    for (int r = 0; r < bm.rows; ++r) open_[r] = static_cast<int>(rows_[r].size());
  }

  OracleResult run() {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty() && target_[r] != 0) return finish();
    }
    search(0.0);
    return finish();
  }

 private:
  bool assign(int s, std::int64_t v) {
    assigned_[s] = 1;
    value_[s] = v;
    bool ok = true;
    for (const auto& [r, sign] : var_rows_[s]) {
      partial_[r] += sign * v;
      if (--open_[r] == 0 && partial_[r] != target_[r]) ok = false;
    }
    return ok;
  }

  void unassign(int s) {
    for (const auto& [r, sign] : var_rows_[s]) {
      partial_[r] -= sign * value_[s];
      ++open_[r];
    }
    assigned_[s] = 0;
    value_[s] = 0;
  }

  void search(double mass_so_far) {
    if (++nodes_ > node_limit_) fail(ErrorCode::resource_limit, "oracle node limit reached");
    if (mass_so_far > best_ + kMassTieTolerance) return;
    // Forced assignment from a row with a single open variable.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (open_[r] != 1) continue;
      for (const auto& [s, sign] : rows_[r]) {
        if (assigned_[s]) continue;
        const std::int64_t v = (target_[r] - partial_[r]) * sign;
        if (std::abs(v) > bound_) return;
        if (assign(s, v)) search(mass_so_far + vol_[s] * std::abs(static_cast<double>(v)));
        unassign(s);
        return;
      }
    }
    int next = -1;
    for (int s = 0; s < n_; ++s) {
      if (!assigned_[s]) {
        next = s;
        break;
      }
    }
    if (next < 0) {
      record(mass_so_far);
      return;
    }
    for (int mag = 0; mag <= bound_; ++mag) {
      for (int sgn : {1, -1}) {
        if (mag == 0 && sgn < 0) continue;
        const std::int64_t v = sgn * mag;
        if (assign(next, v)) search(mass_so_far + vol_[next] * mag);
        unassign(next);
      }
    }
  }

  void record(double m) {
    if (m < best_ - kMassTieTolerance) {
      best_ = m;
      found_.clear();
    }
    if (m <= best_ + kMassTieTolerance) found_.push_back(value_);
  }

  OracleResult finish() {
    OracleResult out;
    out.nodes = nodes_;
    out.feasible = !found_.empty();
    for (const auto& v : found_) {
      Chain c(in_.complex, in_.k);
      for (int s = 0; s < n_; ++s) c.add(s, v[s]);
      out.minimizers.push_back(std::move(c));
    }
    if (out.feasible) {
      out.mass = std::numeric_limits<double>::infinity();
      for (const Chain& c : out.minimizers) out.mass = std::min(out.mass, mass(c));
      // Ties were accepted against a moving best; keep the final ones only.
      std::vector<Chain> keep;
      for (const Chain& c : out.minimizers)
        if (mass(c) <= out.mass + kMassTieTolerance) keep.push_back(c);
      out.minimizers = std::move(keep);
      std::sort(out.minimizers.begin(), out.minimizers.end(), chain_less);
    }
    return out;
  }

  const PlateauInstance& in_;
  int bound_;
  long node_limit_;
  int n_ = 0;
  std::vector<std::vector<std::pair<int, int>>> rows_;
  std::vector<std::vector<std::pair<int, int>>> var_rows_;
  std::vector<std::int64_t> target_;
  std::vector<double> vol_;
  std::vector<std::int64_t> value_;
  std::vector<char> assigned_;
  std::vector<std::int64_t> partial_;
  std::vector<int> open_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::int64_t>> found_;
  long nodes_ = 0;
};

}  // namespace

OracleResult brute_force_oracle(const PlateauInstance& instance, int coeff_bound, const OracleLimits& limits) {
  check_instance(instance);
  require(coeff_bound >= 0 && coeff_bound <= limits.max_bound, ErrorCode::resource_limit,
          "oracle coefficient bound exceeds the limit " + std::to_string(limits.max_bound));
  require(instance.complex->count(instance.k) <= limits.max_simplices, ErrorCode::resource_limit,
          "oracle needs at most " + std::to_string(limits.max_simplices) + " k-simplices");
  return Enumerator(instance, coeff_bound, limits.node_limit).run();
}

}  // namespace calibra
