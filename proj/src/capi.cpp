#include "calibra/calibra.h"

#include <cstring>
#include <new>
#include <random>
#include <string>

#include "calibra/examples.hpp"
#include "calibra/json_io.hpp"

using namespace calibra;

struct calibra_form {
  FormField form;
};

struct calibra_complex {
  ComplexPtr complex;
};

struct calibra_chain {
  Chain chain;
};

namespace {

thread_local std::string last_error;

calibra_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return CALIBRA_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return CALIBRA_DIMENSION_MISMATCH;
    case ErrorCode::degree_overflow: return CALIBRA_DEGREE_OVERFLOW;
    case ErrorCode::out_of_region: return CALIBRA_OUT_OF_REGION;
    case ErrorCode::precondition_failed: return CALIBRA_PRECONDITION_FAILED;
    case ErrorCode::infeasible: return CALIBRA_INFEASIBLE;
    case ErrorCode::resource_limit: return CALIBRA_RESOURCE_LIMIT;
    case ErrorCode::parse_error: return CALIBRA_PARSE_ERROR;
    case ErrorCode::non_finite: return CALIBRA_NON_FINITE;
  }
  return CALIBRA_INTERNAL_ERROR;
}

template <class F>
calibra_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return CALIBRA_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CALIBRA_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CALIBRA_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Vec to_vec(const double* p, std::size_t n) {
  need(p, "point");
  Vec v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = p[i];
  return v;
}

AscentOptions ascent_of(const calibra_comass_options* o) {
  AscentOptions a;
  if (o == nullptr) return a;
  require(o->restarts >= 1 && o->iterations >= 1, ErrorCode::invalid_argument,
          "restarts and iterations must be positive");
  a.restarts = o->restarts;
  a.iterations = o->iterations;
  a.seed = o->seed;
  return a;
}

// Chain JSON plus a readable listing [{"simplex", "coeff"}] using vertex
// labels when the instance supplies them.
Json chain_report(const Chain& c, const std::vector<std::string>& labels) {
  Json j = chain_to_json(c);
  Json terms = Json::array();
  const auto& sx = c.complex()->simplices(c.degree());
  for (const auto& [i, v] : c.coeffs()) {
    Json s;
    if (!labels.empty()) {
      std::string name;
      for (int vtx : sx[i]) name += labels[vtx];
      s = name;
    } else {
      s = sx[i];
    }
    terms.push_back({{"simplex", s}, {"coeff", v}});
  }
  j["terms"] = terms;
  j["mass"] = mass(c);
  return j;
}

Json certificate_json(const CertificateReport& r) {
  Json near = Json::array();
  for (const auto& [s, a, vol] : r.near_boundary) near.push_back({{"simplex", s}, {"alpha", a}, {"volume", vol}});
  return {{"pass", r.pass},
          {"bounded", r.bounded},
          {"closed", r.closed},
          {"tight", r.tight},
          {"max_excess", r.max_excess},
          {"worst_simplex", r.worst_simplex},
          {"max_closure", r.max_closure},
          {"worst_coface", r.worst_coface},
          {"alpha_T", r.alpha_T},
          {"mass_T", r.mass_T},
          {"gap", r.gap},
          {"near_boundary", near}};
}

calibra_verdict verdict_of(Verdict v) {
  switch (v) {
    case Verdict::unique: return CALIBRA_VERDICT_UNIQUE;
    case Verdict::multiple: return CALIBRA_VERDICT_MULTIPLE;
    case Verdict::unknown: return CALIBRA_VERDICT_UNKNOWN;
    case Verdict::not_probed: return CALIBRA_VERDICT_NOT_PROBED;
  }
  return CALIBRA_VERDICT_UNKNOWN;
}

}  // namespace

extern "C" {

const char* calibra_version(void) { return "1.0.0"; }

const char* calibra_last_error(void) { return last_error.c_str(); }

const char* calibra_status_name(calibra_status status) {
  switch (status) {
    case CALIBRA_OK: return "ok";
    case CALIBRA_INVALID_ARGUMENT: return "invalid argument";
    case CALIBRA_DIMENSION_MISMATCH: return "dimension mismatch";
    case CALIBRA_DEGREE_OVERFLOW: return "degree overflow";
    case CALIBRA_OUT_OF_REGION: return "point outside region";
    case CALIBRA_PRECONDITION_FAILED: return "precondition failed";
    case CALIBRA_INFEASIBLE: return "infeasible";
    case CALIBRA_RESOURCE_LIMIT: return "resource limit";
    case CALIBRA_PARSE_ERROR: return "parse error";
    case CALIBRA_NON_FINITE: return "non-finite value";
    case CALIBRA_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

void calibra_free_string(char* s) { std::free(s); }

void calibra_comass_options_init(calibra_comass_options* o) {
  if (o == nullptr) return;
  const AscentOptions d;
  o->restarts = d.restarts;
  o->iterations = d.iterations;
  o->seed = d.seed;
  o->samples = 64;
}

calibra_status calibra_form_from_id(const char* id, int k, int dim, calibra_form** out) {
  return guarded([&] {
    need(id, "id");
    need(out, "out");
    *out = new calibra_form{form_from_id(id, k, dim)};
  });
}

void calibra_form_free(calibra_form* form) { delete form; }

calibra_status calibra_form_shape(const calibra_form* form, int* degree, int* dim) {
  return guarded([&] {
    need(form, "form");
    if (degree) *degree = form->form.degree();
    if (dim) *dim = form->form.dim();
  });
}

calibra_status calibra_form_comass_at(const calibra_form* form, const double* point, size_t dim,
                                      const calibra_comass_options* options, double* comass) {
  return guarded([&] {
    need(form, "form");
    need(comass, "comass");
    *comass = comass_at(form->form, to_vec(point, dim), ascent_of(options)).value;
  });
}

calibra_status calibra_form_comass_report(const calibra_form* form, const calibra_comass_options* options,
                                          char** json) {
  return guarded([&] {
    need(form, "form");
    need(json, "json");
    const FormField& phi = form->form;
    const AscentOptions ascent = ascent_of(options);
    std::vector<Vec> samples;
    if (phi.is_constant()) {
      samples.push_back(Vec::Zero(phi.dim()));
    } else {
      const int count = options ? options->samples : 64;
      require(count >= 1, ErrorCode::invalid_argument, "samples must be positive");
      std::mt19937_64 rng(derive_seed(ascent.seed, 0x5a5a));
      for (int i = 0; i < count; ++i) samples.push_back(phi.region().sample(rng));
    }
    const GlobalComass g = comass_global(phi, samples, ascent);
    Json per = Json::array();
    for (std::size_t i = 0; i < samples.size(); ++i)
      per.push_back({{"point", vec_to_json(samples[i])}, {"comass", g.per_point[i]}});
    const Json report = {{"form", phi.name()},
                         {"degree", phi.degree()},
                         {"dim", phi.dim()},
                         {"comass", g.value},
                         {"argmax_point", vec_to_json(g.argmax_point)},
                         {"argmax_plane", plane_to_json(g.argmax_plane)},
                         {"restarts", ascent.restarts},
                         {"iterations", ascent.iterations},
                         {"seed", ascent.seed},
                         {"per_point_values", per}};
    *json = dup_string(dump(report));
  });
}

void calibra_verify_options_init(calibra_verify_options* o) {
  if (o == nullptr) return;
  const VerifyOptions d;
  o->samples = d.samples;
  o->seed = d.seed;
  o->tolerance = d.tolerance;
}

calibra_status calibra_verify(const char* example_id, const calibra_verify_options* options, char** json,
                              int* passed) {
  return guarded([&] {
    need(example_id, "example id");
    need(json, "json");
    VerifyOptions vo;
    if (options) {
      vo.samples = options->samples;
      vo.seed = options->seed;
      vo.tolerance = options->tolerance;
    }
    const VerifyReport r = verify_example(example_id, vo);
    Json checks = Json::array();
    for (const CheckResult& c : r.checks)
      checks.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
    const Json report = {{"example", r.example}, {"samples", vo.samples}, {"seed", vo.seed}, {"checks", checks},
                         {"pass", r.pass()}};
    *json = dup_string(dump(report));
    if (passed) *passed = r.pass() ? 1 : 0;
  });
}

calibra_status calibra_complex_from_json(const char* json, calibra_complex** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new calibra_complex{complex_from_json(parse_json(json))};
  });
}

void calibra_complex_free(calibra_complex* complex) { delete complex; }

calibra_status calibra_complex_count(const calibra_complex* complex, int degree, int* count) {
  return guarded([&] {
    need(complex, "complex");
    need(count, "count");
    *count = complex->complex->count(degree);
  });
}

calibra_status calibra_chain_from_json(const calibra_complex* complex, const char* json, calibra_chain** out) {
  return guarded([&] {
    need(complex, "complex");
    need(json, "json");
    need(out, "out");
    *out = new calibra_chain{chain_from_json(parse_json(json), complex->complex)};
  });
}

calibra_status calibra_chain_from_dense(const calibra_complex* complex, int degree, const int64_t* coeffs,
                                        size_t count, calibra_chain** out) {
  return guarded([&] {
    need(complex, "complex");
    need(out, "out");
    require(degree >= 0 && degree <= complex->complex->max_degree(), ErrorCode::degree_overflow,
            "chain degree outside the complex");
    require(count == static_cast<size_t>(complex->complex->count(degree)), ErrorCode::dimension_mismatch,
            "one coefficient per simplex expected");
    if (count > 0) need(coeffs, "coeffs");
    Chain c(complex->complex, degree);
    for (size_t i = 0; i < count; ++i) c.add(static_cast<int>(i), coeffs[i]);
    *out = new calibra_chain{c};
  });
}

void calibra_chain_free(calibra_chain* chain) { delete chain; }

calibra_status calibra_chain_to_json(const calibra_chain* chain, char** json) {
  return guarded([&] {
    need(chain, "chain");
    need(json, "json");
    *json = dup_string(dump(chain_to_json(chain->chain)));
  });
}

calibra_status calibra_chain_degree(const calibra_chain* chain, int* degree) {
  return guarded([&] {
    need(chain, "chain");
    need(degree, "degree");
    *degree = chain->chain.degree();
  });
}

calibra_status calibra_chain_mass(const calibra_chain* chain, double* out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = mass(chain->chain);
  });
}

calibra_status calibra_chain_boundary(const calibra_chain* chain, calibra_chain** out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    *out = new calibra_chain{boundary(chain->chain)};
  });
}

calibra_status calibra_chain_pair(const calibra_chain* chain, const calibra_form* form, int quad_order,
                                  double* value) {
  return guarded([&] {
    need(chain, "chain");
    need(form, "form");
    need(value, "value");
    *value = pair(chain->chain, form->form, quad_order);
  });
}

calibra_status calibra_chain_density(const calibra_chain* chain, const double* point, size_t dim,
                                     const double* radii, size_t count, int levels, double* out) {
  return guarded([&] {
    need(chain, "chain");
    need(out, "out");
    if (count > 0) need(radii, "radii");
    const std::vector<double> r(radii, radii + count);
    const auto d = density_estimate(chain->chain, to_vec(point, dim), r, levels);
    std::copy(d.begin(), d.end(), out);
  });
}

calibra_status calibra_chain_fill(const calibra_chain* chain, int* found, calibra_chain** out) {
  return guarded([&] {
    need(chain, "chain");
    need(found, "found");
    need(out, "out");
    *out = nullptr;
    const auto s = fill_cycle(chain->chain);
    *found = s ? 1 : 0;
    if (s) *out = new calibra_chain{*s};
  });
}

void calibra_plateau_options_init(calibra_plateau_options* o) {
  if (o == nullptr) return;
  const OracleLimits limits;
  o->probe_trials = 0;
  o->run_oracle = 0;
  o->oracle_bound = 2;
  o->oracle_max_simplices = limits.max_simplices;
  o->seed = 0;
  o->node_limit = SolveOptions{}.node_limit;
  o->certificate_json = nullptr;
}

calibra_status calibra_plateau_solve(const char* instance_json, const calibra_plateau_options* options,
                                     char** report_json, calibra_verdict* verdict) {
  calibra_plateau_options opts;
  calibra_plateau_options_init(&opts);
  if (options) opts = *options;
  return guarded([&] {
    need(instance_json, "instance");
    need(report_json, "report");
    *report_json = nullptr;
    const Json doc = parse_json(instance_json);
    PlateauInstance in = instance_from_json(doc);
    if (opts.certificate_json != nullptr) {
      try {
        in.certificate = cochain_from_json(parse_json(opts.certificate_json), in.complex);
      } catch (const Error& e) {
        fail(e.code(), std::string("certificate: ") + e.what());
      }
      require(in.certificate->degree() == in.k, ErrorCode::parse_error, "certificate: degree must equal k");
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
      const Json& l = doc["labels"];
      require(l.is_array() && static_cast<int>(l.size()) == in.complex->vertex_count(), ErrorCode::parse_error,
              "field /labels: one string per vertex expected");
      for (const Json& s : l) {
        require(s.is_string(), ErrorCode::parse_error, "field /labels: strings expected");
        labels.push_back(s.get<std::string>());
      }
    }
    require(opts.probe_trials >= 0, ErrorCode::invalid_argument, "probe trials must be non-negative");
    require(opts.node_limit >= 1, ErrorCode::invalid_argument, "node limit must be positive");

    Json report;
    report["k"] = in.k;
    report["simplices"] = in.complex->count(in.k);
    SolveOptions so;
    so.node_limit = opts.node_limit;
    std::optional<PlateauSolution> sol;
    try {
      sol = solve(in, so);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::infeasible) throw;
      report["status"] = "INFEASIBLE";
      report["message"] = e.what();
      *report_json = dup_string(dump(report));
      if (verdict) *verdict = CALIBRA_VERDICT_NOT_PROBED;
      throw;
    }
    std::vector<Chain> minimizers = sol->minimizers;
    Verdict v = sol->proven ? Verdict::not_probed : Verdict::unknown;
    if (opts.probe_trials > 0 && sol->proven) {
      const ProbeResult probe = uniqueness_probe(in, *sol, opts.probe_trials, opts.seed, so);
      v = probe.verdict;
      minimizers = probe.minimizers;
      report["probe"] = {{"perturbation_trials", probe.perturbation_trials},
                         {"forced_deviations", probe.forced_deviations},
                         {"lp_solves", probe.lp_solves}};
    }
    report["status"] = "SOLVED";
    report["optimality_proven"] = sol->proven;
    report["mass"] = sol->mass;
    report["verdict"] = to_string(v);
    report["chain"] = chain_report(sol->chain, labels);
    Json mins = Json::array();
    for (const Chain& m : minimizers) mins.push_back(chain_report(m, labels));
    report["minimizers"] = mins;
    report["diagnostics"] = {{"lp_solves", sol->diagnostics.lp_solves},
                             {"branch_nodes", sol->diagnostics.branch_nodes},
                             {"pivots", sol->diagnostics.pivots},
                             {"root_integral", sol->diagnostics.root_integral},
                             {"root_objective", sol->diagnostics.root_objective},
                             {"node_limit_hit", sol->diagnostics.node_limit_hit}};
    if (in.candidate) {
      const double cm = mass(*in.candidate);
      report["candidate"] = {{"mass", cm},
                             {"boundary_ok", boundary(*in.candidate) == in.boundary},
                             {"minimizing", std::abs(cm - sol->mass) <= kMassTieTolerance}};
    }
    if (in.certificate) {
      Json per = Json::array();
      bool all = true;
      for (const Chain& m : minimizers) {
        const CertificateReport cr = verify_certificate(in, m, *in.certificate);
        all = all && cr.pass;
        per.push_back(certificate_json(cr));
      }
      Json cert = {{"pass", all}, {"per_minimizer", per}};
      if (in.candidate) cert["candidate"] = certificate_json(verify_certificate(in, *in.candidate, *in.certificate));
      report["certificate"] = cert;
    }
    if (opts.run_oracle) {
      OracleLimits limits;
      limits.max_simplices = opts.oracle_max_simplices;
      const OracleResult o = brute_force_oracle(in, opts.oracle_bound, limits);
      const bool count_ok = v == Verdict::not_probed || v == Verdict::unknown ||
                            (v == Verdict::unique) == (o.minimizers.size() == 1);
      report["oracle"] = {{"feasible", o.feasible},
                          {"mass", o.mass},
                          {"minimizers", o.minimizers.size()},
                          {"nodes", o.nodes},
                          {"coefficient_bound", opts.oracle_bound},
                          {"mass_agrees", o.feasible && std::abs(o.mass - sol->mass) <= 1e-9},
                          {"verdict_agrees", count_ok}};
    }
    *report_json = dup_string(dump(report));
    if (verdict) *verdict = verdict_of(v);
  });
}

}  // extern "C"
