// calibra <comass|verify|plateau|density|fill> [args]
//
// Exit codes: 0 success, 1 usage or input error, 2 infeasible (plateau) or
// cycle that bounds nothing (fill), 3 UNKNOWN uniqueness verdict with --probe,
// 4 a verification check failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "calibra/calibra.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kError = 1, kInfeasible = 2, kUnknown = 3, kCheckFailed = 4 };

struct Output {
  bool csv = false;
  bool quiet = false;
  std::string path;
};

struct CError {
  calibra_status status;
};

void check(calibra_status s) {
  if (s != CALIBRA_OK) throw CError{s};
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { calibra_free_string(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using FormHandle = Handle<calibra_form, calibra_form_free>;
using ComplexHandle = Handle<calibra_complex, calibra_complex_free>;
using ChainHandle = Handle<calibra_chain, calibra_chain_free>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Output& out, const std::string& json_text, const std::string& csv_text) {
  if (out.quiet) return;
  const std::string& text = out.csv ? csv_text : json_text;
  if (out.path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + out.path + "'");
  f << text;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::runtime_error(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) throw std::runtime_error(std::string("empty ") + what);
  return out;
}

// The complex part of an input document and one chain field.
struct LoadedChain {
  ComplexHandle complex;
  ChainHandle chain;
};

void load_chain(const std::string& path, const std::vector<std::string>& fields, LoadedChain& out) {
  const std::string text = read_file(path);
  check(calibra_complex_from_json(text.c_str(), &out.complex.p));
  Json doc = Json::parse(text);
  for (const std::string& f : fields) {
    if (doc.contains(f)) {
      const std::string chain = doc[f].dump();
      check(calibra_chain_from_json(out.complex.p, chain.c_str(), &out.chain.p));
      return;
    }
  }
  std::string names;
  for (const std::string& f : fields) names += (names.empty() ? "" : " or ") + f;
  throw std::runtime_error(path + ": missing field " + names);
}

std::string chain_csv(const Json& chain, int index) {
  std::string s;
  for (const auto& t : chain["terms"]) {
    s += std::to_string(index) + ",";
    s += t["simplex"].is_string() ? t["simplex"].get<std::string>() : t["simplex"].dump();
    s += "," + std::to_string(t["coeff"].get<long long>()) + "\n";
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calibrations, minimal graphs and discrete Plateau problems"};
  app.require_subcommand(1);
  Output out;
  auto add_output = [&out](CLI::App* cmd) {
    auto* json = cmd->add_flag("--json", "JSON report (default)");
    cmd->add_flag("--csv", out.csv, "CSV report")->excludes(json);
    cmd->add_flag("--quiet", out.quiet, "Print nothing; only the exit code matters");
    cmd->add_option("--output,-o", out.path, "Write the report to a file");
  };

  // comass
  auto* comass = app.add_subcommand("comass", "Comass of a catalog form");
  std::string form_id;
  int k = 2, dim = 4;
  calibra_comass_options copt;
  calibra_comass_options_init(&copt);
  comass->add_option("form", form_id, "Catalog id, e.g. kahler, coassociative, scale:2:volume")->required();
  comass->add_option("--k", k, "Degree for ids without one")->check(CLI::PositiveNumber);
  comass->add_option("--dim", dim, "Dimension for ids without one")->check(CLI::PositiveNumber);
  comass->add_option("--seed", copt.seed, "Random seed")->required();
  comass->add_option("--samples", copt.samples, "Sample points for non-constant forms")->check(CLI::PositiveNumber);
  comass->add_option("--restarts", copt.restarts, "Ascent restarts")->check(CLI::PositiveNumber);
  comass->add_option("--iters", copt.iterations, "Ascent iterations per restart")->check(CLI::PositiveNumber);
  add_output(comass);

  // verify
  auto* verify = app.add_subcommand("verify", "Run the checks of a named example");
  std::string example;
  calibra_verify_options vopt;
  calibra_verify_options_init(&vopt);
  verify->add_option("example", example, "loc, holomorphic:<poly>, slag-quadratic:<c..>, affine:<matrix>, ...")
      ->required();
  verify->add_option("--samples", vopt.samples, "Sample points")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vopt.seed, "Random seed");
  verify->add_option("--tol", vopt.tolerance, "Check tolerance")->check(CLI::PositiveNumber);
  add_output(verify);

  // plateau
  auto* plateau = app.add_subcommand("plateau", "Solve a discrete Plateau instance");
  std::string instance_path, certificate_path;
  bool oracle = false;
  calibra_plateau_options popt;
  calibra_plateau_options_init(&popt);
  int probe = 0;
  plateau->add_option("instance", instance_path, "Instance JSON file")->required();
  plateau->add_flag("--oracle", oracle, "Also run the exhaustive oracle");
  plateau->add_option("--oracle-bound", popt.oracle_bound, "Oracle coefficient bound")->check(CLI::PositiveNumber);
  plateau->add_option("--oracle-max-simplices", popt.oracle_max_simplices, "Oracle size limit")
      ->check(CLI::PositiveNumber);
  plateau->add_option("--certificate", certificate_path, "Cochain JSON file to verify");
  plateau->add_option("--probe", probe, "Uniqueness probe with N perturbation trials")->check(CLI::PositiveNumber);
  plateau->add_option("--seed", popt.seed, "Random seed for the probe");
  plateau->add_option("--node-limit", popt.node_limit, "Branch-and-bound node limit")->check(CLI::PositiveNumber);
  add_output(plateau);

  // density
  auto* density = app.add_subcommand("density", "Density ratios of a chain at a point");
  std::string density_path, point_text, radii_text;
  int levels = 4;
  density->add_option("input", density_path, "Complex JSON with a \"chain\" field")->required();
  density->add_option("--point", point_text, "Comma-separated coordinates")->required();
  density->add_option("--radii", radii_text, "Comma-separated radii")->required();
  density->add_option("--levels", levels, "Subdivision levels")->check(CLI::Range(0, 8));
  add_output(density);

  // fill
  auto* fill = app.add_subcommand("fill", "Fill a cycle by a chain of one degree higher");
  std::string fill_path;
  fill->add_option("input", fill_path, "Complex JSON with a \"cycle\" (or \"boundary\") field")->required();
  add_output(fill);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*comass) {
      FormHandle f;
      check(calibra_form_from_id(form_id.c_str(), k, dim, &f.p));
      OwnedString report;
      check(calibra_form_comass_report(f.p, &copt, &report.p));
      const Json j = Json::parse(report.str());
      std::string csv = "point,comass\n";
      for (const auto& e : j["per_point_values"]) {
        std::string p;
        for (const auto& x : e["point"]) p += (p.empty() ? "" : " ") + num(x.get<double>());
        csv += p + "," + num(e["comass"].get<double>()) + "\n";
      }
      emit(out, report.str(), csv);
      return kOk;
    }
    if (*verify) {
      OwnedString report;
      int passed = 0;
      check(calibra_verify(example.c_str(), &vopt, &report.p, &passed));
      const Json j = Json::parse(report.str());
      std::string csv = "check,value,limit,pass\n";
      for (const auto& c : j["checks"])
        csv += c["name"].get<std::string>() + "," + num(c["value"].get<double>()) + "," +
               num(c["limit"].get<double>()) + "," + (c["pass"].get<bool>() ? "PASS" : "FAIL") + "\n";
      emit(out, report.str(), csv);
      return passed ? kOk : kCheckFailed;
    }
    if (*plateau) {
      const std::string instance = read_file(instance_path);
      std::string certificate;
      if (!certificate_path.empty()) {
        certificate = read_file(certificate_path);
        popt.certificate_json = certificate.c_str();
      }
      popt.run_oracle = oracle ? 1 : 0;
      popt.probe_trials = probe;
      OwnedString report;
      calibra_verdict verdict = CALIBRA_VERDICT_NOT_PROBED;
      const calibra_status s = calibra_plateau_solve(instance.c_str(), &popt, &report.p, &verdict);
      if (s == CALIBRA_INFEASIBLE) {
        emit(out, report.str(), "status\nINFEASIBLE\n");
        if (!out.quiet) std::cerr << "calibra: " << calibra_last_error() << "\n";
        return kInfeasible;
      }
      check(s);
      const Json j = Json::parse(report.str());
      std::string csv = "minimizer,simplex,coeff\n";
      int index = 0;
      for (const auto& m : j["minimizers"]) csv += chain_csv(m, index++);
      emit(out, report.str(), csv);
      return probe > 0 && verdict == CALIBRA_VERDICT_UNKNOWN ? kUnknown : kOk;
    }
    if (*density) {
      LoadedChain lc;
      load_chain(density_path, {"chain", "candidate"}, lc);
      const auto point = parse_list(point_text, "--point");
      const auto radii = parse_list(radii_text, "--radii");
      std::vector<double> values(radii.size());
      check(calibra_chain_density(lc.chain.p, point.data(), point.size(), radii.data(), radii.size(), levels,
                                  values.data()));
      Json j = {{"point", point}, {"levels", levels}, {"radii", radii}, {"density", values}};
      std::string csv = "radius,density\n";
      for (std::size_t i = 0; i < radii.size(); ++i) csv += num(radii[i]) + "," + num(values[i]) + "\n";
      emit(out, j.dump(2) + "\n", csv);
      return kOk;
    }
    if (*fill) {
      LoadedChain lc;
      load_chain(fill_path, {"cycle", "boundary"}, lc);
      int found = 0;
      ChainHandle s;
      check(calibra_chain_fill(lc.chain.p, &found, &s.p));
      if (!found) {
        emit(out, Json{{"status", "NOT_A_BOUNDARY"}}.dump(2) + "\n", "status\nNOT_A_BOUNDARY\n");
        return kInfeasible;
      }
      OwnedString chain;
      check(calibra_chain_to_json(s.p, &chain.p));
      double m = 0.0;
      check(calibra_chain_mass(s.p, &m));
      const Json c = Json::parse(chain.str());
      const Json j = {{"status", "FILLED"}, {"mass", m}, {"chain", c}};
      std::string csv = "simplex,coeff\n";
      for (const auto& e : c["coeffs"]) csv += std::to_string(e[0].get<long long>()) + "," +
                                                std::to_string(e[1].get<long long>()) + "\n";
      emit(out, j.dump(2) + "\n", csv);
      return kOk;
    }
  } catch (const CError& e) {
    std::cerr << "calibra: " << calibra_status_name(e.status) << ": " << calibra_last_error() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "calibra: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
