#include "calibra/json_io.hpp"

#include <cmath>

namespace calibra {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::parse_error, "field " + path + ": " + what);
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path + "/" + key, "missing");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9e15) return static_cast<std::int64_t>(v);
  }
  field_error(path, "expected an integer");
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(path, "non-finite number");
  return v;
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array");
  return j;
}

template <class T>
T tensor_from_json(const Json& j) {
  const int degree = static_cast<int>(as_int(member(j, "", "degree"), "/degree"));
  const int dim = static_cast<int>(as_int(member(j, "", "dim"), "/dim"));
  if (dim < 0 || dim > kMaxDim || degree < 0 || degree > dim) field_error("/degree", "degree/dim out of range");
  T out(degree, dim);
  const Json& terms = as_array(member(j, "", "terms"), "/terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string p = "/terms/" + std::to_string(i);
    const Json& axes = as_array(member(terms[i], p, "axes"), p + "/axes");
    std::vector<int> a;
    for (std::size_t q = 0; q < axes.size(); ++q) a.push_back(static_cast<int>(as_int(axes[q], p + "/axes")));
    MultiIndex idx;
    try {
      idx = MultiIndex::from_axes(std::span<const int>(a), dim);
    } catch (const Error& e) {
      field_error(p + "/axes", e.what());
    }
    if (idx.degree() != degree) field_error(p + "/axes", "wrong number of axes");
    out.add_term(idx, as_double(member(terms[i], p, "coeff"), p + "/coeff"));
  }
  return out;
}

template <class T>
Json tensor_to_json(const T& t) {
  Json terms = Json::array();
  for (const auto& [idx, c] : t.terms()) terms.push_back({{"axes", idx.axes()}, {"coeff", c}});
  return {{"degree", t.degree()}, {"dim", t.dim()}, {"terms", terms}};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = std::min(e.byte, text.size());
    int line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::parse_error, "JSON syntax error at line " + std::to_string(line) + ", column " +
                                     std::to_string(col));
  }
}

Json to_json(const KVector& xi) { return tensor_to_json(xi); }
Json to_json(const KCovector& phi) { return tensor_to_json(phi); }
KVector kvector_from_json(const Json& j) { return tensor_from_json<KVector>(j); }
KCovector kcovector_from_json(const Json& j) { return tensor_from_json<KCovector>(j); }

ComplexPtr complex_from_json(const Json& j) {
  const std::int64_t dim = as_int(member(j, "", "dim"), "/dim");
  if (dim < 1 || dim > kMaxDim) field_error("/dim", "must lie in [1, 32]");
  const Json& verts = as_array(member(j, "", "vertices"), "/vertices");
  if (verts.empty()) field_error("/vertices", "empty");
  std::vector<Vec> vertices;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string p = "/vertices/" + std::to_string(i);
    const Json& v = as_array(verts[i], p);
    if (static_cast<std::int64_t>(v.size()) != dim) field_error(p, "expected " + std::to_string(dim) + " coordinates");
    Vec x(dim);
    for (std::int64_t a = 0; a < dim; ++a) x[a] = as_double(v[a], p + "/" + std::to_string(a));
    vertices.push_back(std::move(x));
  }
  std::map<int, std::vector<Simplex>> simplices;
  const Json& sx = member(j, "", "simplices");
  if (!sx.is_object()) field_error("/simplices", "expected an object keyed by degree");
  for (const auto& [key, list] : sx.items()) {
    const std::string p = "/simplices/" + key;
    int k = -1;
    try {
      std::size_t used = 0;
      k = std::stoi(key, &used);
      if (used != key.size()) k = -1;
    } catch (const std::exception&) {
      k = -1;
    }
    if (k < 0 || k > dim) field_error(p, "degree key must be an integer in [0, dim]");
    as_array(list, p);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string q = p + "/" + std::to_string(i);
      const Json& s = as_array(list[i], q);
      Simplex simplex;
      for (std::size_t a = 0; a < s.size(); ++a) {
        const std::int64_t v = as_int(s[a], q + "/" + std::to_string(a));
        if (v < 0 || v >= static_cast<std::int64_t>(vertices.size())) field_error(q, "vertex index out of range");
        simplex.push_back(static_cast<int>(v));
      }
      if (static_cast<int>(simplex.size()) != k + 1) field_error(q, "expected " + std::to_string(k + 1) + " vertices");
      simplices[k].push_back(std::move(simplex));
    }
  }
  try {
    return std::make_shared<const SimplicialComplex>(std::move(vertices), simplices);
  } catch (const Error& e) {
    field_error("/simplices", e.what());
  }
}

Json complex_to_json(const SimplicialComplex& cx) {
  Json verts = Json::array();
  for (const Vec& v : cx.vertices()) verts.push_back(vec_to_json(v));
  Json sx = Json::object();
  for (int k = 1; k <= cx.max_degree(); ++k) sx[std::to_string(k)] = cx.simplices(k);
  return {{"dim", cx.dim()}, {"vertices", verts}, {"simplices", sx}};
}

Chain chain_from_json(const Json& j, const ComplexPtr& complex) {
  const std::int64_t degree = as_int(member(j, "", "degree"), "/degree");
  if (degree < 0 || degree > complex->max_degree()) field_error("/degree", "outside the degrees of the complex");
  Chain c(complex, static_cast<int>(degree));
  const Json& coeffs = as_array(member(j, "", "coeffs"), "/coeffs");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string p = "/coeffs/" + std::to_string(i);
    const Json& e = as_array(coeffs[i], p);
    if (e.size() != 2) field_error(p, "expected [simplex_index, coeff]");
    const std::int64_t idx = as_int(e[0], p + "/0");
    if (idx < 0 || idx >= complex->count(static_cast<int>(degree))) field_error(p + "/0", "simplex index out of range");
    c.add(static_cast<int>(idx), as_int(e[1], p + "/1"));
  }
  return c;
}

Json chain_to_json(const Chain& c) {
  Json coeffs = Json::array();
  for (const auto& [i, v] : c.coeffs()) coeffs.push_back({i, v});
  return {{"degree", c.degree()}, {"coeffs", coeffs}};
}

DiscreteCochain cochain_from_json(const Json& j, const ComplexPtr& complex) {
  const std::int64_t degree = as_int(member(j, "", "degree"), "/degree");
  if (degree < 0 || degree > complex->max_degree()) field_error("/degree", "outside the degrees of the complex");
  const Json& vals = as_array(member(j, "", "values"), "/values");
  if (static_cast<int>(vals.size()) != complex->count(static_cast<int>(degree))) {
    field_error("/values", "expected one value per " + std::to_string(degree) + "-simplex (" +
                               std::to_string(complex->count(static_cast<int>(degree))) + ")");
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < vals.size(); ++i) values.push_back(as_double(vals[i], "/values/" + std::to_string(i)));
  return DiscreteCochain(complex, static_cast<int>(degree), std::move(values));
}

Json cochain_to_json(const DiscreteCochain& a) { return {{"degree", a.degree()}, {"values", a.values()}}; }

PlateauInstance instance_from_json(const Json& j) {
  ComplexPtr cx = complex_from_json(j);
  const std::int64_t k = as_int(member(j, "", "k"), "/k");
  if (k < 1 || k > cx->max_degree()) field_error("/k", "must lie in [1, top degree of the complex]");
  auto prefixed = [](const std::string& prefix, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::parse_error) throw;
      std::string msg = e.what();
      const std::string head = "field ";
      if (msg.rfind(head, 0) == 0) msg = head + prefix + msg.substr(head.size());
      fail(ErrorCode::parse_error, msg);
    }
  };
  Chain b = prefixed("/boundary", [&] { return chain_from_json(member(j, "", "boundary"), cx); });
  if (b.degree() != k - 1) field_error("/boundary/degree", "must equal k - 1");
  PlateauInstance in{cx, static_cast<int>(k), b};
  if (j.contains("candidate")) {
    in.candidate = prefixed("/candidate", [&] { return chain_from_json(j["candidate"], cx); });
    if (in.candidate->degree() != k) field_error("/candidate/degree", "must equal k");
  }
  if (j.contains("certificate")) {
    in.certificate = prefixed("/certificate", [&] { return cochain_from_json(j["certificate"], cx); });
    if (in.certificate->degree() != k) field_error("/certificate/degree", "must equal k");
  }
  return in;
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json plane_to_json(const SimplePlane& plane) {
  Json frame = Json::array();
  for (int c = 0; c < plane.k(); ++c) frame.push_back(vec_to_json(plane.frame().col(c)));
  return {{"k", plane.k()}, {"n", plane.n()}, {"frame", frame}, {"plucker", to_json(plane.plucker())}};
}

}  // namespace calibra
