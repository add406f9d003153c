#include "bellopt/serialization.hpp"

#include <cmath>

#include "json.hpp"

namespace bellopt {

using nlohmann::json;

namespace {

json coeffs_json(const OutcomeVector& v) {
  json arr = json::array();
  for (int n = 0; n < kDim; ++n) arr.push_back(v[n]);
  return arr;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

OutcomeVector read_coeffs(const json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw SchemaError("expected an object with field \"coeffs\"");
  const json& c = j.at("coeffs");
  if (!c.is_array() || c.size() != kDim) throw SchemaError("\"coeffs\" must be an array of 16 numbers");
  Vec16 v;
  for (int n = 0; n < kDim; ++n) {
    if (!c[n].is_number()) throw SchemaError("\"coeffs\" must be an array of 16 numbers");
    v[n] = c[n].get<double>();
    if (!std::isfinite(v[n])) throw SchemaError("\"coeffs\" entries must be finite");
  }
  if (j.contains("labels")) {
    const json& l = j.at("labels");
    if (!l.is_array() || l.size() != 1 || l[0] != "abxy-order")
      throw SchemaError("\"labels\" must be [\"abxy-order\"]");
  }
  return OutcomeVector(v);
}

json vector_object(const OutcomeVector& v) { return json{{"coeffs", coeffs_json(v)}, {"labels", {"abxy-order"}}}; }

}  // namespace

std::string to_json(const OutcomeVector& v) { return vector_object(v).dump(2); }

std::string to_json(const BellInequality& b) {
  json j = vector_object(b.coeffs);
  j["local_bound"] = b.local_bound;
  j["name"] = b.name;
  return j.dump(2);
}

OutcomeVector outcome_vector_from_json(std::string_view text) { return read_coeffs(parse(text)); }

BellInequality inequality_from_json(std::string_view text) {
  const json j = parse(text);
  BellInequality b{read_coeffs(j), 0.0, ""};
  if (j.contains("local_bound")) {
    if (!j.at("local_bound").is_number()) throw SchemaError("\"local_bound\" must be a number");
    b.local_bound = j.at("local_bound").get<double>();
  }
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw SchemaError("\"name\" must be a string");
    b.name = j.at("name").get<std::string>();
  }
  return b;
}

std::string decomposition_json(const OutcomeVector& v, double tol) {
  const auto alpha = alpha_coefficients(v);
  const DecomposedVector dv = decompose(v);
  json components = json::array();
  for (Subspace s : kAllSubspaces) {
    const OutcomeVector& part = dv.component(s);
    if (part.coeffs().cwiseAbs().maxCoeff() <= tol) continue;
    json terms = json::object();
    for (const Signs& q : members(s)) {
      const double a = alpha[sign_index(q)];
      if (std::abs(a) > tol) terms[sign_string(q)] = a;
    }
    components.push_back({{"subspace", std::string(name_of(s))},
                          {"coarse", std::string(name_of(coarse_of(s)))},
                          {"alpha", terms},
                          {"norm", part.norm()},
                          {"coeffs", coeffs_json(part)}});
  }
  json j{{"input", vector_object(v)},
         {"components", components},
         {"normalized", is_normalized(v)},
         {"nonsignaling", is_nonsignaling(v, 1e-12)}};
  return j.dump(2);
}

std::string ensemble_summary_json(const EnsembleReport& report) {
  json per = json::array();
  for (const auto& s : report.inequalities) {
    json e{{"name", s.name}, {"local_bound", s.local_bound}, {"mean", s.mean}, {"std_dev", s.std_dev}};
    e["sigma_ratio"] = s.std_dev > 0.0 ? json((s.mean - s.local_bound) / s.std_dev) : json(nullptr);
    per.push_back(e);
  }
  json j{{"runs", report.runs},
         {"seed", report.seed},
         {"trials", report.scheme.total_trials()},
         {"allocation", std::string(name_of(report.scheme.allocation()))},
         {"rejections", report.rejections},
         {"inequalities", per}};
  return j.dump(2);
}

std::string covariance_json(const CovarianceMatrix& sigma) {
  json rows = json::array();
  for (int i = 0; i < kDim; ++i) {
    json row = json::array();
    for (int k = 0; k < kDim; ++k) row.push_back(sigma.matrix()(i, k));
    rows.push_back(row);
  }
  return json{{"sigma", rows}, {"labels", {"abxy-order"}}}.dump(2);
}

std::string canonical_json(std::string_view text) { return parse(text).dump(2); }

std::string_view name_of(Allocation a) { return a == Allocation::fixed_equal ? "fixed" : "random"; }

Allocation allocation_from_name(std::string_view name) {
  if (name == "fixed") return Allocation::fixed_equal;
  if (name == "random") return Allocation::uniform_random;
  throw std::invalid_argument("unknown allocation '" + std::string(name) + "' (expected fixed or random)");
}

}  // namespace bellopt
