#include "heunracah/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace heunracah {

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("expected a complex value [re, im], got " + j.dump());
}

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const char* where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) {
      throw ParseError(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

Complex required(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return complex_from_json(j.at(key));
}

std::optional<Complex> optional(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return complex_from_json(j.at(key));
}

}  // namespace

ParamsFile parse_params(const Json& j) {
  if (!j.is_object()) throw ParseError("parameter file must hold a JSON object");
  reject_unknown(j, {"N", "beta", "gamma", "delta", "rho", "s1", "s2", "bilinear"},
                 "parameter file");
  if (!j.contains("N") || !j.at("N").is_number_integer()) {
    throw ParseError("'N' must be an integer");
  }
  ParamsFile f;
  f.N = j.at("N").get<int>();
  f.beta = required(j, "beta");
  f.gamma = required(j, "gamma");
  f.delta = required(j, "delta");
  f.rho = optional(j, "rho");
  f.s1 = optional(j, "s1");
  f.s2 = optional(j, "s2");
  if (j.contains("bilinear")) {
    const auto& b = j.at("bilinear");
    if (!b.is_object()) throw ParseError("'bilinear' must be an object");
    reject_unknown(b, {"r0", "r1", "r2", "r3", "r4"}, "bilinear");
    f.bilinear = BilinearParams{required(b, "r0"), required(b, "r1"), required(b, "r2"),
                                required(b, "r3"), required(b, "r4")};
  }
  return f;
}

ParamsFile load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_params(j);
}

Problem build_problem(const ParamsFile& f) {
  Problem p;
  p.racah = build_params(f.N, f.beta, f.gamma, f.delta);
  if (f.bilinear) {
    p.canonical = canonicalize(*f.bilinear, p.racah);
    p.heun = p.canonical->heun;
  } else if (f.rho && f.s1 && f.s2) {
    p.heun = make_heun_params(*f.rho, *f.s1, *f.s2, p.racah);
  }
  const std::optional<Complex> rho = p.heun ? std::optional(p.heun->rho) : f.rho;
  if (rho) p.ctx.emplace(build_representation(p.racah), *rho);
  return p;
}

Json to_json(const VerificationReport& r) {
  Json tuple = Json::object();
  if (r.worst_tuple.u) tuple["u"] = complex_json(*r.worst_tuple.u);
  if (r.worst_tuple.v) tuple["v"] = complex_json(*r.worst_tuple.v);
  if (r.worst_tuple.m) tuple["m"] = complex_json(*r.worst_tuple.m);
  if (!r.worst_tuple.roots.empty()) {
    Json roots = Json::array();
    for (Complex x : r.worst_tuple.roots) roots.push_back(complex_json(x));
    tuple["roots"] = roots;
  }
  Json j;
  j["relation"] = std::string(to_string(r.relation));
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["max_residual"] = r.max_residual;
  j["worst_tuple"] = tuple;
  j["tol"] = r.tol;
  j["passed"] = r.passed();
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Json to_json(const BetheState& s) {
  Json roots = Json::array();
  for (Complex x : s.roots) roots.push_back(complex_json(x));
  Json residuals = Json::array();
  for (Complex c : s.bethe_residuals) residuals.push_back(complex_json(c));
  Json j;
  j["mode"] = std::string(to_string(s.mode));
  j["roots"] = roots;
  j["u_aux"] = complex_json(s.u_aux);
  j["eigenvalue"] = complex_json(s.eigenvalue);
  j["bethe_residuals"] = residuals;
  j["eigen_residual"] = s.eigen_residual;
  return j;
}

Json to_json(const SolveReport& r) {
  Json states = Json::array();
  for (const auto& s : r.states) states.push_back(to_json(s));
  Json coverage = Json::array();
  for (const auto& c : r.spectrum_coverage) {
    coverage.push_back({{"eigenvalue", complex_json(c.eigenvalue)}, {"matched", c.matched}});
  }
  Json j;
  j["mode"] = std::string(to_string(r.mode));
  j["particle_numbers"] = r.particle_numbers;
  j["states"] = states;
  j["attempts"] = r.attempts;
  j["converged"] = r.converged;
  j["distinct"] = r.distinct;
  j["spectrum_coverage"] = coverage;
  j["coverage_fraction"] = r.coverage_fraction();
  j["ambiguous_match"] = r.ambiguous_match;
  return j;
}

Json spectrum_json(const std::vector<Complex>& eigenvalues) {
  Json values = Json::array();
  Complex trace = 0.0;
  for (Complex c : eigenvalues) {
    values.push_back(complex_json(c));
    trace += c;
  }
  return {{"eigenvalues", values}, {"sum", complex_json(trace)}};
}

}  // namespace heunracah
