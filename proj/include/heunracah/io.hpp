#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "heunracah/relations.hpp"
#include "heunracah/solver.hpp"

namespace heunracah {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating parameter input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Raw contents of a parameter file. Complex values are [re, im] pairs
/// (bare numbers are accepted as real).
struct ParamsFile {
  int N = 1;
  Complex beta, gamma, delta;
  std::optional<Complex> rho, s1, s2;
  std::optional<BilinearParams> bilinear;
};

ParamsFile parse_params(const Json& j);
/// Reads and parses a file; parse failures carry the byte location.
ParamsFile load_params(const std::string& path);

/// Fully built problem. `ctx` needs ρ; `heun` additionally needs (s1, s2) or a
/// bilinear block (which is canonicalized first and takes precedence).
struct Problem {
  RacahParams racah;
  std::optional<DynContext> ctx;
  std::optional<HeunParams> heun;
  std::optional<CanonicalForm> canonical;
};

Problem build_problem(const ParamsFile& f);

Json complex_json(Complex c);
Complex complex_from_json(const Json& j);

Json to_json(const VerificationReport& r);
Json to_json(const BetheState& s);
Json to_json(const SolveReport& r);
Json spectrum_json(const std::vector<Complex>& eigenvalues);

}  // namespace heunracah
