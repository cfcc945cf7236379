#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heunracah/core.hpp"

namespace heunracah {

/// Every identity the library can check numerically.
enum class RelationId {
  R1,
  R2,
  R3,
  BB_EXCHANGE,
  AB_EXCHANGE,
  CA_EXCHANGE,
  WA_IDENTITY,
  VACUUM_ACTION,
  ABV_ACTION,
  COMBINATION_IDENTITY,
  PSI_FACTORED,
  MABA_REDUCTION,
};

inline constexpr RelationId kAllRelations[] = {
    RelationId::R1,          RelationId::R2,
    RelationId::R3,          RelationId::BB_EXCHANGE,
    RelationId::AB_EXCHANGE, RelationId::CA_EXCHANGE,
    RelationId::WA_IDENTITY, RelationId::VACUUM_ACTION,
    RelationId::ABV_ACTION,  RelationId::COMBINATION_IDENTITY,
    RelationId::PSI_FACTORED, RelationId::MABA_REDUCTION,
};

std::string_view to_string(RelationId id);
/// Throws std::invalid_argument for unknown names.
RelationId relation_from_string(std::string_view name);

/// One sampled point of a verification sweep. Unused slots stay empty.
struct SampleTuple {
  std::optional<Complex> u;
  std::optional<Complex> v;
  std::optional<Complex> m;
  std::vector<Complex> roots;
};

struct VerificationReport {
  RelationId relation = RelationId::R1;
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double max_residual = 0.0;
  SampleTuple worst_tuple;
  /// Auxiliary findings, e.g. residuals of alternative index conventions.
  std::map<std::string, double> notes;

  bool passed() const { return max_residual <= tol; }
};

class RelationViolation : public Error {
 public:
  explicit RelationViolation(VerificationReport report);
  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

}  // namespace heunracah
