#pragma once

#include <optional>

#include "heunracah/bethe.hpp"
#include "heunracah/report.hpp"

namespace heunracah {

struct RelationSweep {
  int samples = 50;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  double pole_margin = kPoleMargin;
};

/// Draws `sweep.samples` admissible tuples for relation `id` and returns the worst
/// residual. Identities involving the Heun operator use `hp` when given, otherwise
/// (s1, s2) are drawn per sample. Throws RelationViolation if the worst residual
/// exceeds sweep.tol.
///
/// ABV_ACTION evaluates both swapped-slot conventions and adopts the one that holds;
/// the report notes carry both maxima.
VerificationReport verify_relation(RelationId id, const DynContext& ctx,
                                   const std::optional<HeunParams>& hp,
                                   const RelationSweep& sweep);

/// Same sweep without throwing; callers inspect report.passed().
VerificationReport measure_relation(RelationId id, const DynContext& ctx,
                                    const std::optional<HeunParams>& hp,
                                    const RelationSweep& sweep);

}  // namespace heunracah
