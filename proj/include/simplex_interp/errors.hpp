#pragma once

#include <stdexcept>
#include <string>

namespace simplex_interp {

// Every library failure derives from Error; the CLI maps these to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SIMPLEX_INTERP_ERROR(Name)        \
  struct Name : Error {                   \
    using Error::Error;                   \
  }

SIMPLEX_INTERP_ERROR(DegenerateSimplex);
SIMPLEX_INTERP_ERROR(DimensionMismatch);
SIMPLEX_INTERP_ERROR(EnumerationTooLarge);
SIMPLEX_INTERP_ERROR(NoConvergence);
SIMPLEX_INTERP_ERROR(InternalInconsistency);
SIMPLEX_INTERP_ERROR(OrderTooLarge);
SIMPLEX_INTERP_ERROR(UnsupportedOrder);
SIMPLEX_INTERP_ERROR(NotNormalized);
SIMPLEX_INTERP_ERROR(ParseError);
SIMPLEX_INTERP_ERROR(NotHadamard);
SIMPLEX_INTERP_ERROR(BudgetExceeded);
SIMPLEX_INTERP_ERROR(UnknownName);
SIMPLEX_INTERP_ERROR(DegenerateNodes);
SIMPLEX_INTERP_ERROR(NoWitnessInBall);

#undef SIMPLEX_INTERP_ERROR

}  // namespace simplex_interp
