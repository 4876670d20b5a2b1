#pragma once

#include <stdexcept>
#include <string>

namespace dcmtf {

// Base class for all library errors. Specific types exist so callers can
// distinguish config problems from numerical failures at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- graph / data model --------------------------------------------------
struct DimensionMismatch : Error { using Error::Error; };
struct DanglingEntity : Error { using Error::Error; };
struct BadBinary : Error { using Error::Error; };
struct NoSuchEdge : Error { using Error::Error; };

// -- linear algebra ------------------------------------------------------
struct ConvergenceFailure : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct DegenerateScale : Error { using Error::Error; };

// -- clustering ----------------------------------------------------------
struct EmptyInput : Error { using Error::Error; };
struct EmptyCluster : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct SingleCluster : Error { using Error::Error; };

// -- cfrm / chains -------------------------------------------------------
struct MissingIndicator : Error { using Error::Error; };
struct BadStart : Error { using Error::Error; };

// -- neural --------------------------------------------------------------
struct ShapeMismatch : Error { using Error::Error; };
struct StaleCache : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NumericalDivergence : Error { using Error::Error; };
struct AllTrialsDiverged : Error { using Error::Error; };

// -- synth ---------------------------------------------------------------
struct InfeasibleSpec : Error { using Error::Error; };
struct UnknownMatrix : Error { using Error::Error; };

// -- io ------------------------------------------------------------------
struct ParseError : Error { using Error::Error; };
struct IndexOutOfBounds : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace dcmtf
