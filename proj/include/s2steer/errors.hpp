#pragma once

#include <stdexcept>
#include <string>

namespace s2steer {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix that was required to be skew-symmetric is not.
struct NotSkew : Error {
  NotSkew() : Error("matrix is not skew-symmetric within tolerance") {}
  using Error::Error;
};

/// A vector that was required to lie on the unit sphere does not.
struct NotUnit : Error {
  NotUnit() : Error("vector is not unit length within tolerance") {}
  using Error::Error;
};

/// The drift matrix is numerically zero; the reduction requires a > 0.
struct ZeroMatrix : Error {
  ZeroMatrix() : Error("drift matrix is numerically zero") {}
  using Error::Error;
};

/// [A,B] vanishes, so the constructions that need a nonzero bracket do not apply.
struct BracketVanishes : Error {
  BracketVanishes() : Error("matrix bracket [A,B] vanishes within tolerance") {}
  using Error::Error;
};

/// The reduced control matrix has b3 = 0; apply ensure_b3_nonzero first.
struct DegenerateB3 : Error {
  DegenerateB3() : Error("reduced control parameter b3 is zero; apply ensure_b3_nonzero") {}
  using Error::Error;
};

/// Constant-control flow has zero angular rate; no circle is traced.
struct DegenerateRotation : Error {
  DegenerateRotation() : Error("constant-control flow has zero angular rate") {}
  using Error::Error;
};

/// Requested latitude is not reachable on the given pole circle.
struct LatitudeOutOfRange : Error {
  LatitudeOutOfRange() : Error("latitude is outside the reachable range of the pole circle") {}
  using Error::Error;
};

/// Numerical integration produced a non-finite or wildly diverging state.
struct NonFiniteState : Error {
  NonFiniteState() : Error("integration state left the sanity ball or became non-finite") {}
  using Error::Error;
};

/// An internal self-check failed; indicates a bug, never expected in normal use.
struct InternalValidation : Error {
  using Error::Error;
};

}  // namespace s2steer
