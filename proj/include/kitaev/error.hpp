#pragma once

#include <stdexcept>
#include <string>

namespace kitaev {

/// Raised for malformed input: bad sizes, out-of-range indices, mismatched
/// registers.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested problem exceeds the configured dense-matrix limit.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// System size outside the supported N = 0 (mod 4) family.
class UnsupportedSize : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pseudo vector passes too close to the origin for the winding to exist.
class IllDefinedWinding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The accumulated angle is not close to an integer multiple of 2*pi.
class InconsistentWinding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ground state is degenerate within its parity block.
class DegenerateGroundState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kitaev
