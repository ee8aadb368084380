#pragma once

#include <stdexcept>
#include <string>

namespace geflab {

// A requested disc/circle leaves the certified region of a TruncatedGef.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncation degree below what a tail bound requires.
class DegreeTooSmallError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Structurally meaningless input (all-zero coefficients, zeta_0 = 0, ...).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quadrature grid point landed exactly on a zero of the function.
class SingularGridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sample handed to the omega-chain verifier violates the event constraints.
class NotInOmegaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace geflab
