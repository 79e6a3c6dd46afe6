#pragma once

#include <stdexcept>
#include <string>

namespace parasusy {

/// Raised when an operation would read amplitudes outside the trusted part
/// of the truncated boson ladder.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No Klein dressing in the search grid realizes the defining relations.
class ConventionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical classification failed (eigenvalue not near an integer, rank
/// decision inside the tolerance band, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parasusy
