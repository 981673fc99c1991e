#pragma once

#include <stdexcept>
#include <string>

namespace scalecascade {

/// Raised when an operation is asked to leave its mathematical domain
/// (zero denominators, reciprocal of a series with vanishing constant term,
/// parameters outside their admissible range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a request would exceed a configured size limit, e.g. a full
/// polynomial expansion past the degree cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scalecascade
