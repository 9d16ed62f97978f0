#pragma once

#include <stdexcept>

namespace semalloc {

/// An argument lies outside the domain an operation accepts.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Loaded data (scenario, similarity surface, CQI table) violates its schema
/// or invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semalloc
