#pragma once

#include <stdexcept>
#include <string>

namespace apnforge {

// Every failure raised by the library derives from Error so callers (the CLI in
// particular) can separate configuration mistakes from I/O trouble.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument does not hold (range, parity, coprimality...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotInvertible : public DomainError {
 public:
  using DomainError::DomainError;
};

// An exhaustive kernel was asked to run above its configured degree cap.
class ScanCapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

// A per-cell wall-clock budget ran out.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace apnforge
