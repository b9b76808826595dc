#pragma once

#include <stdexcept>
#include <string>

namespace lieseq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on inputs was violated (wrong ring, bad index, size cap).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A structural invariant failed: d∘d ≠ 0, Jacobi failure, weight mismatch.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Malformed external input (JSON, algebra names, ring strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lieseq
