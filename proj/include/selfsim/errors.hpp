#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

/// A brute-force routine was asked to work beyond its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed group spec, virtual endomorphism file or recursion text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked mathematical statement failed on a concrete case.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace selfsim
