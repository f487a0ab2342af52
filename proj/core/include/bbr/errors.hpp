#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace bbr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, invalid structure specs, size mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A brute-force or search cap was exceeded. The message names the cap.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Oracle answers contradict the class the caller promised
/// (e.g. a recovery routine for abelian groups fed a max-semigroup).
class NotInClassError : public Error {
 public:
  NotInClassError(const std::string& what, std::optional<std::size_t> query_index)
      : Error(what), query_index_(query_index) {}

  /// Zero-based position in the transcript of the first answer found
  /// contradictory, when one can be identified.
  std::optional<std::size_t> query_index() const noexcept { return query_index_; }

 private:
  std::optional<std::size_t> query_index_;
};

}  // namespace bbr
