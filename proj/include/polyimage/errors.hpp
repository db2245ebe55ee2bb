#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyimage {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when a map is required to be onto its codomain but is not.
class NotSurjective : public Error {
 public:
  NotSurjective(std::size_t rank, std::size_t codomain_dim)
      : Error("NotSurjective: rank " + std::to_string(rank) +
              " < codomain dim " + std::to_string(codomain_dim)),
        rank_(rank),
        codomain_dim_(codomain_dim) {}

  std::size_t rank() const { return rank_; }
  std::size_t codomain_dim() const { return codomain_dim_; }

 private:
  std::size_t rank_;
  std::size_t codomain_dim_;
};

/// A functional does not vanish on the kernel of the map it should factor
/// through.
class KernelNotContained : public Error {
 public:
  using Error::Error;
};

class ZeroDirection : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `offset` is a byte offset into the parsed text
/// (0 when the text is a single token).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string token, std::size_t offset)
      : Error(what), token_(std::move(token)), offset_(offset) {}

  const std::string& token() const { return token_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string token_;
  std::size_t offset_;
};

}  // namespace polyimage
