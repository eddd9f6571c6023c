#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctfuse {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed input files or structurally inconsistent data.
  class FormatError : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"),
          _offset(offset) {}

    std::size_t offset() const noexcept {
      return _offset;
    }

   private:
    std::size_t _offset;
  };

  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // galois(a, k) with gcd(k, conductor) != 1.
  class InvalidAutomorphism : public Error {
   public:
    using Error::Error;
  };

  // A power map needed for a query is absent from the table.
  class DataIncompleteError : public Error {
   public:
    using Error::Error;
  };

  class NoFusionPossible : public Error {
   public:
    using Error::Error;
  };

  // A fact contradicts the ambient table, or facts contradict every map.
  class InconsistentFact : public Error {
   public:
    using Error::Error;
  };

  class ResourceError : public Error {
   public:
    using Error::Error;
  };

}  // namespace ctfuse
