#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modcurve {

/// Base class for every contract violation raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NonCoprimeModuli : public Error {
 public:
  using Error::Error;
};

/// Group materialization would exceed the configured element cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t cap, std::size_t partial)
      : Error("closure cap exceeded: cap " + std::to_string(cap) +
              " elements, reached " + std::to_string(partial)),
        cap_(cap),
        partial_(partial) {}

  std::size_t cap() const noexcept { return cap_; }
  std::size_t partial_count() const noexcept { return partial_; }

 private:
  std::size_t cap_;
  std::size_t partial_;
};

class StageTooLow : public Error {
 public:
  using Error::Error;
};

/// A per-prime hypothesis of level composition did not hold.
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(std::uint64_t prime, const std::string& what)
      : Error(what), prime_(prime) {}
  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class InconsistentProfile : public Error {
 public:
  using Error::Error;
};

}  // namespace modcurve
