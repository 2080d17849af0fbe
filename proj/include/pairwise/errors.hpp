#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pairwise {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Storage for a request could not be obtained.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// Requested lattice is too large to be addressed on this platform.
class SizingError : public ResourceError {
public:
  using ResourceError::ResourceError;
};

/// The allocator refused the lattice storage.
class AllocationError : public ResourceError {
public:
  using ResourceError::ResourceError;
};

/// A bead lies outside the lattice it is counted into.
class CoordinateRangeError : public Error {
public:
  CoordinateRangeError(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

/// A lattice cell would exceed the width of its occupancy counter.
class CounterOverflowError : public Error {
public:
  using Error::Error;
};

/// An operation was called on an object in the wrong state.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// An interaction function produced a value that cannot be accumulated.
class AccumulationError : public Error {
public:
  AccumulationError(std::size_t first, std::size_t second, const std::string& what)
      : Error(what), first_(first), second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

private:
  std::size_t first_;
  std::size_t second_;
};

/// A worker thread failed with something other than a library error.
class ExecutionError : public Error {
public:
  using Error::Error;
};

/// f(a, b) != f(b, a) was observed for an interaction function.
class SymmetryError : public Error {
public:
  using Error::Error;
};

}  // namespace pairwise
