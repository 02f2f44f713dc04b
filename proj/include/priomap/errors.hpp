#pragma once

#include <stdexcept>
#include <string>

namespace priomap {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A comparison row names the same item as winner and loser.
class DuplicateSelfComparison : public Error {
 public:
  using Error::Error;
};

/// An id in the input does not resolve against the known roster.
class UnknownId : public Error {
 public:
  using Error::Error;
};

/// The input contains no comparison rows.
class EmptyDataset : public Error {
 public:
  using Error::Error;
};

/// An operation received input on which it is mathematically undefined
/// (for example a pairwise loss over fewer than two items).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A fit diverged: the objective became NaN or infinite.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// The linear-programming routine broke down numerically.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// The requested embedding dimension is not supported by this operation.
class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// A subsample request exceeds the available population.
class SampleTooLarge : public Error {
 public:
  using Error::Error;
};

/// A serialized document violates its schema; the message carries the
/// offending field path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Matrix or vector shapes passed to an operation do not agree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A configuration struct violates its own invariants.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace priomap
