#pragma once

#include <stdexcept>
#include <string>

namespace graspgen {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
public:
  using Error::Error;
};

/// Attempt to normalize a vector with norm below 1e-12.
class ZeroVectorError : public Error {
public:
  using Error::Error;
};

/// Malformed input file (PLY/OBJ/STL header or body).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Point cloud file without nx/ny/nz properties.
class MissingNormalsError : public ParseError {
public:
  using ParseError::ParseError;
};

/// A point cloud that must be non-empty is empty.
class EmptyCloudError : public Error {
public:
  using Error::Error;
};

/// An operation received an empty item list.
class EmptyInputError : public Error {
public:
  using Error::Error;
};

/// Mesh with zero total surface area (nothing to sample).
class DegenerateMeshError : public Error {
public:
  using Error::Error;
};

/// k-medoids called with k = 0.
class InvalidKError : public Error {
public:
  using Error::Error;
};

/// Integer arithmetic would exceed the representable range.
class OverflowError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// Error from a pipeline stage, prefixed with the stage name.
class PipelineError : public Error {
public:
  PipelineError(const std::string& stage, const std::string& message)
      : Error(stage + ": " + message), stage_(stage) {}

  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

}  // namespace graspgen
