#pragma once
#include <stdexcept>
#include <string>

namespace rwg {

// Base class for all toolkit errors. Subclasses map onto CLI exit codes:
// ConfigError/ParseError -> 2, GenerationError -> 3, NumericalError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad parameters, unknown ids, schema mismatches, invalid specs.
struct ConfigError : Error {
  using Error::Error;
};

// Tensor/feature dimension mismatches.
struct ShapeError : ConfigError {
  using ConfigError::ConfigError;
};

// Malformed input files (dataset records, config documents, graph files).
struct ParseError : Error {
  using Error::Error;
};

// Constraints unsatisfiable during sample generation.
struct GenerationError : Error {
  using Error::Error;
};

// Non-finite values or numeric-domain failures inside the engine.
struct NumericalError : Error {
  using Error::Error;
};

}  // namespace rwg
