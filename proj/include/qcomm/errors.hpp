#pragma once

#include <stdexcept>
#include <string>

namespace qcomm {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Matrix dimensions do not fit the operation.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// Input contains NaN or Inf entries.
class InputError : public Error {
  public:
    using Error::Error;
};

/// Matrix violates the operator class required by the operation
/// (e.g. non-Hermitian input to the Hermitian eigensolver).
class ClassViolationError : public Error {
  public:
    using Error::Error;
};

/// Eigenvector matrix is singular or ill-conditioned beyond the
/// diagonalizability threshold.
class NonDiagonalizableError : public Error {
  public:
    using Error::Error;
};

/// Coefficient matrix of a linear system is singular to working precision.
class SingularMatrixError : public Error {
  public:
    using Error::Error;
};

/// Scalar-function domain violation (e.g. sqrt of a negative eigenvalue).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Functional-calculus path prerequisite failure.
class PathError : public Error {
  public:
    using Error::Error;
};

/// Operation requires a polynomial-form function and got something else.
class UnsupportedFunctionError : public Error {
  public:
    using Error::Error;
};

/// Theorem hypothesis violated (non-commuting inputs, singular Q, radius
/// not covering the operator norm).
class HypothesisError : public Error {
  public:
    using Error::Error;
};

/// The shift epsilon is zero, so the 1/eps corner is undefined.
class DegenerateShiftError : public Error {
  public:
    using Error::Error;
};

/// Random ensemble resampling budget exhausted.
class GenerationError : public Error {
  public:
    using Error::Error;
};

/// Invalid trial configuration; surfaced before any trial runs.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Report file could not be written; partial output is removed.
class ReportIoError : public Error {
  public:
    using Error::Error;
};

} // namespace qcomm
