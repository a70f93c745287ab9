#pragma once

#include <stdexcept>
#include <string>

namespace taxicab {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact-mode count no longer fits the cell type. Never raised in
/// saturating mode.
class ArithmeticOverflowError : public Error {
public:
    using Error::Error;
};

/// A table or search would exceed the configured memory budget.
class ResourceBudgetError : public Error {
public:
    using Error::Error;
};

/// An enumeration exceeded its step budget (the caller should switch to
/// the table-based path).
class StepBudgetError : public Error {
public:
    using Error::Error;
};

/// Invalid arguments, violated operation hypotheses, or a saturating cap
/// too small for the requested comparison.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An internal consistency re-check failed while producing a certified
/// constant. Indicates an implementation bug, not bad input.
class CertificationError : public Error {
public:
    using Error::Error;
};

/// A table file was rejected on load (bad magic, truncated payload,
/// checksum or identity mismatch).
class TableFileError : public Error {
public:
    using Error::Error;
};

} // namespace taxicab
