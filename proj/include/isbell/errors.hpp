#pragma once

#include <stdexcept>
#include <string>

namespace isbell {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input (bad labels, side mismatch, parse failure).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// An Isbell transform produced a potential with no finite value.
class NondegeneracyError : public Error {
public:
    explicit NondegeneracyError(const std::string& what) : Error(what) {}
};

/// Operation requires finite entries or finite-valued potentials.
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(what) {}
};

/// Enumeration would exceed the configured size cap.
class CapExceededError : public Error {
public:
    explicit CapExceededError(const std::string& what) : Error(what) {}
};

/// A theorem-backed internal consistency check failed; indicates a bug.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace isbell
