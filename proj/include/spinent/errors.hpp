#pragma once

#include <stdexcept>
#include <string>

namespace spinent {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Raised when a computation cannot be carried out to the required accuracy.
/// The CLI maps these to exit code 2.
class NumericalError : public Error {
public:
	using Error::Error;
};

class NonFiniteValue : public NumericalError {
public:
	using NumericalError::NumericalError;
};

class NotHermitian : public NumericalError {
public:
	using NumericalError::NumericalError;
};

class NotPSD : public NumericalError {
public:
	using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
public:
	using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
public:
	using NumericalError::NumericalError;
};

class SiteOutOfRange : public Error {
public:
	using Error::Error;
};

class DuplicateSite : public Error {
public:
	using Error::Error;
};

class DimensionMismatch : public Error {
public:
	using Error::Error;
};

/// Invalid scenario configuration. `key()` names the offending field.
class ConfigError : public Error {
public:
	ConfigError(std::string key, const std::string& message)
	    : Error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

	const std::string& key() const noexcept { return key_; }

private:
	std::string key_;
};

class IoError : public Error {
public:
	using Error::Error;
};

} // namespace spinent
