/// @file  errors.hpp
/// @brief Exception types shared by every labelbits module.

#pragma once

#include <stdexcept>
#include <string>

namespace labelbits {

/// A numeric parameter lies outside its admissible domain.
class ParameterError : public std::invalid_argument {
public:
	explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input is well-typed but degenerate (zero vectors, zero rank variance).
class DegenerateInputError : public std::runtime_error {
public:
	explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

/// Dimensions or index ranges do not agree.
class ShapeError : public std::invalid_argument {
public:
	explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Too few items or constraints to compute the requested quantity.
class InsufficientDataError : public std::runtime_error {
public:
	explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation received a label kind it does not accept.
class KindError : public std::invalid_argument {
public:
	explicit KindError(const std::string& what) : std::invalid_argument(what) {}
};

/// Non-finite values reached a numeric routine.
class NumericError : public std::runtime_error {
public:
	explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or configuration.
class FormatError : public std::runtime_error {
public:
	explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// A command or renderer was asked for something the data cannot provide.
class UsageError : public std::invalid_argument {
public:
	explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace labelbits
