#ifndef SWAPSCHED_ERRORS_HPP
#define SWAPSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace swapsched {

// Index (mission, slot, node) outside its valid range.
class RangeError : public std::out_of_range {
public:
	using std::out_of_range::out_of_range;
};

// Schedule or matrix dimensions do not match the instance.
class ShapeError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

// Instance too large for an exhaustive or exact method.
class ResourceLimitError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Malformed scenario text (not valid JSON, wrong value types).
class ParseError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

struct Diagnostic {
	enum class Severity { warning, error };

	Severity severity = Severity::error;
	std::string locator;   // e.g. "missions[2].fraction"
	std::string message;

	bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);

// One or more invariant violations, each with a path-like locator.
class ValidationError : public std::runtime_error {
public:
	explicit ValidationError(std::vector<Diagnostic> issues);

	const std::vector<Diagnostic>& issues() const noexcept { return issues_; }

private:
	std::vector<Diagnostic> issues_;
};

} // namespace swapsched

#endif
