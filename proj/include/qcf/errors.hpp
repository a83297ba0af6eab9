#pragma once

#include <stdexcept>
#include <string>

namespace qcf {

// Input rejected by a precondition. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument
{
public:
	explicit InvalidArgument(const std::string & what) : std::invalid_argument(what) {}
};

// An internal consistency check failed. The CLI maps this to exit code 3.
class InvariantViolation : public std::logic_error
{
public:
	explicit InvariantViolation(const std::string & what) : std::logic_error(what) {}
};

inline void require(const bool cond, const char * const what)
{
	if (!cond) throw InvalidArgument(what);
}

inline void ensure(const bool cond, const char * const what)
{
	if (!cond) throw InvariantViolation(what);
}

}
