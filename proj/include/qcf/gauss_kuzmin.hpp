#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "surd.hpp"

namespace qcf {

// A nonempty word of positive digits, each below kernels::big_digit.
class Pattern
{
public:
	explicit Pattern(std::vector<uint32_t> digits);

	// "1-1-4" style, as written in scan output.
	static Pattern parse(const std::string & text);
	std::string str() const;

	std::span<const uint32_t> digits() const { return digits_; }
	size_t size() const { return digits_.size(); }

	Pattern extended(uint32_t digit) const;

	bool operator==(const Pattern &) const = default;

private:
	std::vector<uint32_t> digits_;
};

// The interval of x in [0, 1] whose expansion begins with a given word.
struct Cylinder
{
	Rational low, high;
};

// log2(ratio), kept exact so identities between constants can be checked as rational identities.
struct LogRatio
{
	Rational ratio;
	double value() const;
};

Cylinder cylinder(const Pattern & w);

// Gauss measure of cylinder(w): log2((1 + high) / (1 + low)).
LogRatio c_w(const Pattern & w);

// The period of an expansion laid out for window counting. Digits >= 2^32 - 1 collapse to the
// sentinel kernels::big_digit, which no pattern contains.
class DigitStream
{
public:
	explicit DigitStream(const CFExpansion & e);

	size_t period_length() const { return length_; }
	// Cyclic occurrences of w among the period_length() starting positions.
	uint64_t occurrences(const Pattern & w) const;
	// Distinct digits occurring in the period (sentinel excluded), ascending.
	std::vector<uint32_t> distinct_digits() const;

private:
	void extend_to(size_t window) const;

	std::vector<uint32_t> period_;
	size_t length_;
	mutable std::vector<uint32_t> stream_;
};

Rational pattern_frequency(const CFExpansion & e, const Pattern & w);
Rational pattern_frequency(const DigitStream & s, const Pattern & w);

// |freq - c_w| in double precision.
double deviation(const Rational & freq, const LogRatio & cw);
double deviation(const Surd & x, const Pattern & w);

}
