#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bigint.hpp"

namespace qcf {

// The real number (P + sqrt(D)) / Q with D > 0 nonsquare, Q != 0 and Q | (D - P^2).
// That divisibility is what keeps the continued-fraction recursion integral.
class Surd
{
public:
	const BigInt & P() const { return P_; }
	const BigInt & Q() const { return Q_; }
	const BigInt & D() const { return D_; }

	// Structural equality on (P, Q, D); see same_value() for equality of the real numbers.
	bool operator==(const Surd &) const = default;

private:
	Surd(BigInt P, BigInt Q, BigInt D) : P_(std::move(P)), Q_(std::move(Q)), D_(std::move(D)) {}
	friend Surd make_surd(const BigInt & p, const BigInt & r, const BigInt & d, const BigInt & q);
	friend Surd surd_from_state(const BigInt & P, const BigInt & Q, const BigInt & D);

	BigInt P_, Q_, D_;
};

struct CFExpansion
{
	std::vector<BigInt> preperiod;
	std::vector<BigInt> period;
};

// A (P, Q) state of the expansion recursion, the complete quotient (P + sqrt(D)) / Q.
struct CFState
{
	BigInt P, Q;
};

// cf_expand() together with the complete quotient attached to every digit.
struct CFTrace
{
	CFExpansion expansion;
	std::vector<CFState> states;	// states[i] produced digit i of preperiod ++ period
};

// (p + r sqrt(d)) / q in canonical form. Rejects r = 0, square d, d <= 0 and q = 0.
Surd make_surd(const BigInt & p, const BigInt & r, const BigInt & d, const BigInt & q);

// Builds a surd from a state already satisfying the invariants (checked).
Surd surd_from_state(const BigInt & P, const BigInt & Q, const BigInt & D);

// (num / den) * x.
Surd scale(const Surd & x, const BigInt & num, const BigInt & den);
// (A x + B) / C.
Surd mobius(const Surd & x, const BigInt & A, const BigInt & B, const BigInt & C);

BigInt floor_of(const Surd & x);

// x > 1 and -1 < conjugate(x) < 0.
bool is_reduced(const Surd & x);

// Equality of the denoted real numbers.
bool same_value(const Surd & x, const Surd & y);

// Rational and irrational parts: x = u + v sqrt(D) with D the surd's radicand.
std::pair<Rational, Rational> rational_parts(const Surd & x);

CFExpansion cf_expand(const Surd & x);
CFTrace cf_trace(const Surd & x);

mpf_class eval_approx(const Surd & x, unsigned precision_bits);
double eval_double(const Surd & x);

// Sum of ln of the complete quotients over one period: the log of the unit of the
// multiplier ring of Z + Z x generated by the reduced cycle.
double cycle_log_unit(const Surd & x);

}
