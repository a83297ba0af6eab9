#pragma once

#include <cstdint>
#include <vector>

#include "bigint.hpp"

namespace qcf {

// a x^2 + b x y + c y^2 with discriminant b^2 - 4ac > 0 nonsquare.
struct IndefForm
{
	int64_t a, b, c;

	int64_t disc() const { return b * b - 4 * a * c; }
	auto operator<=>(const IndefForm &) const = default;
};

// |sqrt(disc) - 2|a|| < b < sqrt(disc), decided with integer arithmetic.
bool is_reduced(const IndefForm & f);

// Throws InvalidArgument unless disc > 0, disc = 0 or 1 mod 4, nonsquare and below 2^62.
void check_discriminant(int64_t disc);

// All primitive reduced forms of the discriminant, sorted.
std::vector<IndefForm> reduced_forms(int64_t disc);

// Reduction successor (a, b, c) -> (c, b', (b'^2 - disc) / 4c), b' = -b mod 2|c| as large as possible below sqrt(disc).
IndefForm rho(const IndefForm & f);

// One step of the same operator on an arbitrary form of the discriminant; iterating reaches a reduced form.
IndefForm reduction_step(const IndefForm & f);

// Cycles of rho over reduced_forms(disc), each starting at its least form, cycles sorted.
std::vector<std::vector<IndefForm>> form_cycles(int64_t disc);

// Number of rho-cycles: the narrow class number.
uint64_t narrow_class_number(int64_t disc);
// |Pic(O_disc)|: the cycle count, halved when the unit of the order has norm +1.
uint64_t class_number(int64_t disc);

struct DiscDecomposition
{
	int64_t fundamental;	// D0
	int64_t conductor;		// f, disc = f^2 D0
};
DiscDecomposition decompose(int64_t disc);

bool is_fundamental(int64_t disc);

struct TotalLength
{
	uint64_t h;
	double reg;
	double total;	// h reg
	double exponent;	// ln total / ln sqrt(disc)
};
TotalLength total_length(int64_t disc);

}
