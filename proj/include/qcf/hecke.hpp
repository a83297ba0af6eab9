#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bigint.hpp"
#include "quad_orders.hpp"
#include "surd.hpp"

namespace qcf {

// A rank-2 lattice in Q^2 given by two rational basis rows.
struct Lattice
{
	Rational e00, e01, e10, e11;

	// Z 1 + Z x in the coordinates {1, x_D} of the field.
	static Lattice of(const FieldData & f, const Surd & x);
	// Z 1 + Z x in the coordinates {1, sqrt(reference_D)}; x must share the field of reference_D.
	static Lattice of(const Surd & x, const BigInt & reference_D);
};

// [outer : inner] when inner is a sublattice of outer, otherwise nullopt.
std::optional<BigInt> sublattice_index(const Lattice & inner, const Lattice & outer);

// Lambda_x and Lambda_y nested with index exactly p. Throws if x and y lie in different fields.
bool are_neighbors(const Surd & x, const Surd & y, const BigInt & p);

enum class HeckeDirection { Down, Up };	// Down: next lattice has index p in this one

struct HeckeStep
{
	BigInt prime;
	HeckeDirection direction;
};

// nodes[0] = x; nodes[i] and nodes[i + 1] are steps[i].prime-neighbors. Translations by integers
// leave the lattice unchanged and are folded into the following node, so the last node equals the
// target whenever there is at least one step; with no steps Lambda_x already equals the target lattice.
struct HeckeChain
{
	std::vector<Surd> nodes;
	std::vector<HeckeStep> steps;

	std::vector<BigInt> primes() const;
};

// y = (A x + B) / C in lowest terms: multiply by the primes of |A|, translate by B, divide by the primes of C.
HeckeChain chain_between(const Surd & x, const Surd & y);
HeckeChain chain_to_generator(const FieldData & f, const Surd & x);

// The chain with every node multiplied by N; nodes N x_i stay neighbors through the same primes.
HeckeChain scale_chain(const HeckeChain & chain, const BigInt & N);

// Every step index-checked with are_neighbors.
bool verify_chain(const HeckeChain & chain);

struct ConductorBounds
{
	BigInt l_x, l_y;
	bool ok;	// l_y | p l_x and l_x | p l_y
};
ConductorBounds conductor_bounds_check(const FieldData & f, const Surd & x, const Surd & y, const BigInt & p);

// For p-neighbors x, y: the least l >= 1 with g^l in O_y, where g = eps^k(x) generates the positive
// units of O_x; 1 when the lattices coincide. Throws InvariantViolation if l > p + 1.
uint64_t unit_index_check(const FieldData & f, const Surd & x, const Surd & y, const BigInt & p);

// k(x): O_x^x = <-1, eps^k(x)>.
uint64_t unit_exponent(const FieldData & f, const Surd & x);

}
