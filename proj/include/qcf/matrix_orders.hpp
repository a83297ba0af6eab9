#pragma once

#include <cstdint>
#include <vector>

#include "quad_orders.hpp"

namespace qcf {

// 2x2 matrix over Z/n, n < 2^63.
struct ModMat2
{
	uint64_t m00, m01, m10, m11;
	uint64_t n;

	static ModMat2 reduce(const Mat2 & m, uint64_t n);
	static ModMat2 identity(uint64_t n) { return { 1 % n, 0, 0, 1 % n, n }; }

	ModMat2 operator*(const ModMat2 & o) const;
	ModMat2 pow(uint64_t e) const;
	bool is_identity() const { return *this == identity(n); }
	bool is_minus_identity() const { return m01 == 0 && m10 == 0 && m00 == (n - 1) % n && m11 == m00; }
	bool is_scalar() const { return m01 == 0 && m10 == 0 && m00 == m11; }
	uint64_t det() const;
	bool operator==(const ModMat2 &) const = default;
};

// Order of M in GL_2(Z/N), N >= 2: lcm over prime powers, each lifted from the order mod p.
// Throws InvalidArgument when det(M) is not invertible mod N.
uint64_t mat_order_mod(const Mat2 & M, uint64_t N);

// Order of alpha in (O_D / N O_D)^x by direct powering of coordinates.
uint64_t ring_order_mod(const FieldData & f, const AlgInt & alpha, uint64_t N);

// Largest order the image of eps can have mod an odd unramified prime p.
uint64_t max_element_order(const FieldData & f, uint64_t p);

enum class SplitType { Split, Inert, Ramified, Composite };
const char * split_name(SplitType t);
SplitType split_type(const FieldData & f, uint64_t N);

struct OrderRecord
{
	uint64_t N;
	uint64_t ord;
	double exponent;	// ln ord / ln N
	SplitType split;
	bool is_max;		// primes only; false for p = 2 and ramified p
};

enum class SequenceKind { Integers, Primes };

// One record per N (or prime p) in [2, bound], ascending. Output does not depend on workers.
std::vector<OrderRecord> scan_orders(const FieldData & f, uint64_t bound, SequenceKind kind, unsigned workers = 1);

}
