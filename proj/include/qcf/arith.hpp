#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bigint.hpp"

namespace qcf {

struct PrimePower
{
	BigInt prime;
	unsigned exponent;

	bool operator==(const PrimePower &) const = default;
};

// n = prod prime^exponent, primes strictly increasing.
struct Factorization
{
	BigInt n;
	std::vector<PrimePower> factors;

	BigInt product() const;
};

// r with r^2 <= n < (r+1)^2. Throws InvalidArgument for n < 0.
BigInt isqrt(const BigInt & n);
bool is_square(const BigInt & n);

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t m);

// Deterministic Miller-Rabin below 2^64; above that 64 random-base rounds (error < 2^-128).
bool is_prime_u64(uint64_t n);
bool is_prime(const BigInt & n);

// Trial division to 10^4, then Pollard rho with Brent cycle detection.
Factorization factorize(const BigInt & n);
std::vector<std::pair<uint64_t, unsigned>> factorize_u64(uint64_t n);
std::vector<uint64_t> prime_divisors_u64(uint64_t n);

// Kronecker symbol (D/n).
int kronecker(const BigInt & D, const BigInt & n);

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t lcm_u64(uint64_t a, uint64_t b);

// Squarefree kernel: the unique squarefree m with n = m * s^2.
BigInt squarefree_part(const BigInt & n);

std::vector<uint64_t> primes_up_to(uint64_t bound);

}
