#include "qcf/matrix_orders.hpp"

#include <cmath>
#include <map>

#include "qcf/arith.hpp"
#include "qcf/errors.hpp"
#include "qcf/parallel.hpp"

namespace qcf {

namespace {

uint64_t reduce_big(const BigInt & v, const uint64_t n) { return to_u64(mod_nonneg(v, from_u64(n))); }

using FactorMap = std::map<uint64_t, unsigned>;

void merge(FactorMap & into, const uint64_t n)
{
	for (const auto & [p, e] : factorize_u64(n)) into[p] += e;
}

// Smallest divisor d of the group exponent E = prod q^e with M^d = I.
uint64_t order_from_exponent(const ModMat2 & M, const FactorMap & E)
{
	uint64_t ord = 1;
	for (const auto & [q, e] : E)
	{
		for (unsigned i = 0; i < e; ++i) ord *= q;
	}
	ensure(M.pow(ord).is_identity(), "mat_order_mod: group exponent does not annihilate the matrix");
	for (const auto & [q, e] : E)
	{
		for (unsigned i = 0; i < e && ord % q == 0 && M.pow(ord / q).is_identity(); ++i) ord /= q;
	}
	return ord;
}

uint64_t order_mod_prime(const ModMat2 & M, const uint64_t p)
{
	if (p == 2)
	{
		// GL_2(F_2) is S_3
		ModMat2 X = M;
		for (uint64_t k = 1; k <= 6; ++k, X = X * M)
		{
			if (X.is_identity()) return k;
		}
		throw InvariantViolation("mat_order_mod: no order found mod 2");
	}

	const uint64_t tr = (M.m00 + M.m11) % p, det = M.det();
	const uint64_t disc = (mulmod(tr, tr, p) + p - mulmod(4 % p, det, p)) % p;
	FactorMap E;
	if (disc == 0)
	{
		// repeated eigenvalue: M = lambda I + nilpotent
		merge(E, p - 1);
		if (!M.is_scalar()) merge(E, p);
	}
	else if (powmod(disc, (p - 1) / 2, p) == 1)
	{
		merge(E, p - 1);
	}
	else
	{
		// eigenvalues in F_{p^2} \ F_p conjugate under Frobenius, lambda^{p+1} = det
		merge(E, p + 1);
		if (det == p - 1) merge(E, 2);
		else if (det != 1) merge(E, p - 1);
	}
	return order_from_exponent(M, E);
}

uint64_t order_mod_prime_power(const Mat2 & M, const uint64_t p, const unsigned k)
{
	uint64_t pk = 1;
	for (unsigned i = 0; i < k; ++i) pk *= p;
	uint64_t ord = order_mod_prime(ModMat2::reduce(M, p), p);
	if (k == 1) return ord;
	// the kernel of reduction mod p has exponent p^(k-1) in GL_2(Z/p^k)
	ModMat2 Y = ModMat2::reduce(M, pk).pow(ord);
	for (unsigned j = 0; !Y.is_identity(); ++j)
	{
		ensure(j + 1 < k, "mat_order_mod: prime-power lifting exceeded p^(k-1)");
		Y = Y.pow(p);
		ord *= p;
	}
	return ord;
}

}

ModMat2 ModMat2::reduce(const Mat2 & m, const uint64_t n)
{
	return { reduce_big(m.m00, n), reduce_big(m.m01, n), reduce_big(m.m10, n), reduce_big(m.m11, n), n };
}

ModMat2 ModMat2::operator*(const ModMat2 & o) const
{
	const auto mm = [this](const uint64_t a, const uint64_t b, const uint64_t c, const uint64_t d) {
		return uint64_t(((unsigned __int128)a * b + (unsigned __int128)c * d) % n);
	};
	return { mm(m00, o.m00, m01, o.m10), mm(m00, o.m01, m01, o.m11), mm(m10, o.m00, m11, o.m10), mm(m10, o.m01, m11, o.m11), n };
}

ModMat2 ModMat2::pow(uint64_t e) const
{
	ModMat2 r = identity(n), b = *this;
	while (e != 0)
	{
		if (e & 1) r = r * b;
		b = b * b;
		e >>= 1;
	}
	return r;
}

uint64_t ModMat2::det() const
{
	return (mulmod(m00, m11, n) + n - mulmod(m01, m10, n)) % n;
}

uint64_t mat_order_mod(const Mat2 & M, const uint64_t N)
{
	require(N >= 2, "mat_order_mod: N must be at least 2");
	require(N < (uint64_t(1) << 32), "mat_order_mod: N must be below 2^32");
	const ModMat2 Mn = ModMat2::reduce(M, N);
	require(gcd_u64(Mn.det(), N) == 1, "mat_order_mod: matrix not invertible mod N");

	uint64_t ord = 1;
	for (const auto & [p, k] : factorize_u64(N)) ord = lcm_u64(ord, order_mod_prime_power(M, p, k));

	ensure(Mn.pow(ord).is_identity(), "mat_order_mod: M^ord != I");
	for (const uint64_t q : prime_divisors_u64(ord))
	{
		ensure(!Mn.pow(ord / q).is_identity(), "mat_order_mod: order is not minimal");
	}
	return ord;
}

uint64_t ring_order_mod(const FieldData & f, const AlgInt & alpha, const uint64_t N)
{
	require(N >= 2, "ring_order_mod: N must be at least 2");
	require(N < (uint64_t(1) << 32), "ring_order_mod: N must be below 2^32");
	const BigInt nb = from_u64(N);
	require(gcd_u64(reduce_big(norm(f, alpha), N), N) == 1, "ring_order_mod: element not invertible mod N");

	const uint64_t t = reduce_big(f.gen_trace, N), n = reduce_big(f.gen_norm, N);
	const uint64_t a0 = reduce_big(alpha.a, N), b0 = reduce_big(alpha.b, N);
	const uint64_t one = 1 % N;
	uint64_t a = a0, b = b0;
	// (O_D / N)^x has fewer than N^2 elements
	const uint64_t limit = N * N;
	for (uint64_t k = 1; k <= limit; ++k)
	{
		if (a == one && b == 0) return k;
		// (a + b x)(a0 + b0 x) with x^2 = t x - n
		const uint64_t bb = mulmod(b, b0, N);
		const uint64_t na = (mulmod(a, a0, N) + N - mulmod(n, bb, N)) % N;
		const uint64_t nb2 = (mulmod(a, b0, N) + mulmod(a0, b, N) + mulmod(t, bb, N)) % N;
		a = na; b = nb2;
	}
	throw InvariantViolation("ring_order_mod: no order found below N^2");
}

uint64_t max_element_order(const FieldData & f, const uint64_t p)
{
	require(p > 2 && is_prime_u64(p), "max_element_order: p must be an odd prime");
	const int k = kronecker(f.D, from_u64(p));
	require(k != 0, "max_element_order: p is ramified");
	if (k == 1) return p - 1;
	return (f.unit_norm == 1) ? p + 1 : 2 * (p + 1);
}

const char * split_name(const SplitType t)
{
	switch (t)
	{
		case SplitType::Split: return "split";
		case SplitType::Inert: return "inert";
		case SplitType::Ramified: return "ramified";
		case SplitType::Composite: return "composite";
	}
	return "?";
}

SplitType split_type(const FieldData & f, const uint64_t N)
{
	if (!is_prime_u64(N)) return SplitType::Composite;
	const int k = kronecker(f.D, from_u64(N));
	return (k == 0) ? SplitType::Ramified : (k == 1) ? SplitType::Split : SplitType::Inert;
}

std::vector<OrderRecord> scan_orders(const FieldData & f, const uint64_t bound, const SequenceKind kind, const unsigned workers)
{
	require(bound >= 2, "scan_orders: bound must be at least 2");
	std::vector<uint64_t> moduli;
	if (kind == SequenceKind::Primes) moduli = primes_up_to(bound);
	else for (uint64_t N = 2; N <= bound; ++N) moduli.push_back(N);

	const Mat2 M = phi(f, f.eps);
	std::vector<OrderRecord> out(moduli.size());
	parallel_for_index(moduli.size(), workers, [&](const size_t i) {
		const uint64_t N = moduli[i];
		OrderRecord r{ N, mat_order_mod(M, N), 0.0, split_type(f, N), false };
		r.exponent = std::log(double(r.ord)) / std::log(double(N));
		if (N > 2 && (r.split == SplitType::Split || r.split == SplitType::Inert)) r.is_max = (r.ord == max_element_order(f, N));
		out[i] = r;
	});
	return out;
}

}
