#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <gmpxx.h>

namespace qcf {

using BigInt = mpz_class;
using Rational = mpq_class;

inline bool fits_u64(const BigInt & n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }
inline bool fits_i64(const BigInt & n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 63; }

inline uint64_t to_u64(const BigInt & n)
{
	uint64_t r = 0;
	mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, n.get_mpz_t());
	return r;
}

inline int64_t to_i64(const BigInt & n)
{
	const int64_t m = int64_t(to_u64(abs(n)));
	return (sgn(n) < 0) ? -m : m;
}

inline BigInt from_u64(const uint64_t n)
{
	BigInt r;
	mpz_import(r.get_mpz_t(), 1, -1, sizeof(n), 0, 0, &n);
	return r;
}

inline BigInt from_i64(const int64_t n)
{
	BigInt r = from_u64((n < 0) ? uint64_t(0) - uint64_t(n) : uint64_t(n));
	if (n < 0) r = -r;
	return r;
}

inline BigInt from_i128(const __int128 n)
{
	const unsigned __int128 m = (n < 0) ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
	const uint64_t limbs[2] = { uint64_t(m), uint64_t(m >> 64) };
	BigInt r;
	mpz_import(r.get_mpz_t(), 2, -1, sizeof(uint64_t), 0, 0, limbs);
	if (n < 0) r = -r;
	return r;
}

// Floor division, rounding toward minus infinity.
inline BigInt floor_div(const BigInt & a, const BigInt & b)
{
	BigInt q;
	mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
	return q;
}

inline BigInt mod_nonneg(const BigInt & a, const BigInt & m)
{
	BigInt r;
	mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
	return r;
}

inline bool divides(const BigInt & d, const BigInt & n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

// n / d in canonical form; gmp arithmetic needs canonical operands.
inline Rational ratio(const BigInt & n, const BigInt & d)
{
	Rational r(n, d);
	r.canonicalize();
	return r;
}

inline std::string to_string(const BigInt & n) { return n.get_str(); }

}

template <>
struct std::hash<qcf::BigInt>
{
	size_t operator()(const qcf::BigInt & n) const noexcept
	{
		const mpz_srcptr z = n.get_mpz_t();
		const size_t lo = (z->_mp_size != 0) ? size_t(z->_mp_d[0]) : 0;
		return lo * 0x9e3779b97f4a7c15ull ^ size_t(z->_mp_size);
	}
};
