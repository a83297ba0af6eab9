#include "qcf/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qcf/errors.hpp"

namespace qcf {

namespace {

constexpr uint64_t trial_bound = 10000;

uint64_t brent_rho(const uint64_t n, const uint64_t c)
{
	// f(y) = y^2 + c mod n, batched gcd every m steps
	constexpr uint64_t m = 128;
	uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
	uint64_t r = 1;
	const auto f = [n, c](const uint64_t v) { const uint64_t s = mulmod(v, v, n); return (s + c) % n; };
	while (g == 1)
	{
		x = y;
		for (uint64_t i = 0; i < r; ++i) y = f(y);
		uint64_t k = 0;
		while (k < r && g == 1)
		{
			ys = y;
			const uint64_t lim = std::min(m, r - k);
			for (uint64_t i = 0; i < lim; ++i)
			{
				y = f(y);
				q = mulmod(q, (x > y) ? x - y : y - x, n);
			}
			g = gcd_u64(q, n);
			k += m;
		}
		r *= 2;
	}
	if (g == n)
	{
		do
		{
			ys = f(ys);
			g = gcd_u64((x > ys) ? x - ys : ys - x, n);
		} while (g == 1);
	}
	return g;
}

void split_u64(const uint64_t n, std::map<uint64_t, unsigned> & out)
{
	if (n == 1) return;
	if (is_prime_u64(n)) { ++out[n]; return; }
	for (uint64_t c = 1;; ++c)
	{
		const uint64_t d = brent_rho(n, c);
		if (d != n && d != 1)
		{
			split_u64(d, out);
			split_u64(n / d, out);
			return;
		}
	}
}

BigInt brent_rho_big(const BigInt & n, const unsigned long c)
{
	BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, t;
	unsigned long r = 1;
	constexpr unsigned long m = 64;
	const auto f = [&n, c](BigInt & v) { v = v * v + c; v %= n; };
	while (g == 1)
	{
		x = y;
		for (unsigned long i = 0; i < r; ++i) f(y);
		unsigned long k = 0;
		while (k < r && g == 1)
		{
			ys = y;
			for (unsigned long i = 0; i < std::min(m, r - k); ++i)
			{
				f(y);
				t = abs(x - y);
				q = (q * t) % n;
			}
			mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
			k += m;
		}
		r *= 2;
	}
	if (g == n)
	{
		do
		{
			f(ys);
			t = abs(x - ys);
			mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
		} while (g == 1);
	}
	return g;
}

void split_big(const BigInt & n, std::map<BigInt, unsigned> & out)
{
	if (n == 1) return;
	if (fits_u64(n))
	{
		std::map<uint64_t, unsigned> small;
		split_u64(to_u64(n), small);
		for (const auto & [p, e] : small) out[from_u64(p)] += e;
		return;
	}
	if (is_prime(n)) { ++out[n]; return; }
	for (unsigned long c = 1;; ++c)
	{
		const BigInt d = brent_rho_big(n, c);
		if (d != n && d != 1)
		{
			split_big(d, out);
			split_big(n / d, out);
			return;
		}
	}
}

}

BigInt Factorization::product() const
{
	BigInt r = 1, t;
	for (const auto & f : factors)
	{
		mpz_pow_ui(t.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
		r *= t;
	}
	return r;
}

BigInt isqrt(const BigInt & n)
{
	require(sgn(n) >= 0, "isqrt: negative argument");
	BigInt r;
	mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
	return r;
}

bool is_square(const BigInt & n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

uint64_t mulmod(const uint64_t a, const uint64_t b, const uint64_t m)
{
	return uint64_t((unsigned __int128)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, const uint64_t m)
{
	uint64_t r = 1 % m;
	a %= m;
	while (e != 0)
	{
		if (e & 1) r = mulmod(r, a, m);
		a = mulmod(a, a, m);
		e >>= 1;
	}
	return r;
}

bool is_prime_u64(const uint64_t n)
{
	if (n < 2) return false;
	static constexpr uint64_t small[] = { 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37 };
	for (const uint64_t p : small)
	{
		if (n % p == 0) return n == p;
	}
	uint64_t d = n - 1;
	int s = 0;
	while ((d & 1) == 0) { d >>= 1; ++s; }
	// this witness set is exact for n < 3.3 * 10^24
	for (const uint64_t a : small)
	{
		uint64_t x = powmod(a, d, n);
		if (x == 1 || x == n - 1) continue;
		bool composite = true;
		for (int i = 1; i < s; ++i)
		{
			x = mulmod(x, x, n);
			if (x == n - 1) { composite = false; break; }
		}
		if (composite) return false;
	}
	return true;
}

bool is_prime(const BigInt & n)
{
	if (sgn(n) <= 0) return false;
	if (fits_u64(n)) return is_prime_u64(to_u64(n));
	return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

std::vector<std::pair<uint64_t, unsigned>> factorize_u64(uint64_t n)
{
	require(n >= 1, "factorize: n must be positive");
	std::map<uint64_t, unsigned> found;
	for (uint64_t p = 2; p < trial_bound && p * p <= n; p += (p == 2) ? 1 : 2)
	{
		while (n % p == 0) { ++found[p]; n /= p; }
	}
	if (n > 1)
	{
		if (n < trial_bound * trial_bound) ++found[n];
		else split_u64(n, found);
	}
	return { found.begin(), found.end() };
}

std::vector<uint64_t> prime_divisors_u64(const uint64_t n)
{
	std::vector<uint64_t> r;
	for (const auto & pe : factorize_u64(n)) r.push_back(pe.first);
	return r;
}

Factorization factorize(const BigInt & n)
{
	require(sgn(n) > 0, "factorize: n must be positive");
	Factorization f{ n, {} };
	if (fits_u64(n))
	{
		for (const auto & [p, e] : factorize_u64(to_u64(n))) f.factors.push_back({ from_u64(p), e });
		return f;
	}
	BigInt m = n;
	std::map<BigInt, unsigned> found;
	for (unsigned long p = 2; p < trial_bound; p += (p == 2) ? 1 : 2)
	{
		while (mpz_divisible_ui_p(m.get_mpz_t(), p)) { ++found[BigInt(p)]; m /= p; }
	}
	split_big(m, found);
	for (const auto & [p, e] : found) f.factors.push_back({ p, e });
	return f;
}

int kronecker(const BigInt & D, const BigInt & n)
{
	return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

uint64_t gcd_u64(const uint64_t a, const uint64_t b) { return std::gcd(a, b); }

uint64_t lcm_u64(const uint64_t a, const uint64_t b) { return (a / std::gcd(a, b)) * b; }

BigInt squarefree_part(const BigInt & n)
{
	require(sgn(n) != 0, "squarefree_part: zero");
	BigInt m = (sgn(n) < 0) ? BigInt(-1) : BigInt(1);
	for (const auto & f : factorize(abs(n)).factors)
	{
		if (f.exponent % 2 == 1) m *= f.prime;
	}
	return m;
}

std::vector<uint64_t> primes_up_to(const uint64_t bound)
{
	std::vector<uint64_t> primes;
	if (bound < 2) return primes;
	std::vector<bool> composite(bound + 1, false);
	for (uint64_t i = 2; i <= bound; ++i)
	{
		if (composite[i]) continue;
		primes.push_back(i);
		for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
	}
	return primes;
}

}
