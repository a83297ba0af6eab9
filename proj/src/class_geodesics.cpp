#include "qcf/class_geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "qcf/arith.hpp"
#include "qcf/errors.hpp"
#include "qcf/quad_orders.hpp"

namespace qcf {

namespace {

using i128 = __int128;

int64_t isqrt64(const int64_t n) { return to_i64(isqrt(from_i64(n))); }

int64_t abs64(const int64_t v) { return (v < 0) ? -v : v; }

int64_t pos_mod(const int64_t a, const int64_t m)
{
	const int64_t r = a % m;
	return (r < 0) ? r + m : r;
}

std::vector<int64_t> divisors(const uint64_t n)
{
	std::vector<int64_t> d{ 1 };
	for (const auto & [p, e] : factorize_u64(n))
	{
		const size_t base = d.size();
		int64_t pk = 1;
		for (unsigned k = 0; k < e; ++k)
		{
			pk *= int64_t(p);
			for (size_t i = 0; i < base; ++i) d.push_back(d[i] * pk);
		}
	}
	std::sort(d.begin(), d.end());
	return d;
}

// b' = -b mod 2|c| with b' <= s maximal, s = isqrt(disc)
int64_t successor_b(const int64_t b, const int64_t c, const int64_t s)
{
	const int64_t m = 2 * abs64(c);
	return s - pos_mod(s + b, m);
}

}

void check_discriminant(const int64_t disc)
{
	require(disc > 0, "discriminant must be positive");
	require(disc < (int64_t(1) << 62), "discriminant must be below 2^62");
	require(pos_mod(disc, 4) == 0 || pos_mod(disc, 4) == 1, "discriminant must be 0 or 1 mod 4");
	require(!is_square(from_i64(disc)), "discriminant is a perfect square");
}

bool is_reduced(const IndefForm & f)
{
	const i128 d = f.disc();
	if (d <= 0 || f.b <= 0) return false;
	if (i128(f.b) * f.b >= d) return false;	// b < sqrt(d)
	const i128 twice_a = 2 * i128(abs64(f.a));
	// 2|a| - b < sqrt(d) < 2|a| + b
	const i128 lo = twice_a - f.b, hi = twice_a + f.b;
	return (lo < 0 || lo * lo < d) && d < hi * hi;
}

std::vector<IndefForm> reduced_forms(const int64_t disc)
{
	check_discriminant(disc);
	const int64_t s = isqrt64(disc);
	std::vector<IndefForm> out;
	for (int64_t b = (disc % 2 == 0) ? 2 : 1; b <= s; b += 2)
	{
		// 4 a c = b^2 - disc < 0
		const int64_t ac = (b * b - disc) / 4;
		for (const int64_t d : divisors(uint64_t(-ac)))
		{
			for (const int64_t a : { d, -d })
			{
				const IndefForm f{ a, b, ac / a };
				if (!is_reduced(f)) continue;
				if (std::gcd(std::gcd(abs64(f.a), f.b), abs64(f.c)) != 1) continue;
				out.push_back(f);
			}
		}
	}
	std::sort(out.begin(), out.end());
	return out;
}

IndefForm reduction_step(const IndefForm & f)
{
	const int64_t disc = f.disc();
	ensure(f.c != 0, "reduction_step: c = 0");
	const int64_t s = isqrt64(disc);
	const int64_t ac = abs64(f.c);
	// reduced range below sqrt(disc) when |c| < sqrt(disc), otherwise the symmetric range (-|c|, |c|]
	const int64_t b2 = (ac <= s) ? successor_b(f.b, f.c, s) : ac - pos_mod(ac + f.b, 2 * ac);
	const i128 num = i128(b2) * b2 - disc;
	ensure(num % (4 * i128(f.c)) == 0, "reduction_step: non-integral coefficient");
	return { f.c, b2, int64_t(num / (4 * i128(f.c))) };
}

IndefForm rho(const IndefForm & f)
{
	require(is_reduced(f), "rho: form is not reduced");
	const IndefForm g = reduction_step(f);
	ensure(is_reduced(g), "rho: successor of a reduced form is not reduced");
	return g;
}

std::vector<std::vector<IndefForm>> form_cycles(const int64_t disc)
{
	const std::vector<IndefForm> forms = reduced_forms(disc);
	std::set<IndefForm> unseen(forms.begin(), forms.end());
	std::vector<std::vector<IndefForm>> cycles;
	for (const IndefForm & start : forms)
	{
		if (!unseen.contains(start)) continue;
		std::vector<IndefForm> cycle;
		IndefForm f = start;
		do
		{
			ensure(unseen.erase(f) == 1, "form_cycles: rho is not a permutation of the reduced forms");
			cycle.push_back(f);
			f = rho(f);
		} while (f != start);
		cycles.push_back(std::move(cycle));
	}
	return cycles;
}

uint64_t narrow_class_number(const int64_t disc) { return form_cycles(disc).size(); }

uint64_t class_number(const int64_t disc)
{
	const uint64_t narrow = narrow_class_number(disc);
	const DiscDecomposition dd = decompose(disc);
	const FieldData f = field_data(from_i64(dd.fundamental));
	// the order's unit is eps^k; with norm -1 a form and its negative share a cycle
	const uint64_t k = unit_index(f, uint64_t(dd.conductor));
	const bool minus = f.unit_norm == -1 && k % 2 == 1;
	if (minus) return narrow;
	ensure(narrow % 2 == 0, "class_number: odd number of cycles with a unit of norm +1");
	return narrow / 2;
}

DiscDecomposition decompose(const int64_t disc)
{
	check_discriminant(disc);
	const int64_t m = to_i64(squarefree_part(from_i64(disc)));
	const int64_t d0 = (pos_mod(m, 4) == 1) ? m : 4 * m;
	ensure(disc % d0 == 0, "decompose: discriminant is not a square multiple of its field discriminant");
	const int64_t f = isqrt64(disc / d0);
	ensure(f * f * d0 == disc, "decompose: cofactor is not a square");
	return { d0, f };
}

bool is_fundamental(const int64_t disc) { return decompose(disc).conductor == 1; }

TotalLength total_length(const int64_t disc)
{
	const DiscDecomposition dd = decompose(disc);
	TotalLength t;
	t.h = class_number(disc);
	t.reg = regulator_of_order(OrderSpec{ field_data(from_i64(dd.fundamental)), from_i64(dd.conductor) });
	t.total = double(t.h) * t.reg;
	t.exponent = std::log(t.total) / std::log(std::sqrt(double(disc)));
	return t;
}

}
