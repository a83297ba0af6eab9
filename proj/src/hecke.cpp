#include "qcf/hecke.hpp"

#include "qcf/arith.hpp"
#include "qcf/errors.hpp"

namespace qcf {

namespace {

std::vector<BigInt> prime_list(const BigInt & n)
{
	std::vector<BigInt> out;
	for (const auto & pe : factorize(abs(n)).factors)
	{
		for (unsigned i = 0; i < pe.exponent; ++i) out.push_back(pe.prime);
	}
	return out;
}

bool integral(const Rational & r) { return r.get_den() == 1; }

}

Lattice Lattice::of(const FieldData & f, const Surd & x)
{
	const auto [u, v] = basis_coords(f, x);
	return { 1, 0, u, v };
}

Lattice Lattice::of(const Surd & x, const BigInt & reference_D)
{
	const BigInt prod = x.D() * reference_D;
	require(is_square(prod), "surds lie in different quadratic fields");
	// sqrt(D_x) = (r / D_ref) sqrt(D_ref), r = sqrt(D_x D_ref)
	Rational u = ratio(x.P(), x.Q()), v = ratio(isqrt(prod), x.Q() * reference_D);
	u.canonicalize();
	v.canonicalize();
	return { 1, 0, u, v };
}

std::optional<BigInt> sublattice_index(const Lattice & inner, const Lattice & outer)
{
	// T = B_inner B_outer^{-1} must be integral; the index is |det T|
	const Rational det_out = outer.e00 * outer.e11 - outer.e01 * outer.e10;
	ensure(sgn(det_out) != 0, "lattice: degenerate basis");
	const Rational i00 = outer.e11 / det_out, i01 = -outer.e01 / det_out;
	const Rational i10 = -outer.e10 / det_out, i11 = outer.e00 / det_out;
	const Rational t00 = inner.e00 * i00 + inner.e01 * i10, t01 = inner.e00 * i01 + inner.e01 * i11;
	const Rational t10 = inner.e10 * i00 + inner.e11 * i10, t11 = inner.e10 * i01 + inner.e11 * i11;
	if (!integral(t00) || !integral(t01) || !integral(t10) || !integral(t11)) return std::nullopt;
	const Rational det = t00 * t11 - t01 * t10;
	ensure(integral(det) && sgn(det) != 0, "lattice: non-integral index");
	return BigInt(abs(det.get_num()));
}

bool are_neighbors(const Surd & x, const Surd & y, const BigInt & p)
{
	const Lattice lx = Lattice::of(x, x.D()), ly = Lattice::of(y, x.D());
	if (const auto i = sublattice_index(ly, lx); i && *i == p) return true;
	if (const auto i = sublattice_index(lx, ly); i && *i == p) return true;
	return false;
}

std::vector<BigInt> HeckeChain::primes() const
{
	std::vector<BigInt> out;
	for (const HeckeStep & s : steps) out.push_back(s.prime);
	return out;
}

HeckeChain chain_between(const Surd & x, const Surd & y)
{
	const Lattice lx = Lattice::of(x, x.D()), ly = Lattice::of(y, x.D());
	// y = ratio x + shift
	Rational ratio = ly.e11 / lx.e11;
	ratio.canonicalize();
	Rational shift = ly.e10 - ratio * lx.e10;
	shift.canonicalize();
	BigInt C;
	mpz_lcm(C.get_mpz_t(), ratio.get_den().get_mpz_t(), shift.get_den().get_mpz_t());
	const Rational Ar = ratio * Rational(C), Br = shift * Rational(C);
	const BigInt A = Ar.get_num(), B = Br.get_num();

	HeckeChain chain;
	chain.nodes.push_back(x);
	Surd cur = x;
	for (const BigInt & q : prime_list(A))
	{
		cur = scale(cur, q, 1);
		chain.nodes.push_back(cur);
		chain.steps.push_back({ q, HeckeDirection::Down });
	}
	BigInt den = 1;
	for (const BigInt & q : prime_list(C))
	{
		den *= q;
		chain.nodes.push_back(mobius(x, A, B, den));
		chain.steps.push_back({ q, HeckeDirection::Up });
	}
	if (!chain.steps.empty()) chain.nodes.back() = mobius(x, A, B, C);
	return chain;
}

HeckeChain chain_to_generator(const FieldData & f, const Surd & x)
{
	basis_coords(f, x);
	return chain_between(x, f.xD);
}

HeckeChain scale_chain(const HeckeChain & chain, const BigInt & N)
{
	require(sgn(N) > 0, "scale_chain: N must be positive");
	HeckeChain out;
	for (const Surd & s : chain.nodes) out.nodes.push_back(scale(s, N, 1));
	out.steps = chain.steps;
	return out;
}

bool verify_chain(const HeckeChain & chain)
{
	if (chain.nodes.size() != chain.steps.size() + 1) return false;
	for (size_t i = 0; i < chain.steps.size(); ++i)
	{
		const Surd & a = chain.nodes[i], & b = chain.nodes[i + 1];
		const Lattice la = Lattice::of(a, a.D()), lb = Lattice::of(b, a.D());
		const HeckeStep & s = chain.steps[i];
		const auto idx = (s.direction == HeckeDirection::Down) ? sublattice_index(lb, la) : sublattice_index(la, lb);
		if (!idx || *idx != s.prime) return false;
	}
	return true;
}

ConductorBounds conductor_bounds_check(const FieldData & f, const Surd & x, const Surd & y, const BigInt & p)
{
	require(are_neighbors(x, y, p), "conductor_bounds_check: not p-Hecke neighbors");
	ConductorBounds b{ conductor_of_surd(f, x), conductor_of_surd(f, y), false };
	b.ok = divides(b.l_y, p * b.l_x) && divides(b.l_x, p * b.l_y);
	return b;
}

uint64_t unit_exponent(const FieldData & f, const Surd & x)
{
	const BigInt l = conductor_of_surd(f, x);
	require(fits_u64(l), "unit_exponent: conductor too large");
	return unit_index(f, to_u64(l));
}

uint64_t unit_index_check(const FieldData & f, const Surd & x, const Surd & y, const BigInt & p)
{
	require(fits_u64(p), "unit_index_check: p too large");
	// equal lattices are the degenerate case with l = 1
	const Lattice lx = Lattice::of(x, x.D()), ly_lat = Lattice::of(y, x.D());
	const auto same = sublattice_index(lx, ly_lat);
	if (same && *same == 1) return 1;
	require(are_neighbors(x, y, p), "unit_index_check: not p-Hecke neighbors");
	const uint64_t kx = unit_exponent(f, x);
	const BigInt ly = conductor_of_surd(f, y);
	const AlgInt g = pow(f, f.eps, kx);
	const uint64_t bound = to_u64(p) + 1;
	AlgInt cur = g;
	for (uint64_t l = 1; l <= bound; ++l)
	{
		if (divides(ly, cur.b)) return l;
		cur = mul(f, cur, g);
		cur.a = mod_nonneg(cur.a, ly);
		cur.b = mod_nonneg(cur.b, ly);
	}
	throw InvariantViolation("unit_index_check: no power up to p + 1 lies in O_y");
}

}
