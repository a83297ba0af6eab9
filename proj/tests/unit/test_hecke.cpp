#include "doctest.h"

#include "../support/oracles.hpp"
#include "qcf/arith.hpp"
#include "qcf/errors.hpp"
#include "qcf/hecke.hpp"

using namespace qcf;

namespace {

struct Pair
{
	Surd x, y;
	uint64_t p;
};

// x random in the field, y one of its index-p neighbors: p x below it or (x + j) / p above it.
Pair random_pair(std::mt19937_64 & g, const FieldData & f, const uint64_t p)
{
	const int64_t r = oracle::uniform(g, 1, 6), q = oracle::uniform(g, 1, 8);
	const Surd x = make_surd(oracle::uniform(g, -20, 20), r, f.m, q);
	const int64_t j = oracle::uniform(g, -1, int64_t(p));
	const Surd y = j < 0 ? scale(x, from_u64(p), 1) : mobius(x, 1, j, from_u64(p));
	if (g() % 2) return { y, x, p };
	return { x, y, p };
}

}

TEST_CASE("lattice index")
{
	const Surd r2 = make_surd(0, 1, 2, 1);
	const Lattice a = Lattice::of(r2, 8), b = Lattice::of(scale(r2, 6, 1), 8);
	CHECK(sublattice_index(b, a) == BigInt(6));
	CHECK_FALSE(sublattice_index(a, b).has_value());
	CHECK(sublattice_index(a, a) == BigInt(1));
	CHECK(sublattice_index(Lattice::of(mobius(r2, 1, 5, 1), 8), a) == BigInt(1));
	CHECK_THROWS_AS(Lattice::of(make_surd(0, 1, 3, 1), 8), InvalidArgument);
}

TEST_CASE("are_neighbors examples")
{
	const Surd r2 = make_surd(0, 1, 2, 1);
	CHECK(are_neighbors(r2, scale(r2, 3, 1), 3));
	CHECK(are_neighbors(r2, mobius(r2, 1, 1, 5), 5));
	CHECK_FALSE(are_neighbors(r2, scale(r2, 3, 1), 2));
	CHECK_THROWS_AS(are_neighbors(r2, make_surd(0, 1, 3, 1), 3), InvalidArgument);
}

TEST_CASE("chain_to_generator examples")
{
	const FieldData f8 = field_data(8), f5 = field_data(5);
	CHECK(chain_to_generator(f8, f8.xD).steps.empty());
	const HeckeChain c = chain_to_generator(f8, make_surd(0, 3, 2, 1));
	CHECK(c.primes() == std::vector<BigInt>{ 3 });
	CHECK(verify_chain(c));
	const HeckeChain d = chain_to_generator(f5, make_surd(1, 1, 5, 10));
	CHECK(d.primes() == std::vector<BigInt>{ 5 });
	CHECK(verify_chain(d));
	CHECK(same_value(d.nodes.back(), f5.xD));
}

TEST_CASE("chains between random surds verify and end at the target lattice")
{
	auto g = oracle::rng(61);
	for (const long d : { 5, 8, 12, 13 })
	{
		const FieldData f = field_data(d);
		for (int i = 0; i < 100; ++i)
		{
			const int64_t r = oracle::uniform(g, -12, 12), q = oracle::uniform(g, 1, 30);
			if (r == 0) continue;
			const Surd x = make_surd(oracle::uniform(g, -40, 40), r, f.m, q);
			const HeckeChain c = chain_to_generator(f, x);
			REQUIRE(verify_chain(c));
			REQUIRE(c.nodes.size() == c.steps.size() + 1);
			const Lattice end = Lattice::of(c.nodes.back(), x.D()), target = Lattice::of(f.xD, x.D());
			REQUIRE(sublattice_index(end, target) == BigInt(1));
			for (const BigInt & p : c.primes()) REQUIRE(is_prime(p));
		}
	}
}

TEST_CASE("scaled chains keep their primes")
{
	auto g = oracle::rng(67);
	const FieldData f = field_data(8);
	for (int i = 0; i < 30; ++i)
	{
		const int64_t r = oracle::uniform(g, 1, 12), q = oracle::uniform(g, 1, 30);
		const Surd x = make_surd(oracle::uniform(g, -40, 40), r, 2, q);
		const HeckeChain c = chain_to_generator(f, x);
		for (uint64_t N = 1; N <= 50; ++N)
		{
			const HeckeChain s = scale_chain(c, from_u64(N));
			REQUIRE(verify_chain(s));
			REQUIRE(s.primes() == c.primes());
			REQUIRE(same_value(s.nodes.front(), scale(x, from_u64(N), 1)));
			if (!c.steps.empty()) REQUIRE(same_value(s.nodes.back(), scale(f.xD, from_u64(N), 1)));
		}
	}
	CHECK_THROWS_AS(scale_chain(chain_to_generator(f, f.xD), 0), InvalidArgument);
}

TEST_CASE("lowest-terms chain of scaled endpoints can be shorter")
{
	// sqrt 2 + 1/3 = (3 sqrt 2 + 1) / 3: down by 3, up by 3. Scaled by 3 the endpoints differ by 1
	const Surd x = make_surd(0, 1, 2, 1), y = make_surd(1, 3, 2, 3);
	const std::vector<BigInt> threes{ 3, 3 };
	CHECK(chain_between(x, y).primes() == threes);
	CHECK(chain_between(scale(x, 3, 1), scale(y, 3, 1)).primes().empty());
	CHECK(scale_chain(chain_between(x, y), 3).primes() == threes);
	CHECK(verify_chain(scale_chain(chain_between(x, y), 3)));
}

TEST_CASE("conductor_bounds_check examples")
{
	const FieldData f = field_data(8);
	const Surd r2 = make_surd(0, 1, 2, 1);
	const ConductorBounds a = conductor_bounds_check(f, r2, scale(r2, 3, 1), 3);
	CHECK(a.l_x == 1);
	CHECK(a.l_y == 3);
	CHECK(a.ok);
	const ConductorBounds b = conductor_bounds_check(f, scale(r2, 3, 1), scale(r2, 9, 1), 3);
	CHECK(b.l_x == 3);
	CHECK(b.l_y == 9);
	CHECK(b.ok);
	const ConductorBounds c = conductor_bounds_check(f, r2, mobius(r2, 1, 1, 5), 5);
	CHECK(c.l_x == 1);
	CHECK(divides(c.l_y, 5));
	CHECK(c.ok);
	CHECK_THROWS_AS(conductor_bounds_check(f, r2, scale(r2, 3, 1), 2), InvalidArgument);
}

TEST_CASE("unit_index_check examples")
{
	const FieldData f8 = field_data(8), f5 = field_data(5);
	const Surd r2 = make_surd(0, 1, 2, 1);
	CHECK(unit_index_check(f8, r2, r2, 7) == 1);
	CHECK(unit_index_check(f8, r2, scale(r2, 3, 1), 3) <= 4);
	const uint64_t l = unit_index_check(f5, f5.xD, scale(f5.xD, 5, 1), 5);
	CHECK(l <= 6);
	CHECK(l == unit_index(f5, 5));
	CHECK(unit_exponent(f5, scale(f5.xD, 5, 1)) == 5);
}

TEST_CASE("neighbor properties on random pairs")
{
	auto g = oracle::rng(71);
	const long discs[] = { 5, 8, 12, 13 };
	const uint64_t primes[] = { 2, 3, 5, 7 };
	for (int i = 0; i < 500; ++i)
	{
		const FieldData f = field_data(discs[i % 4]);
		const uint64_t p = primes[(i / 4) % 4];
		const Pair pr = random_pair(g, f, p);
		REQUIRE(are_neighbors(pr.x, pr.y, from_u64(p)));
		REQUIRE(conductor_bounds_check(f, pr.x, pr.y, from_u64(p)).ok);
		const uint64_t l = unit_index_check(f, pr.x, pr.y, from_u64(p));
		REQUIRE(l >= 1);
		REQUIRE(l <= p + 1);
		// the regulators differ by at most the factor p + 1 either way
		const double rx = f.reg * double(unit_exponent(f, pr.x)), ry = f.reg * double(unit_exponent(f, pr.y));
		REQUIRE(ry <= double(p + 1) * rx * (1 + 1e-12));
		REQUIRE(rx <= double(p + 1) * ry * (1 + 1e-12));
	}
}
