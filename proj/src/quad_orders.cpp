#include "qcf/quad_orders.hpp"

#include <cmath>

#include "qcf/arith.hpp"
#include "qcf/errors.hpp"
#include "qcf/matrix_orders.hpp"

namespace qcf {

namespace {

// ln of a positive element given as a high-precision float
double log_mpf(const mpf_class & v)
{
	ensure(sgn(v) > 0, "log of a nonpositive value");
	long exp = 0;
	const double mant = mpf_get_d_2exp(&exp, v.get_mpf_t());
	return std::log(mant) + double(exp) * std::log(2.0);
}

mpf_class to_mpf(const FieldData & f, const AlgInt & x)
{
	const mp_bitcnt_t bits = 128 + mpz_sizeinbase(x.a.get_mpz_t(), 2) + mpz_sizeinbase(x.b.get_mpz_t(), 2);
	const mpf_class xd = eval_approx(f.xD, unsigned(bits));
	mpf_class r(x.b, bits);
	r *= xd;
	r += mpf_class(x.a, bits);
	return r;
}

BigInt lcm_den(const BigInt & acc, const Rational & r)
{
	BigInt out;
	mpz_lcm(out.get_mpz_t(), acc.get_mpz_t(), r.get_den().get_mpz_t());
	return out;
}

}

Mat2 Mat2::operator*(const Mat2 & o) const
{
	return { m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11 };
}

Mat2 Mat2::operator+(const Mat2 & o) const
{
	return { m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11 };
}

CycleUnit cycle_unit(const Surd & x)
{
	const CFTrace t = cf_trace(x);
	const size_t start = t.expansion.preperiod.size();
	const CFState & w = t.states[start];
	// q_{k} = a_k q_{k-1} + q_{k-2}, q_{-1} = 0, q_{-2} = 1; eps = q_{L-1} w + q_{L-2}
	BigInt q_prev2 = 1, q_prev = 0;
	for (const BigInt & a : t.expansion.period)
	{
		BigInt qn = a * q_prev + q_prev2;
		q_prev2 = std::move(q_prev);
		q_prev = std::move(qn);
	}
	CycleUnit u;
	u.u = ratio(q_prev * w.P, w.Q) + Rational(q_prev2);
	u.v = ratio(q_prev, w.Q);
	u.u.canonicalize();
	u.v.canonicalize();
	u.period_length = t.expansion.period.size();
	u.norm = (u.period_length % 2 == 0) ? 1 : -1;
	return u;
}

FieldData field_data(const BigInt & m_or_D)
{
	require(m_or_D > 1, "field: input must exceed 1");
	require(!is_square(m_or_D), "field: input is a perfect square");
	BigInt m;
	if (squarefree_part(m_or_D) == m_or_D) m = m_or_D;
	else
	{
		const bool fundamental = divides(4, m_or_D) && squarefree_part(m_or_D / 4) == m_or_D / 4
			&& (mod_nonneg(m_or_D / 4, 4) == 2 || mod_nonneg(m_or_D / 4, 4) == 3);
		require(fundamental, "field: input is neither squarefree nor a fundamental discriminant");
		m = m_or_D / 4;
	}
	require(m > 1, "field: radicand must exceed 1");

	const bool one_mod_four = mod_nonneg(m, 4) == 1;
	FieldData f = one_mod_four ? FieldData{ m, m, make_surd(1, 1, m, 2), 1, (1 - m) / 4, {}, 0, 0 }
								: FieldData{ m, 4 * m, make_surd(0, 1, m, 1), 0, -m, {}, 0, 0 };

	const CycleUnit cu = cycle_unit(f.xD);
	// u + v sqrt(m), sqrt(m) = 2 x_D - 1 or x_D
	const Rational a = one_mod_four ? Rational(cu.u - cu.v) : cu.u;
	const Rational b = one_mod_four ? Rational(2 * cu.v) : cu.v;
	ensure(a.get_den() == 1 && b.get_den() == 1, "field: cycle unit is not integral");
	f.eps = { a.get_num(), b.get_num() };
	const BigInt nrm = norm(f, f.eps);
	ensure(abs(nrm) == 1 && nrm == cu.norm, "field: cycle unit has norm other than +-1");
	f.unit_norm = int(nrm.get_si());
	f.reg = log_mpf(to_mpf(f, f.eps));
	ensure(f.reg > 0, "field: fundamental unit does not exceed 1");
	return f;
}

AlgInt add(const AlgInt & x, const AlgInt & y) { return { x.a + y.a, x.b + y.b }; }

AlgInt mul(const FieldData & f, const AlgInt & x, const AlgInt & y)
{
	const BigInt bb = x.b * y.b;
	return { x.a * y.a - f.gen_norm * bb, x.a * y.b + y.a * x.b + f.gen_trace * bb };
}

AlgInt pow(const FieldData & f, const AlgInt & base, uint64_t e)
{
	AlgInt r{ 1, 0 }, x = base;
	while (e != 0)
	{
		if (e & 1) r = mul(f, r, x);
		x = mul(f, x, x);
		e >>= 1;
	}
	return r;
}

BigInt norm(const FieldData & f, const AlgInt & x)
{
	return x.a * x.a + x.a * x.b * f.gen_trace + x.b * x.b * f.gen_norm;
}

BigInt trace(const FieldData & f, const AlgInt & x) { return 2 * x.a + x.b * f.gen_trace; }

double to_double(const FieldData & f, const AlgInt & x) { return to_mpf(f, x).get_d(); }

std::pair<Rational, Rational> basis_coords(const FieldData & f, const Surd & x)
{
	require(divides(f.m, x.D()) && is_square(x.D() / f.m), "surd does not lie in the field");
	const BigInt s = isqrt(x.D() / f.m);
	// x = P/Q + (s/Q) sqrt(m)
	Rational u = ratio(x.P(), x.Q()), v = ratio(s, x.Q());
	if (mod_nonneg(f.m, 4) == 1)
	{
		u -= v;
		v *= 2;
	}
	u.canonicalize();
	v.canonicalize();
	return { u, v };
}

Surd surd_of(const FieldData & f, const Rational & u, const Rational & v)
{
	require(sgn(v) != 0, "surd_of: rational element");
	// u + v x_D = U + V sqrt(m)
	Rational U = u, V = v;
	if (mod_nonneg(f.m, 4) == 1)
	{
		V /= 2;
		U += V;
	}
	BigInt q;
	mpz_lcm(q.get_mpz_t(), U.get_den().get_mpz_t(), V.get_den().get_mpz_t());
	const Rational p = U * Rational(q), r = V * Rational(q);
	return make_surd(p.get_num(), r.get_num(), f.m, q);
}

Mat2 phi(const FieldData & f, const AlgInt & alpha)
{
	// alpha * x_D = -n b + (a + t b) x_D
	return { alpha.a, alpha.b, -f.gen_norm * alpha.b, alpha.a + f.gen_trace * alpha.b };
}

BigInt disc_of_suborder(const FieldData & f, const BigInt & N)
{
	require(sgn(N) > 0, "disc_of_suborder: N must be positive");
	// basis {1, N x_D} in coordinates of {1, x_D}
	const Mat2 basis{ 1, 0, 0, N };
	const BigInt index = abs(basis.det());
	return f.D * index * index;
}

bool in_suborder(const FieldData & f, const AlgInt & alpha, const BigInt & N)
{
	require(sgn(N) > 0, "in_suborder: N must be positive");
	const bool by_coordinate = divides(N, alpha.b);
	const Mat2 m = phi(f, alpha);
	const bool by_matrix = divides(N, m.m01) && divides(N, m.m10) && divides(N, m.m00 - m.m11);
	ensure(by_coordinate == by_matrix, "in_suborder: coordinate and matrix tests disagree");
	return by_coordinate;
}

uint64_t R_of(const FieldData & f, const uint64_t N)
{
	require(N >= 1, "R_of: N must be positive");
	if (N == 1) return 1;
	const Mat2 M = phi(f, f.eps);
	const uint64_t ord = mat_order_mod(M, N);
	if (N == 2 || ord % 2 != 0) return ord;
	return ModMat2::reduce(M, N).pow(ord / 2).is_minus_identity() ? ord / 2 : ord;
}

uint64_t unit_index(const FieldData & f, const uint64_t N)
{
	require(N >= 1, "unit_index: N must be positive");
	if (N == 1) return 1;
	const ModMat2 M = ModMat2::reduce(phi(f, f.eps), N);
	// k with M^k scalar form a subgroup containing R_of
	uint64_t k = R_of(f, N);
	for (const uint64_t q : prime_divisors_u64(k))
	{
		while (k % q == 0 && M.pow(k / q).is_scalar()) k /= q;
	}
	return k;
}

double regulator_of_order(const OrderSpec & o)
{
	require(sgn(o.f) > 0 && fits_u64(o.f), "regulator_of_order: conductor must be a positive 64-bit integer");
	return o.field.reg * double(unit_index(o.field, to_u64(o.f)));
}

BigInt conductor_of_surd(const FieldData & f, const Surd & x)
{
	const auto [u, v] = basis_coords(f, x);
	const Rational t(f.gen_trace), n(f.gen_norm);
	// m x_D in Lambda_x, m x_D x in Lambda_x: each reads m * r in Z for the r below
	const Rational r1 = 1 / v, r2 = -u / v, r3 = (u + t * v) / v;
	const Rational r4 = -n * v - u * r3;
	BigInt l = 1;
	for (const Rational & r : { r1, r2, r3, r4 })
	{
		Rational c = r;
		c.canonicalize();
		l = lcm_den(l, c);
	}
	return l;
}

}
