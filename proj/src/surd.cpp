#include "qcf/surd.hpp"

#include <cmath>
#include <unordered_map>

#include "qcf/arith.hpp"
#include "qcf/errors.hpp"

namespace qcf {

namespace {

using i128 = __int128;

constexpr int64_t small_limit = int64_t(1) << 61;

struct StateKey
{
	i128 P, Q;
	bool operator==(const StateKey &) const = default;
};

struct StateKeyHash
{
	size_t operator()(const StateKey & k) const noexcept
	{
		const uint64_t a = uint64_t(k.P), b = uint64_t(k.Q);
		return size_t(a * 0x9e3779b97f4a7c15ull ^ (b + 0x7f4a7c15ull + (a << 6) + (a >> 2)));
	}
};

struct BigKey
{
	BigInt P, Q;
	bool operator==(const BigKey &) const = default;
};

struct BigKeyHash
{
	size_t operator()(const BigKey & k) const noexcept
	{
		const std::hash<BigInt> h;
		return h(k.P) * 31 ^ h(k.Q);
	}
};

i128 floor_div128(const i128 a, const i128 b)
{
	i128 q = a / b;
	if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
	return q;
}

i128 abs128(const i128 v) { return (v < 0) ? -v : v; }

// Digit of the complete quotient (P + sqrt(D)) / Q given s = isqrt(D); D is never a square.
i128 digit128(const i128 P, const i128 Q, const i128 s)
{
	return (Q > 0) ? floor_div128(P + s, Q) : -(floor_div128(P + s, -Q) + 1);
}

BigInt digit_big(const BigInt & P, const BigInt & Q, const BigInt & s)
{
	return (sgn(Q) > 0) ? floor_div(P + s, Q) : BigInt(-(floor_div(P + s, -Q) + 1));
}

void check_period_state(const BigInt & P, const BigInt & Q, const BigInt & D, const BigInt & s)
{
	// 0 < P < sqrt(D), 0 < Q < 2 sqrt(D)
	ensure(sgn(P) > 0 && P <= s && sgn(Q) > 0 && Q * Q < 4 * D, "cf_expand: periodic state out of the reduced range");
}

struct Overflow {};

template <bool keep_states>
CFTrace expand_small(const int64_t P0, const int64_t Q0, const int64_t D0)
{
	const i128 D = D0, s = i128(to_i64(isqrt(BigInt(from_i64(D0)))));
	i128 P = P0, Q = Q0;
	std::vector<i128> digits;
	std::vector<StateKey> states;
	std::unordered_map<StateKey, size_t, StateKeyHash> seen;
	size_t start = 0;
	for (size_t index = 0;; ++index)
	{
		const auto [it, fresh] = seen.emplace(StateKey{ P, Q }, index);
		if (!fresh) { start = it->second; break; }
		if constexpr (keep_states) states.push_back({ P, Q });
		const i128 a = digit128(P, Q, s);
		digits.push_back(a);
		const i128 Pn = a * Q - P;
		if (abs128(Pn) >= small_limit) throw Overflow{};
		const i128 num = D - Pn * Pn;
		ensure(num % Q == 0, "cf_expand: non-integral state");
		const i128 Qn = num / Q;
		ensure(Qn != 0, "cf_expand: zero denominator");
		if (abs128(Qn) >= small_limit) throw Overflow{};
		P = Pn; Q = Qn;
	}

	CFTrace t;
	const BigInt Db = from_i64(D0), sb = from_i64(int64_t(s));
	for (size_t i = 0; i < digits.size(); ++i)
	{
		BigInt d = from_i128(digits[i]);
		(i < start ? t.expansion.preperiod : t.expansion.period).push_back(std::move(d));
	}
	if constexpr (keep_states)
	{
		for (const auto & st : states) t.states.push_back({ from_i128(st.P), from_i128(st.Q) });
		for (size_t i = start; i < states.size(); ++i) check_period_state(t.states[i].P, t.states[i].Q, Db, sb);
	}
	else
	{
		for (auto it = seen.begin(); it != seen.end(); ++it)
		{
			if (it->second >= start)
			{
				const StateKey & k = it->first;
				ensure(k.P > 0 && k.P <= s && k.Q > 0 && k.Q * k.Q < 4 * D, "cf_expand: periodic state out of the reduced range");
			}
		}
	}
	return t;
}

CFTrace expand_big(const Surd & x, const bool keep_states)
{
	const BigInt & D = x.D();
	const BigInt s = isqrt(D);
	BigInt P = x.P(), Q = x.Q();
	std::vector<BigInt> digits;
	std::vector<CFState> states;
	std::unordered_map<BigKey, size_t, BigKeyHash> seen;
	size_t start = 0;
	for (size_t index = 0;; ++index)
	{
		const auto [it, fresh] = seen.emplace(BigKey{ P, Q }, index);
		if (!fresh) { start = it->second; break; }
		states.push_back({ P, Q });
		BigInt a = digit_big(P, Q, s);
		const BigInt Pn = a * Q - P;
		const BigInt num = D - Pn * Pn;
		ensure(divides(Q, num), "cf_expand: non-integral state");
		BigInt Qn;
		mpz_divexact(Qn.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
		ensure(sgn(Qn) != 0, "cf_expand: zero denominator");
		digits.push_back(std::move(a));
		P = Pn; Q = std::move(Qn);
	}
	CFTrace t;
	for (size_t i = 0; i < digits.size(); ++i) (i < start ? t.expansion.preperiod : t.expansion.period).push_back(std::move(digits[i]));
	for (size_t i = start; i < states.size(); ++i) check_period_state(states[i].P, states[i].Q, D, s);
	if (keep_states) t.states = std::move(states);
	return t;
}

CFTrace expand(const Surd & x, const bool keep_states)
{
	if (fits_i64(x.D()) && x.D() < small_limit && fits_i64(x.P()) && abs(x.P()) < small_limit && fits_i64(x.Q()) && abs(x.Q()) < small_limit)
	{
		try
		{
			const int64_t P = to_i64(x.P()), Q = to_i64(x.Q()), D = to_i64(x.D());
			return keep_states ? expand_small<true>(P, Q, D) : expand_small<false>(P, Q, D);
		}
		catch (const Overflow &) {}
	}
	return expand_big(x, keep_states);
}

}

Surd make_surd(const BigInt & p, const BigInt & r, const BigInt & d, const BigInt & q)
{
	require(sgn(r) != 0, "surd: r = 0 gives a rational number");
	require(sgn(q) != 0, "surd: q = 0");
	require(sgn(d) > 0, "surd: d must be positive");
	require(!is_square(d), "surd: d is a perfect square, the value is rational");
	BigInt P = p, Q = q, D = r * r * d;
	if (sgn(r) < 0) { P = -P; Q = -Q; }
	if (!divides(Q, D - P * P))
	{
		const BigInt aq = abs(Q);
		P *= aq;
		D *= Q * Q;
		Q *= aq;
	}
	return Surd(std::move(P), std::move(Q), std::move(D));
}

Surd surd_from_state(const BigInt & P, const BigInt & Q, const BigInt & D)
{
	require(sgn(Q) != 0 && sgn(D) > 0 && !is_square(D), "surd: invalid state");
	require(divides(Q, D - P * P), "surd: Q does not divide D - P^2");
	return Surd(P, Q, D);
}

Surd scale(const Surd & x, const BigInt & num, const BigInt & den)
{
	require(sgn(num) != 0, "scale: zero multiplier gives a rational number");
	require(sgn(den) > 0, "scale: denominator must be positive");
	return make_surd(num * x.P(), num, x.D(), den * x.Q());
}

Surd mobius(const Surd & x, const BigInt & A, const BigInt & B, const BigInt & C)
{
	require(sgn(A) != 0, "mobius: A = 0 gives a rational number");
	require(sgn(C) != 0, "mobius: C = 0");
	// (A (P + sqrt D) / Q + B) / C = (A P + B Q + A sqrt D) / (C Q)
	return make_surd(A * x.P() + B * x.Q(), A, x.D(), C * x.Q());
}

BigInt floor_of(const Surd & x) { return digit_big(x.P(), x.Q(), isqrt(x.D())); }

bool is_reduced(const Surd & x)
{
	const BigInt & P = x.P(), & Q = x.Q(), & D = x.D();
	if (sgn(Q) <= 0) return false;
	// x > 1  <=>  sqrt(D) > Q - P
	const BigInt qp = Q - P;
	const bool gt_one = sgn(qp) < 0 || qp * qp < D;
	// conjugate < 0  <=>  P < sqrt(D)
	const bool conj_neg = sgn(P) < 0 || P * P < D;
	// conjugate > -1  <=>  P + Q > sqrt(D)
	const BigInt pq = P + Q;
	const bool conj_gt = sgn(pq) > 0 && pq * pq > D;
	return gt_one && conj_neg && conj_gt;
}

std::pair<Rational, Rational> rational_parts(const Surd & x)
{
	Rational u = ratio(x.P(), x.Q()), v = ratio(BigInt(1), x.Q());
	u.canonicalize();
	v.canonicalize();
	return { u, v };
}

bool same_value(const Surd & x, const Surd & y)
{
	// x = u + v sqrt(D): equal iff rational parts agree and v_x^2 D_x = v_y^2 D_y with equal signs
	const auto [ux, vx] = rational_parts(x);
	const auto [uy, vy] = rational_parts(y);
	if (ux != uy || sgn(vx) != sgn(vy)) return false;
	const Rational lhs = vx * vx * Rational(x.D()), rhs = vy * vy * Rational(y.D());
	return lhs == rhs;
}

CFExpansion cf_expand(const Surd & x) { return expand(x, false).expansion; }

CFTrace cf_trace(const Surd & x) { return expand(x, true); }

mpf_class eval_approx(const Surd & x, const unsigned precision_bits)
{
	require(precision_bits > 0, "eval_approx: precision must be positive");
	// guard bits cover the cancellation in P + sqrt(D) when P ~ -sqrt(D)
	const mp_bitcnt_t bits = precision_bits + 64 + mpz_sizeinbase(x.D().get_mpz_t(), 2);
	mpf_class r(0, bits), d(x.D(), bits);
	mpf_sqrt(r.get_mpf_t(), d.get_mpf_t());
	r += mpf_class(x.P(), bits);
	r /= mpf_class(x.Q(), bits);
	return r;
}

// mpf_get_d truncates; pick the nearer of the truncation and its outward neighbour.
double eval_double(const Surd & x)
{
	const mpf_class v = eval_approx(x, 192);
	const double t = v.get_d();
	const double n = std::nextafter(t, sgn(v) < 0 ? -HUGE_VAL : HUGE_VAL);
	if (!std::isfinite(n)) return t;
	const mpf_class dt = abs(v - mpf_class(t, 192)), dn = abs(v - mpf_class(n, 192));
	return dn < dt ? n : t;
}

double cycle_log_unit(const Surd & x)
{
	const CFTrace t = cf_trace(x);
	const size_t start = t.expansion.preperiod.size();
	const double sd = eval_approx(surd_from_state(0, 1, x.D()), 64).get_d();
	double sum = 0;
	for (size_t i = start; i < t.states.size(); ++i)
	{
		sum += std::log((t.states[i].P.get_d() + sd) / t.states[i].Q.get_d());
	}
	return sum;
}

}
