#include "qcf/gauss_kuzmin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcf/errors.hpp"
#include "qcf/kernels/window_count.hpp"

namespace qcf {

namespace {

// log2 of a positive big integer without overflowing a double
double log2_big(const BigInt & n)
{
	long exp = 0;
	const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
	return std::log2(mant) + double(exp);
}

}

Pattern::Pattern(std::vector<uint32_t> digits) : digits_(std::move(digits))
{
	require(!digits_.empty(), "pattern: empty");
	for (const uint32_t d : digits_)
	{
		require(d >= 1, "pattern: digits must be positive");
		require(d != kernels::big_digit, "pattern: digit too large");
	}
}

Pattern Pattern::parse(const std::string & text)
{
	std::vector<uint32_t> digits;
	require(text.empty() || text.back() != '-', "pattern: expected digits separated by '-'");
	std::istringstream is(text);
	std::string tok;
	while (std::getline(is, tok, '-'))
	{
		require(!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos, "pattern: expected digits separated by '-'");
		require(tok.size() <= 10, "pattern: digit too large");
		const unsigned long long v = std::stoull(tok);
		require(v < kernels::big_digit, "pattern: digit too large");
		digits.push_back(uint32_t(v));
	}
	return Pattern(std::move(digits));
}

std::string Pattern::str() const
{
	std::string s;
	for (size_t i = 0; i < digits_.size(); ++i)
	{
		if (i != 0) s += '-';
		s += std::to_string(digits_[i]);
	}
	return s;
}

Pattern Pattern::extended(const uint32_t digit) const
{
	std::vector<uint32_t> d = digits_;
	d.push_back(digit);
	return Pattern(std::move(d));
}

double LogRatio::value() const
{
	// near 1 the difference of two large logs cancels; log1p keeps the small values accurate
	if (ratio > Rational(1, 2) && ratio < 2)
	{
		const Rational t = ratio - 1;
		return std::log1p(t.get_d()) / std::numbers::ln2;
	}
	return log2_big(ratio.get_num()) - log2_big(ratio.get_den());
}

Cylinder cylinder(const Pattern & w)
{
	// continuants of [0; w1, ..., wk]
	BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
	for (const uint32_t a : w.digits())
	{
		BigInt pn = p * a + p_prev, qn = q * a + q_prev;
		p_prev = std::move(p); q_prev = std::move(q);
		p = std::move(pn); q = std::move(qn);
	}
	// tail t in [1, inf): endpoints p/q (t = inf) and (p + p_prev) / (q + q_prev) (t = 1)
	Rational a = ratio(p, q), b = ratio(p + p_prev, q + q_prev);
	a.canonicalize();
	b.canonicalize();
	if (b < a) std::swap(a, b);
	return { a, b };
}

LogRatio c_w(const Pattern & w)
{
	const Cylinder c = cylinder(w);
	Rational r = (1 + c.high) / (1 + c.low);
	r.canonicalize();
	return { r };
}

DigitStream::DigitStream(const CFExpansion & e) : length_(e.period.size())
{
	require(!e.period.empty(), "digit stream: empty period");
	period_.reserve(length_);
	for (const BigInt & d : e.period)
	{
		ensure(sgn(d) > 0, "digit stream: nonpositive periodic digit");
		period_.push_back((mpz_cmp_ui(d.get_mpz_t(), kernels::big_digit) >= 0) ? kernels::big_digit : uint32_t(d.get_ui()));
	}
	stream_ = period_;
}

void DigitStream::extend_to(const size_t window) const
{
	const size_t need = length_ + window - 1;
	while (stream_.size() < need) stream_.push_back(period_[stream_.size() % length_]);
}

uint64_t DigitStream::occurrences(const Pattern & w) const
{
	extend_to(w.size());
	return kernels::count_matches(stream_, length_, w.digits());
}

std::vector<uint32_t> DigitStream::distinct_digits() const
{
	std::vector<uint32_t> d = period_;
	std::sort(d.begin(), d.end());
	d.erase(std::unique(d.begin(), d.end()), d.end());
	if (!d.empty() && d.back() == kernels::big_digit) d.pop_back();
	return d;
}

Rational pattern_frequency(const DigitStream & s, const Pattern & w)
{
	Rational f = ratio(from_u64(s.occurrences(w)), from_u64(s.period_length()));
	f.canonicalize();
	return f;
}

Rational pattern_frequency(const CFExpansion & e, const Pattern & w) { return pattern_frequency(DigitStream(e), w); }

double deviation(const Rational & freq, const LogRatio & cw)
{
	return std::abs(freq.get_d() - cw.value());
}

double deviation(const Surd & x, const Pattern & w) { return deviation(pattern_frequency(cf_expand(x), w), c_w(w)); }

}
