// Acceptance suite: one line per criterion, "[PASS]" or "[FAIL]", with the measured detail and runtime.
//   acceptance            run all criteria
//   acceptance 3 7        run the listed criteria
//   acceptance --calibrate   preliminary runs for the calibrated thresholds (criteria 8 and 10)
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "../support/oracles.hpp"
#include "qcf/arith.hpp"
#include "qcf/class_geodesics.hpp"
#include "qcf/errors.hpp"
#include "qcf/experiments.hpp"
#include "qcf/gauss_kuzmin.hpp"
#include "qcf/hecke.hpp"
#include "qcf/kernels/window_count.hpp"
#include "qcf/matrix_orders.hpp"
#include "qcf/quad_orders.hpp"
#include "qcf/surd.hpp"

using namespace qcf;

namespace {

// Tolerances and calibrated constants.
constexpr double telescoping_tol = 1e-12;
constexpr double regulator_tol = 1e-9;
constexpr double spot_tol = 1e-9;

// Criterion 8: band from `acceptance --calibrate` (log in tests/acceptance/calibration/calibration.log).
constexpr double duke_band_lo = 0.88;
constexpr double duke_band_hi = 0.95;
constexpr uint64_t duke_seed = 2026;
constexpr size_t duke_sample = 200;
constexpr int64_t duke_lo = 10'000, duke_hi = 1'000'000;

// Criterion 10: the threshold is the brute-force density on N <= 10^3 less this many binomial standard errors.
constexpr double artin_sigmas = 3.0;
constexpr double artin_theta = 0.8;

struct Outcome
{
	bool pass;
	std::string detail;
};

struct Criterion
{
	int id;
	const char * name;
	double budget_s;
	std::function<Outcome()> run;
};

const std::vector<long> four_fields{ 5, 8, 12, 13 };

Surd random_surd(std::mt19937_64 & g)
{
	for (;;)
	{
		const int64_t d = oracle::uniform(g, 2, 10000);
		if (is_square(d)) continue;
		const int64_t r = oracle::uniform(g, -40, 40), q = oracle::uniform(g, -80, 80);
		if (r == 0 || q == 0) continue;
		return make_surd(oracle::uniform(g, -5000, 5000), r, d, q);
	}
}

std::vector<BigInt> big(std::initializer_list<long> v)
{
	std::vector<BigInt> out;
	for (const long x : v) out.push_back(x);
	return out;
}

Outcome cf_correctness()
{
	struct Known
	{
		Surd x;
		std::vector<BigInt> pre, period;
	};
	const std::vector<Known> known{ { make_surd(0, 1, 2, 1), big({ 1 }), big({ 2 }) }, { make_surd(0, 1, 7, 1), big({ 2 }), big({ 1, 1, 1, 4 }) },
		{ make_surd(1, 1, 5, 2), {}, big({ 1 }) }, { make_surd(0, 1, 13, 1), big({ 3 }), big({ 1, 1, 1, 1, 6 }) } };
	int known_ok = 0;
	for (const Known & k : known)
	{
		const CFExpansion e = cf_expand(k.x);
		known_ok += (e.preperiod == k.pre && e.period == k.period);
	}

	auto g = oracle::rng(1);
	int approx_ok = 0;
	const int samples = 1000;
	for (int i = 0; i < samples; ++i)
	{
		const Surd x = random_surd(g);
		const CFExpansion e = cf_expand(x);
		const auto digit = [&](size_t k) {
			return k < e.preperiod.size() ? e.preperiod[k] : e.period[(k - e.preperiod.size()) % e.period.size()];
		};
		BigInt p0 = 1, q0 = 0, p1 = digit(0), q1 = 1;
		for (size_t k = 1; k < 50; ++k)
		{
			const BigInt a = digit(k);
			BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
			p0 = std::move(p1);
			q0 = std::move(q1);
			p1 = std::move(p2);
			q1 = std::move(q2);
		}
		const unsigned bits = 4096;
		const mpf_class err = abs(mpf_class(p1, bits) / mpf_class(q1, bits) - eval_approx(x, bits));
		const mpf_class bound = mpf_class(1, bits) / (mpf_class(q1, bits) * mpf_class(q1, bits));
		approx_ok += err < bound;
	}
	return { known_ok == 4 && approx_ok == samples,
		fmt::format("classical expansions {}/4; 50-digit convergents within 1/q^2: {}/{}", known_ok, approx_ok, samples) };
}

Outcome gauss_kuzmin_identities()
{
	Rational prod = 1;
	double sum = 0, worst = 0;
	bool exact = true;
	for (uint32_t a = 1; a <= 1000; ++a)
	{
		const LogRatio c = c_w(Pattern({ a }));
		prod *= c.ratio;
		sum += c.value();
		worst = std::max(worst, std::abs(sum - std::log2(2.0 * (a + 1) / (a + 2))));
		exact = exact && prod == ratio(2 * (a + 1), a + 2);
	}

	auto g = oracle::rng(2);
	int refine_ok = 0, words = 0;
	for (int i = 0; i < 100; ++i)
	{
		const Surd x = random_surd(g);
		const CFExpansion e = cf_expand(x);
		const DigitStream s(e);
		const std::vector<uint32_t> digits = s.distinct_digits();
		// a single digit of the period and the two-digit word starting there
		bool ok = true;
		for (size_t len = 1; len <= 2; ++len)
		{
			std::vector<uint32_t> w;
			for (size_t j = 0; j < len && j < e.period.size(); ++j)
			{
				if (e.period[j] >= kernels::big_digit) break;
				w.push_back(uint32_t(e.period[j].get_ui()));
			}
			if (w.size() != len) continue;
			const Pattern p(w);
			Rational refined = 0;
			for (const uint32_t a : digits) refined += pattern_frequency(s, p.extended(a));
			ok = ok && refined == pattern_frequency(s, p);
			++words;
		}
		refine_ok += ok;
	}
	return { exact && worst <= telescoping_tol && refine_ok == 100,
		fmt::format("telescoping A<=1000 exact={} max float error {:.2e}; refinement identity on {}/100 surds ({} words)", exact, worst, refine_ok,
			words) };
}

Outcome suborder_checks()
{
	size_t disc_ok = 0, disc_total = 0, member_ok = 0, member_total = 0, order_ok = 0, order_total = 0;
	auto g = oracle::rng(3);
	for (const long d : four_fields)
	{
		const FieldData f = field_data(d);
		for (uint64_t N = 1; N <= 200; ++N)
		{
			// discriminant of Z[y], y = N x_D, from the trace form
			const AlgInt y{ 0, from_u64(N) };
			const BigInt tr_y = trace(f, y), tr_yy = trace(f, mul(f, y, y));
			const BigInt disc = 2 * tr_yy - tr_y * tr_y;
			disc_ok += (disc == disc_of_suborder(f, from_u64(N)) && disc == BigInt(N * N) * f.D);
			++disc_total;
		}
		for (int i = 0; i < 1000; ++i)
		{
			const uint64_t N = uint64_t(oracle::uniform(g, 1, 200));
			AlgInt a{ oracle::uniform(g, -100000, 100000), oracle::uniform(g, -100000, 100000) };
			if (i % 2) a.b *= N;
			const bool coord = divides(from_u64(N), a.b);
			const bool scalar = ModMat2::reduce(phi(f, a), N).is_scalar();
			member_ok += (coord == scalar && in_suborder(f, a, from_u64(N)) == coord);
			++member_total;
		}
		const Mat2 M = phi(f, f.eps);
		for (uint64_t N = 2; N <= 200; ++N)
		{
			order_ok += mat_order_mod(M, N) == ring_order_mod(f, f.eps, N);
			++order_total;
		}
	}
	return { disc_ok == disc_total && member_ok == member_total && order_ok == order_total,
		fmt::format("discriminant N^2 D {}/{}; membership tests agree {}/{}; matrix and ring orders of eps agree {}/{}", disc_ok, disc_total,
			member_ok, member_total, order_ok, order_total) };
}

Outcome regulator_from_R()
{
	size_t pairs = 0, index_eq_R = 0, reg_R_ok = 0, reg_index_ok = 0;
	std::vector<std::string> mismatches;
	for (const long d : four_fields)
	{
		const FieldData f = field_data(d);
		for (uint64_t N = 1; N <= 40; ++N)
		{
			// least k with eps^k in Z[N x_D], by powering
			AlgInt p = f.eps;
			uint64_t k = 1;
			while (!divides(from_u64(N), p.b))
			{
				p = mul(f, p, f.eps);
				++k;
			}
			const double ln_power = std::log(to_double(f, p));
			const uint64_t R = R_of(f, N);
			++pairs;
			index_eq_R += (k == R);
			reg_R_ok += std::abs(f.reg * double(R) - ln_power) <= regulator_tol;
			reg_index_ok += std::abs(regulator_of_order({ f, from_u64(N) }) - ln_power) <= regulator_tol;
			if (k != R && mismatches.size() < 6) mismatches.push_back(fmt::format("D={} N={}: index {} R {}", d, N, k, R));
		}
	}
	const double spot = regulator_of_order({ field_data(5), 2 });
	const bool spot_ok = std::abs(spot - std::log(2 + std::sqrt(5.0))) <= spot_tol && std::abs(spot - 1.4436355) < 1e-7;
	std::string first;
	for (const auto & m : mismatches) first += (first.empty() ? "" : "; ") + m;
	return { index_eq_R == pairs && reg_R_ok == pairs && spot_ok,
		fmt::format("index = R(N) on {}/{} pairs; regD R(N) = ln(least power) on {}/{}; regD index = ln(least power) on {}/{}; Reg(O_20) = {:.7f} ok={}{}",
			index_eq_R, pairs, reg_R_ok, pairs, reg_index_ok, pairs, spot, spot_ok, first.empty() ? "" : "; first mismatches: " + first) };
}

Outcome pisano_oracle()
{
	const FieldData f = field_data(5);
	const Mat2 M = phi(f, f.eps);
	int ok = 0;
	for (uint64_t N = 2; N <= 1000; ++N) ok += mat_order_mod(M, N) == oracle::pisano(N);
	return { ok == 999, fmt::format("order equals Fibonacci-pair period for {}/999 moduli", ok) };
}

Outcome hecke_properties()
{
	auto g = oracle::rng(6);
	const uint64_t primes[] = { 2, 3, 5, 7 };
	int index_ok = 0, div_ok = 0, bound_ok = 0;
	uint64_t worst_l = 0;
	for (int i = 0; i < 500; ++i)
	{
		const FieldData f = field_data(four_fields[i % 4]);
		const uint64_t p = primes[(i / 4) % 4];
		const int64_t r = oracle::uniform(g, 1, 6), q = oracle::uniform(g, 1, 8);
		const Surd x = make_surd(oracle::uniform(g, -20, 20), r, f.m, q);
		const int64_t j = oracle::uniform(g, -1, int64_t(p) - 1);
		Surd y = j < 0 ? scale(x, from_u64(p), 1) : mobius(x, 1, j, from_u64(p));
		Surd a = x;
		if (g() % 2) std::swap(a, y);
		const Lattice la = Lattice::of(a, a.D()), ly = Lattice::of(y, a.D());
		const auto i1 = sublattice_index(ly, la), i2 = sublattice_index(la, ly);
		index_ok += are_neighbors(a, y, from_u64(p)) && ((i1 && *i1 == p) || (i2 && *i2 == p));
		div_ok += conductor_bounds_check(f, a, y, from_u64(p)).ok;
		try
		{
			const uint64_t l = unit_index_check(f, a, y, from_u64(p));
			worst_l = std::max(worst_l, l);
			bound_ok += l <= p + 1;
		}
		catch (const InvariantViolation &)
		{
		}
	}

	int chains = 0, chain_ok = 0, lowest_terms_differ = 0;
	for (const long d : four_fields)
	{
		const FieldData f = field_data(d);
		for (int i = 0; i < 10; ++i)
		{
			const int64_t r = oracle::uniform(g, 1, 9), q = oracle::uniform(g, 1, 30);
			const Surd x = make_surd(oracle::uniform(g, -30, 30), r, f.m, q);
			const HeckeChain c = chain_to_generator(f, x);
			for (uint64_t N = 1; N <= 50; ++N)
			{
				const HeckeChain s = scale_chain(c, from_u64(N));
				++chains;
				chain_ok += verify_chain(s) && s.primes() == c.primes() && same_value(s.nodes.front(), scale(x, from_u64(N), 1))
					&& (c.steps.empty() || same_value(s.nodes.back(), scale(f.xD, from_u64(N), 1)));
				lowest_terms_differ += chain_between(scale(x, from_u64(N), 1), scale(f.xD, from_u64(N), 1)).primes() != c.primes();
			}
		}
	}
	return { index_ok == 500 && div_ok == 500 && bound_ok == 500 && chain_ok == chains,
		fmt::format("index {}/500, conductor divisibilities {}/500, l <= p+1 {}/500 (max l {}); scaled chains verified with the same primes {}/{} "
					"(lowest-terms chains re-derived from the scaled endpoints differ in {})",
			index_ok, div_ok, bound_ok, worst_l, chain_ok, chains, lowest_terms_differ) };
}

Outcome class_numbers()
{
	const std::vector<std::pair<int64_t, uint64_t>> expect{ { 5, 1 }, { 8, 1 }, { 40, 2 }, { 229, 3 } };
	int ok = 0;
	std::string got;
	for (const auto & [d, h] : expect)
	{
		const uint64_t mine = class_number(d);
		// rho-cycle count by plain enumeration, and h from h R via the analytic class number formula
		const uint64_t cycles = oracle::brute_cycles(d);
		const double h_analytic = oracle::dirichlet_hR(d) / field_data(d).reg;
		const bool agree = mine == h && cycles == h && std::abs(h_analytic - double(h)) < 1e-6;
		ok += agree;
		got += fmt::format("{}{}:{}", got.empty() ? "" : " ", d, mine);
	}
	return { ok == 4, fmt::format("h = {} (oracles agree on {}/4)", got, ok) };
}

struct DukeSample
{
	double median;
	size_t count;
};

std::vector<int64_t> sample_fundamental(const uint64_t seed, const size_t count)
{
	auto g = oracle::rng(seed);
	std::set<int64_t> picked;
	std::vector<int64_t> out;
	while (out.size() < count)
	{
		const int64_t d = oracle::uniform(g, duke_lo, duke_hi);
		if (d % 4 != 0 && d % 4 != 1) continue;
		if (is_square(d) || !is_fundamental(d)) continue;
		if (picked.insert(d).second) out.push_back(d);
	}
	return out;
}

DukeSample duke_median(const uint64_t seed)
{
	const DukeResult r = run_duke(sample_fundamental(seed, duke_sample), 1);
	std::vector<double> e;
	for (const DukeRow & row : r.rows) e.push_back(row.exponent);
	return { median(e), e.size() };
}

Outcome duke_trend()
{
	const DukeSample s = duke_median(duke_seed);
	return { s.median >= duke_band_lo && s.median <= duke_band_hi,
		fmt::format("median ln(h Reg)/ln sqrt(D) over {} fundamental D in [1e4, 1e6] = {:.4f}, band [{:.2f}, {:.2f}]", s.count, s.median, duke_band_lo,
			duke_band_hi) };
}

Outcome deviation_proxy()
{
	ScanConfig c;
	c.base = { 0, 1, 2, 1 };
	for (const char * w : { "1", "2", "1-1" }) c.patterns.push_back(Pattern::parse(w));
	c.sequence = SequenceKind::Primes;
	c.bound = (1 << 14) - 1;
	const ConvergeResult r = run_converge(c);
	bool ok = true;
	std::string detail;
	for (const PatternSummary & s : r.summaries)
	{
		const size_t n = s.blocks.size();
		bool mono = n >= 3;
		for (size_t k = n - 2; mono && k < n; ++k) mono = s.blocks[k].median <= s.blocks[k - 1].median;
		ok = ok && mono && s.delta_hat > 0;
		detail += fmt::format("{}w={}: last medians {:.5f} {:.5f} {:.5f}, delta_hat {:.3f}", detail.empty() ? "" : "; ", s.pattern, s.blocks[n - 3].median,
			s.blocks[n - 2].median, s.blocks[n - 1].median, s.delta_hat);
	}
	return { ok, detail };
}

struct ArtinCalibration
{
	double density;
	size_t count;
	double threshold;	// for the 10^4 scan
};

ArtinCalibration artin_calibration()
{
	size_t hit = 0;
	for (uint64_t N = 2; N <= 1000; ++N) hit += double(oracle::pisano(N)) >= std::pow(double(N), artin_theta);
	const double d0 = double(hit) / 999.0;
	const double se = std::sqrt(d0 * (1 - d0) / 999.0);
	return { d0, 999, d0 - artin_sigmas * se };
}

Outcome artin_proxy()
{
	const ArtinCalibration cal = artin_calibration();
	ArtinConfig c;
	c.bound = 10000;
	const ArtinResult r = run_artin(c);
	double density = 0;
	for (const auto & [theta, d] : r.summary.density_at)
		if (theta == artin_theta) density = d;

	const std::set<uint64_t> exc(r.summary.exceptions.begin(), r.summary.exceptions.end());
	// Fibonacci moduli past 89 have order 2n or 4n, far below N^0.8
	std::vector<uint64_t> fib{ 1, 2 };
	while (fib.back() <= 10000) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
	int fib_needed = 0, fib_found = 0;
	for (const uint64_t F : fib)
	{
		if (F < 144 || F > 10000) continue;
		++fib_needed;
		fib_found += exc.count(F);
	}
	// the exception list matches the brute-force one below 10^3
	bool exc_match = true;
	for (uint64_t N = 2; N <= 1000; ++N)
		exc_match = exc_match && ((double(oracle::pisano(N)) < std::pow(double(N), artin_theta)) == (exc.count(N) == 1));

	const bool pass = density > cal.threshold && fib_found == fib_needed && exc_match;
	return { pass, fmt::format("density ord >= N^0.8 on N <= 1e4 = {:.4f}, threshold {:.4f} (brute-force density on N <= 1e3 = {:.4f} less {} s.e.); "
							   "{} exceptions; Fibonacci moduli 144..6765 listed {}/{}; exception list matches brute force below 1e3: {}",
					   density, cal.threshold, cal.density, artin_sigmas, exc.size(), fib_found, fib_needed, exc_match) };
}

Outcome determinism()
{
	ScanConfig c;
	c.base = { 0, 1, 2, 1 };
	for (const char * w : { "1", "2", "1-1" }) c.patterns.push_back(Pattern::parse(w));
	c.bound = 1 << 13;
	std::string conv[2], artin[2];
	for (int i = 0; i < 2; ++i)
	{
		c.workers = i == 0 ? 1 : 8;
		const ConvergeResult r = run_converge(c);
		conv[i] = converge_table(r.rows, OutputFormat::Csv) + converge_table(r.rows, OutputFormat::Json) + converge_summary(r.summaries);
		ArtinConfig a;
		a.bound = 5000;
		a.workers = c.workers;
		const ArtinResult ar = run_artin(a);
		artin[i] = artin_table(ar.rows, OutputFormat::Csv) + artin_table(ar.rows, OutputFormat::Json) + artin_summary(ar.summary);
	}
	return { conv[0] == conv[1] && artin[0] == artin[1],
		fmt::format("converge output identical for workers 1 and 8: {} ({} bytes); artin: {} ({} bytes)", conv[0] == conv[1], conv[0].size(),
			artin[0] == artin[1], artin[0].size()) };
}

const std::vector<Criterion> & criteria()
{
	static const std::vector<Criterion> all{
		{ 1, "continued-fraction correctness", 10, cf_correctness },
		{ 2, "Gauss-Kuzmin identities", 10, gauss_kuzmin_identities },
		{ 3, "suborder discriminant, membership and orders", 60, suborder_checks },
		{ 4, "regulator of Z[N x_D] from R(N)", 30, regulator_from_R },
		{ 5, "Pisano cross-oracle", 10, pisano_oracle },
		{ 6, "Hecke neighbor properties", 60, hecke_properties },
		{ 7, "class numbers", 5, class_numbers },
		{ 8, "total length trend", 300, duke_trend },
		{ 9, "deviation decay proxy", 300, deviation_proxy },
		{ 10, "large-order density proxy", 120, artin_proxy },
		{ 11, "determinism across worker counts", 60, determinism },
	};
	return all;
}

int calibrate()
{
	std::cout << "# criterion 8: median exponent over " << duke_sample << " fundamental D in [" << duke_lo << ", " << duke_hi << "]\n";
	std::vector<double> medians;
	for (uint64_t seed = 1001; seed <= 1020; ++seed)
	{
		const DukeSample s = duke_median(seed);
		medians.push_back(s.median);
		std::cout << fmt::format("seed {} median {:.6f}\n", seed, s.median);
	}
	double mean = 0, var = 0;
	for (const double m : medians) mean += m;
	mean /= double(medians.size());
	for (const double m : medians) var += (m - mean) * (m - mean);
	const double sd = std::sqrt(var / double(medians.size() - 1));
	const double lo = std::floor((mean - 4 * sd) * 100) / 100, hi = std::ceil((mean + 4 * sd) * 100) / 100;
	std::cout << fmt::format("mean {:.6f} sd {:.6f}\nband (mean +- 4 sd, rounded outward to 0.01): [{:.2f}, {:.2f}]\n", mean, sd, lo, hi);

	const ArtinCalibration a = artin_calibration();
	std::cout << fmt::format("# criterion 10: brute-force density of N <= 1000 with pisano(N) >= N^{} = {:.6f} ({} moduli)\n", artin_theta, a.density,
		a.count);
	std::cout << fmt::format("threshold for N <= 10^4: {:.6f} ({} binomial standard errors of the N <= 1000 estimate)\n", a.threshold, artin_sigmas);
	return 0;
}

}

int main(int argc, char ** argv)
{
	std::vector<std::string> args(argv + 1, argv + argc);
	if (args.size() == 1 && args[0] == "--calibrate") return calibrate();

	std::set<int> wanted;
	for (const std::string & a : args)
	{
		try
		{
			wanted.insert(std::stoi(a));
		}
		catch (const std::exception &)
		{
			std::cerr << "usage: acceptance [--calibrate | criterion ...]\n";
			return 2;
		}
	}

	int failed = 0, ran = 0;
	for (const Criterion & c : criteria())
	{
		if (!wanted.empty() && !wanted.count(c.id)) continue;
		++ran;
		const auto t0 = std::chrono::steady_clock::now();
		Outcome o;
		try
		{
			o = c.run();
		}
		catch (const std::exception & e)
		{
			o = { false, std::string("exception: ") + e.what() };
		}
		const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		const bool in_time = secs <= c.budget_s;
		const bool pass = o.pass && in_time;
		failed += !pass;
		std::cout << fmt::format("[{}] {:>2} {}: {} ({:.2f} s, budget {:.0f} s{})\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail, secs, c.budget_s,
			in_time ? "" : ", over budget");
	}
	if (ran == 0)
	{
		std::cerr << "no such criterion\n";
		return 2;
	}
	return failed == 0 ? 0 : 1;
}
