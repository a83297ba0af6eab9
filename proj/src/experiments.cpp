#include "qcf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>
#include "json.hpp"

#include "qcf/arith.hpp"
#include "qcf/class_geodesics.hpp"
#include "qcf/errors.hpp"
#include "qcf/parallel.hpp"
#include "qcf/quad_orders.hpp"

namespace qcf {

namespace {

using nlohmann::json;

unsigned dyadic_block(const uint64_t n) { return unsigned(63 - __builtin_clzll(n)); }

json big_json(const BigInt & n)
{
	if (fits_u64(n)) return to_u64(n);
	return n.get_str();
}

std::string fmt_double(const double v) { return fmt::format("{}", v); }

}

double median(std::vector<double> v)
{
	require(!v.empty(), "median of an empty list");
	std::sort(v.begin(), v.end());
	const size_t n = v.size();
	return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void ScanConfig::validate() const
{
	require(bound >= 2, "scan: bound must be at least 2");
	require(bound < (uint64_t(1) << 32), "scan: bound must be below 2^32");
	require(!patterns.empty(), "scan: at least one pattern is required");
	require(workers >= 1, "scan: workers must be positive");
	base.surd();
}

std::vector<uint64_t> scan_moduli(const SequenceKind kind, const uint64_t bound, const std::optional<uint64_t> coprime_to)
{
	std::vector<uint64_t> ns;
	if (kind == SequenceKind::Primes) ns = primes_up_to(bound);
	else for (uint64_t N = 2; N <= bound; ++N) ns.push_back(N);
	if (coprime_to)
	{
		std::erase_if(ns, [c = *coprime_to](const uint64_t N) { return gcd_u64(N, c) != 1; });
	}
	return ns;
}

ConvergeResult run_converge(const ScanConfig & cfg)
{
	cfg.validate();
	const Surd x = cfg.base.surd();
	const FieldData field = field_data(squarefree_part(x.D()));
	std::vector<LogRatio> consts;
	for (const Pattern & w : cfg.patterns) consts.push_back(c_w(w));

	const std::vector<uint64_t> ns = scan_moduli(cfg.sequence, cfg.bound, cfg.coprime_to);
	const size_t np = cfg.patterns.size();
	std::vector<DeviationRow> rows(ns.size() * np);

	parallel_for_index(ns.size(), cfg.workers, [&](const size_t i) {
		const uint64_t N = ns[i];
		const Surd xn = scale(x, from_u64(N), 1);
		const DigitStream stream(cf_expand(xn));
		const BigInt l = conductor_of_surd(field, xn);
		ensure(fits_u64(l) && l < (uint64_t(1) << 32), "converge: conductor of N x exceeds 2^32");
		const double reg = field.reg * double(unit_index(field, to_u64(l)));
		const BigInt disc = l * l * field.D;
		const double exponent = std::log(reg) / (0.5 * std::log(disc.get_d()));
		for (size_t j = 0; j < np; ++j)
		{
			const Rational freq = pattern_frequency(stream, cfg.patterns[j]);
			DeviationRow r;
			r.N = N;
			r.is_prime = is_prime_u64(N);
			r.period_length = stream.period_length();
			r.pattern = cfg.patterns[j].str();
			r.freq_num = freq.get_num();
			r.freq_den = freq.get_den();
			r.c_w = consts[j].value();
			r.deviation = deviation(freq, consts[j]);
			r.reg_proxy = std::log(double(r.period_length));
			r.disc = disc;
			r.reg = reg;
			r.reg_disc_exponent = exponent;

			BigInt g;
			mpz_gcd(g.get_mpz_t(), r.freq_num.get_mpz_t(), r.freq_den.get_mpz_t());
			ensure(g == 1, "converge: frequency not in lowest terms");
			const double recomputed = std::abs(r.freq_num.get_d() / r.freq_den.get_d() - r.c_w);
			ensure(std::abs(recomputed - r.deviation) <= 1e-12, "converge: deviation does not match frequency and c_w");
			rows[i * np + j] = std::move(r);
		}
	});

	ConvergeResult res;
	for (size_t j = 0; j < np; ++j)
	{
		PatternSummary s;
		s.pattern = cfg.patterns[j].str();
		std::map<unsigned, std::vector<double>> by_block;
		std::vector<double> lx, ly;
		s.zero_rows = 0;
		for (size_t i = 0; i < ns.size(); ++i)
		{
			const DeviationRow & r = rows[i * np + j];
			by_block[dyadic_block(r.N)].push_back(r.deviation);
			// c_w is irrational and freq rational, so this branch should never be taken
			if (r.deviation == 0) { ++s.zero_rows; continue; }
			lx.push_back(std::log(double(r.N)));
			ly.push_back(std::log(r.deviation));
		}
		for (const auto & [k, devs] : by_block) s.blocks.push_back({ k, devs.size(), median(devs) });

		s.fit_rows = lx.size();
		s.delta_hat = std::nan("");
		s.C_hat = std::nan("");
		s.fraction_below = std::nan("");
		if (lx.size() >= 2)
		{
			const double n = double(lx.size());
			const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n, my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
			double sxx = 0, sxy = 0;
			for (size_t i = 0; i < lx.size(); ++i)
			{
				sxx += (lx[i] - mx) * (lx[i] - mx);
				sxy += (lx[i] - mx) * (ly[i] - my);
			}
			if (sxx > 0)
			{
				const double slope = sxy / sxx;
				s.delta_hat = -slope;
				s.C_hat = std::exp(my - slope * mx);
				size_t below = 0;
				for (size_t i = 0; i < ns.size(); ++i)
				{
					const DeviationRow & r = rows[i * np + j];
					if (r.deviation < std::pow(double(r.N), -s.delta_hat / 2)) ++below;
				}
				s.fraction_below = double(below) / double(ns.size());
			}
		}
		res.summaries.push_back(std::move(s));
	}
	res.rows = std::move(rows);
	return res;
}

std::string converge_table(const std::vector<DeviationRow> & rows, const OutputFormat format)
{
	if (format == OutputFormat::Json)
	{
		json arr = json::array();
		for (const DeviationRow & r : rows)
		{
			arr.push_back({ { "N", r.N }, { "is_prime", r.is_prime }, { "period_length", r.period_length }, { "pattern", r.pattern },
				{ "freq_num", big_json(r.freq_num) }, { "freq_den", big_json(r.freq_den) }, { "c_w", r.c_w }, { "deviation", r.deviation },
				{ "disc", big_json(r.disc) }, { "reg_disc_exponent", r.reg_disc_exponent } });
		}
		return arr.dump(1) + "\n";
	}
	std::string out = "N,is_prime,period_length,pattern,freq_num,freq_den,c_w,deviation,disc,reg_disc_exponent\n";
	for (const DeviationRow & r : rows)
	{
		out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.N, r.is_prime ? 1 : 0, r.period_length, r.pattern, r.freq_num.get_str(),
			r.freq_den.get_str(), fmt_double(r.c_w), fmt_double(r.deviation), r.disc.get_str(), fmt_double(r.reg_disc_exponent));
	}
	return out;
}

std::string converge_summary(const std::vector<PatternSummary> & summaries)
{
	std::string out;
	for (const PatternSummary & s : summaries)
	{
		out += fmt::format("pattern {}\n", s.pattern);
		for (const BlockMedian & b : s.blocks) out += fmt::format("  block [2^{}, 2^{}): n={} median_deviation={}\n", b.k, b.k + 1, b.count, fmt_double(b.median));
		out += fmt::format("  fit: delta_hat={} C_hat={} rows={} zero_rows_excluded={}\n", fmt_double(s.delta_hat), fmt_double(s.C_hat), s.fit_rows, s.zero_rows);
		out += fmt::format("  fraction with deviation < N^(-delta_hat/2): {}\n", fmt_double(s.fraction_below));
	}
	return out;
}

ArtinResult run_artin(const ArtinConfig & cfg)
{
	require(cfg.bound >= 2, "artin: bound must be at least 2");
	require(cfg.workers >= 1, "artin: workers must be positive");
	const FieldData f = field_data(cfg.field);
	ArtinResult r;
	r.rows = scan_orders(f, cfg.bound, cfg.sequence, cfg.workers);
	r.summary = summarize_orders(r.rows);
	return r;
}

ArtinSummary summarize_orders(const std::vector<OrderRecord> & rows)
{
	ArtinSummary s;
	for (const double theta : { 0.7, 0.8, 0.9 })
	{
		size_t hit = 0;
		for (const OrderRecord & r : rows) hit += (double(r.ord) >= std::pow(double(r.N), theta)) ? 1 : 0;
		s.density_at.push_back({ theta, rows.empty() ? 0.0 : double(hit) / double(rows.size()) });
	}
	size_t primes = 0, maxed = 0;
	for (const OrderRecord & r : rows)
	{
		if (r.N > 2 && (r.split == SplitType::Split || r.split == SplitType::Inert))
		{
			++primes;
			maxed += r.is_max ? 1 : 0;
		}
		if (double(r.ord) < std::pow(double(r.N), 0.8)) s.exceptions.push_back(r.N);
	}
	s.prime_count = primes;
	s.max_density = (primes == 0) ? 0.0 : double(maxed) / double(primes);
	return s;
}

std::string artin_table(const std::vector<OrderRecord> & rows, const OutputFormat format)
{
	if (format == OutputFormat::Json)
	{
		json arr = json::array();
		for (const OrderRecord & r : rows)
		{
			arr.push_back({ { "N", r.N }, { "ord", r.ord }, { "exponent", r.exponent }, { "split_type", split_name(r.split) }, { "is_max", r.is_max } });
		}
		return arr.dump(1) + "\n";
	}
	std::string out = "N,ord,exponent,split_type,is_max\n";
	for (const OrderRecord & r : rows)
	{
		out += fmt::format("{},{},{},{},{}\n", r.N, r.ord, fmt_double(r.exponent), split_name(r.split), r.is_max ? 1 : 0);
	}
	return out;
}

std::string artin_summary(const ArtinSummary & s)
{
	std::string out;
	for (const auto & [theta, d] : s.density_at) out += fmt::format("density ord >= N^{}: {}\n", theta, fmt_double(d));
	out += fmt::format("odd unramified primes: {} maximal-order density: {}\n", s.prime_count, fmt_double(s.max_density));
	out += fmt::format("exceptions (ord < N^0.8): {}\n", s.exceptions.size());
	std::string list;
	for (const uint64_t n : s.exceptions) list += (list.empty() ? "" : " ") + std::to_string(n);
	if (!list.empty()) out += "  " + list + "\n";
	return out;
}

DukeResult run_duke(const std::vector<int64_t> & discs, const unsigned workers)
{
	DukeResult res;
	res.rows.resize(discs.size());
	parallel_for_index(discs.size(), workers, [&](const size_t i) {
		const TotalLength t = total_length(discs[i]);
		res.rows[i] = { discs[i], t.h, t.reg, t.total, t.exponent };
	});
	std::map<unsigned, std::vector<double>> by_block;
	for (const DukeRow & r : res.rows) by_block[dyadic_block(uint64_t(r.disc))].push_back(r.exponent);
	for (const auto & [k, ex] : by_block)
	{
		const double n = double(ex.size());
		const double mean = std::accumulate(ex.begin(), ex.end(), 0.0) / n;
		double var = 0;
		for (const double e : ex) var += (e - mean) * (e - mean);
		res.blocks.push_back({ k, ex.size(), mean, std::sqrt(var / n), *std::min_element(ex.begin(), ex.end()), *std::max_element(ex.begin(), ex.end()) });
	}
	return res;
}

DukeResult run_duke(const int64_t lo, const int64_t hi, const bool fundamental_only, const unsigned workers)
{
	require(lo >= 2 && lo <= hi, "duke: empty discriminant range");
	std::vector<int64_t> discs;
	for (int64_t d = lo; d <= hi; ++d)
	{
		if (d % 4 != 0 && d % 4 != 1) continue;
		if (is_square(from_i64(d))) continue;
		if (fundamental_only && !is_fundamental(d)) continue;
		discs.push_back(d);
	}
	require(!discs.empty(), "duke: no valid discriminant in range");
	return run_duke(discs, workers);
}

std::string duke_table(const std::vector<DukeRow> & rows, const OutputFormat format)
{
	if (format == OutputFormat::Json)
	{
		json arr = json::array();
		for (const DukeRow & r : rows) arr.push_back({ { "disc", r.disc }, { "h", r.h }, { "reg", r.reg }, { "total", r.total }, { "exponent", r.exponent } });
		return arr.dump(1) + "\n";
	}
	std::string out = "disc,h,reg,total,exponent\n";
	for (const DukeRow & r : rows) out += fmt::format("{},{},{},{},{}\n", r.disc, r.h, fmt_double(r.reg), fmt_double(r.total), fmt_double(r.exponent));
	return out;
}

std::string duke_summary(const std::vector<DukeBlock> & blocks)
{
	std::string out;
	for (const DukeBlock & b : blocks)
	{
		out += fmt::format("block [2^{}, 2^{}): n={} mean_exponent={} spread={} min={} max={}\n", b.k, b.k + 1, b.count, fmt_double(b.mean),
			fmt_double(b.spread), fmt_double(b.min), fmt_double(b.max));
	}
	return out;
}

std::string format_expansion(const CFExpansion & e)
{
	const auto join = [](const std::vector<BigInt> & v) {
		std::string s;
		for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
		return s;
	};
	return fmt::format("preperiod: [{}]; period: [{}]", join(e.preperiod), join(e.period));
}

}
