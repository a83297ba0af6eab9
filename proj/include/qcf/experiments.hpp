#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "gauss_kuzmin.hpp"
#include "matrix_orders.hpp"
#include "surd.hpp"

namespace qcf {

enum class OutputFormat { Csv, Json };

// (p + r sqrt(d)) / q as given on the command line.
struct SurdSpec
{
	BigInt p = 0, r = 1, d = 2, q = 1;

	Surd surd() const { return make_surd(p, r, d, q); }
};

struct ScanConfig
{
	SurdSpec base;
	std::vector<Pattern> patterns;
	SequenceKind sequence = SequenceKind::Primes;
	uint64_t bound = 1024;
	std::optional<uint64_t> coprime_to;	// skip N sharing a factor with it
	OutputFormat format = OutputFormat::Csv;
	unsigned workers = 1;

	void validate() const;
};

struct DeviationRow
{
	uint64_t N;
	bool is_prime;
	uint64_t period_length;
	std::string pattern;
	BigInt freq_num, freq_den;
	double c_w;
	double deviation;
	double reg_proxy;	// ln period_length
	BigInt disc;		// of O_{N x}
	double reg;			// of O_{N x}
	double reg_disc_exponent;	// ln reg / ln sqrt(disc)
};

struct BlockMedian
{
	unsigned k;	// N in [2^k, 2^(k+1))
	size_t count;
	double median;
};

struct PatternSummary
{
	std::string pattern;
	std::vector<BlockMedian> blocks;
	double delta_hat;	// ln dev ~ ln C - delta ln N
	double C_hat;
	size_t fit_rows;
	size_t zero_rows;	// excluded from the fit
	double fraction_below;	// rows with dev < N^(-delta_hat / 2)
};

struct ConvergeResult
{
	std::vector<DeviationRow> rows;	// sorted by (N, pattern order in the config)
	std::vector<PatternSummary> summaries;
};

std::vector<uint64_t> scan_moduli(SequenceKind kind, uint64_t bound, std::optional<uint64_t> coprime_to);

ConvergeResult run_converge(const ScanConfig & cfg);
std::string converge_table(const std::vector<DeviationRow> & rows, OutputFormat format);
std::string converge_summary(const std::vector<PatternSummary> & summaries);

struct ArtinConfig
{
	BigInt field = 5;
	SequenceKind sequence = SequenceKind::Integers;
	uint64_t bound = 1000;
	OutputFormat format = OutputFormat::Csv;
	unsigned workers = 1;
};

struct ArtinSummary
{
	std::vector<std::pair<double, double>> density_at;	// (theta, fraction with ord >= N^theta)
	size_t prime_count;
	double max_density;	// among odd unramified primes: fraction with is_max
	std::vector<uint64_t> exceptions;	// ord < N^0.8
};

struct ArtinResult
{
	std::vector<OrderRecord> rows;
	ArtinSummary summary;
};

ArtinResult run_artin(const ArtinConfig & cfg);
ArtinSummary summarize_orders(const std::vector<OrderRecord> & rows);
std::string artin_table(const std::vector<OrderRecord> & rows, OutputFormat format);
std::string artin_summary(const ArtinSummary & s);

struct DukeRow
{
	int64_t disc;
	uint64_t h;
	double reg, total, exponent;
};

struct DukeBlock
{
	unsigned k;	// disc in [2^k, 2^(k+1))
	size_t count;
	double mean, spread, min, max;	// spread: standard deviation
};

struct DukeResult
{
	std::vector<DukeRow> rows;
	std::vector<DukeBlock> blocks;
};

// Rows for every valid discriminant in [lo, hi]; throws InvalidArgument on an empty range.
DukeResult run_duke(int64_t lo, int64_t hi, bool fundamental_only, unsigned workers = 1);
DukeResult run_duke(const std::vector<int64_t> & discs, unsigned workers = 1);
std::string duke_table(const std::vector<DukeRow> & rows, OutputFormat format);
std::string duke_summary(const std::vector<DukeBlock> & blocks);

// "preperiod: [1]; period: [2]"
std::string format_expansion(const CFExpansion & e);

double median(std::vector<double> v);

}
