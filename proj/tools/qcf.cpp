// Command-line front end: expand, converge, artin, duke, unit, classno.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "qcf/class_geodesics.hpp"
#include "qcf/errors.hpp"
#include "qcf/experiments.hpp"
#include "qcf/quad_orders.hpp"
#include "qcf/surd.hpp"

namespace {

using namespace qcf;

constexpr int exit_usage = 2;
constexpr int exit_internal = 3;

struct SurdArgs
{
	std::string p = "0", r = "1", d = "2", q = "1";

	void add_to(CLI::App & cmd)
	{
		cmd.add_option("--p", p, "rational part numerator")->capture_default_str();
		cmd.add_option("--r", r, "coefficient of sqrt(d)")->capture_default_str();
		cmd.add_option("--d", d, "radicand")->capture_default_str();
		cmd.add_option("--q", q, "denominator")->capture_default_str();
	}

	SurdSpec spec() const { return { big(p, "--p"), big(r, "--r"), big(d, "--d"), big(q, "--q") }; }

	static BigInt big(const std::string & s, const char * name)
	{
		BigInt v;
		if (v.set_str(s, 10) != 0) throw InvalidArgument(fmt::format("{}: not an integer: '{}'", name, s));
		return v;
	}
};

struct OutputArgs
{
	std::string format = "csv";
	std::string output;
	std::string summary;
	unsigned workers = 1;

	void add_to(CLI::App & cmd)
	{
		cmd.add_option("--format", format, "csv or json")->check(CLI::IsMember({ "csv", "json" }))->capture_default_str();
		cmd.add_option("--output", output, "table destination (default stdout)");
		cmd.add_option("--summary", summary, "summary destination (default stderr)");
		cmd.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
	}

	OutputFormat fmt() const { return format == "json" ? OutputFormat::Json : OutputFormat::Csv; }

	void emit(const std::string & table, const std::string & summary_text) const
	{
		write(output, table, std::cout);
		write(summary, summary_text, std::cerr);
	}

	static void write(const std::string & path, const std::string & text, std::ostream & fallback)
	{
		if (path.empty())
		{
			fallback << text << std::flush;
			return;
		}
		std::ofstream out(path, std::ios::binary);
		if (!out) throw InvalidArgument("cannot open output file '" + path + "'");
		out << text;
	}
};

// Flat key=value lines become --key value arguments placed before the command-line ones.
// A key given on the command line wins; '#' starts a comment.
std::vector<std::string> merge_config(const int argc, char ** argv)
{
	std::vector<std::string> args(argv, argv + argc);
	std::string path;
	for (size_t i = 1; i < args.size(); ++i)
	{
		if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
		else if (args[i].starts_with("--config=")) path = args[i].substr(9);
	}
	if (path.empty() || args.size() < 2) return args;

	const auto given = [&](const std::string & key) {
		for (size_t i = 2; i < args.size(); ++i)
		{
			if (args[i] == "--" + key || args[i].starts_with("--" + key + "=")) return true;
		}
		return false;
	};
	const auto trim = [](std::string s) {
		const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
		return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
	};

	std::ifstream in(path);
	if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
	std::vector<std::string> extra;
	std::string line;
	size_t lineno = 0;
	while (std::getline(in, line))
	{
		++lineno;
		if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
		line = trim(line);
		if (line.empty()) continue;
		const auto eq = line.find('=');
		if (eq == std::string::npos) throw InvalidArgument(fmt::format("{}:{}: expected key=value", path, lineno));
		const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
		if (key.empty() || key == "config") throw InvalidArgument(fmt::format("{}:{}: bad key", path, lineno));
		if (given(key)) continue;
		if (value == "true" && key == "fundamental-only") extra.push_back("--" + key);
		else if (value != "false")
		{
			extra.push_back("--" + key);
			extra.push_back(value);
		}
	}
	args.insert(args.begin() + 2, extra.begin(), extra.end());
	return args;
}

SequenceKind parse_sequence(const std::string & s) { return s == "integers" ? SequenceKind::Integers : SequenceKind::Primes; }

}

int main(int argc, char ** argv)
{
	std::vector<std::string> args;
	try
	{
		args = merge_config(argc, argv);
	}
	catch (const InvalidArgument & e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	}
	std::string config_path;

	CLI::App app{ "Continued fractions of quadratic irrationals along arithmetic sequences" };
	app.require_subcommand(1);

	SurdArgs expand_surd;
	CLI::App * expand = app.add_subcommand("expand", "print the continued fraction of (p + r sqrt(d)) / q");
	expand_surd.add_to(*expand);

	SurdArgs conv_surd;
	OutputArgs conv_out;
	std::vector<std::string> conv_patterns;
	std::string conv_sequence = "primes";
	uint64_t conv_bound = 1024;
	uint64_t conv_coprime = 0;
	CLI::App * converge = app.add_subcommand("converge", "pattern-frequency deviations of N x");
	converge->add_option("--config", config_path, "key=value file; flags override it");
	conv_surd.add_to(*converge);
	converge->add_option("--pattern", conv_patterns, "digit pattern such as 1-1 (repeatable or comma-separated)")->delimiter(',');
	converge->add_option("--sequence", conv_sequence, "primes or integers")->check(CLI::IsMember({ "primes", "integers" }))->capture_default_str();
	converge->add_option("--bound", conv_bound, "largest N")->capture_default_str();
	converge->add_option("--coprime-to", conv_coprime, "skip N sharing a factor with this");
	conv_out.add_to(*converge);

	std::string artin_d = "5";
	std::string artin_sequence = "integers";
	uint64_t artin_bound = 1000;
	OutputArgs artin_out;
	CLI::App * artin = app.add_subcommand("artin", "orders of the fundamental unit matrix mod N");
	artin->add_option("--config", config_path, "key=value file; flags override it");
	artin->add_option("--d", artin_d, "squarefree m or fundamental discriminant")->capture_default_str();
	artin->add_option("--sequence", artin_sequence, "primes or integers")->check(CLI::IsMember({ "primes", "integers" }))->capture_default_str();
	artin->add_option("--bound", artin_bound, "largest N")->capture_default_str();
	artin_out.add_to(*artin);

	int64_t duke_min = 0, duke_max = 0;
	bool duke_fundamental = false;
	OutputArgs duke_out;
	CLI::App * duke = app.add_subcommand("duke", "class number times regulator over a discriminant range");
	duke->add_option("--config", config_path, "key=value file; flags override it");
	duke->add_option("--min", duke_min, "smallest discriminant")->required();
	duke->add_option("--max", duke_max, "largest discriminant")->required();
	duke->add_flag("--fundamental-only", duke_fundamental, "skip non-fundamental discriminants");
	duke_out.add_to(*duke);

	std::string unit_d;
	CLI::App * unit = app.add_subcommand("unit", "fundamental unit, regulator and unit norm");
	unit->add_option("--d", unit_d, "squarefree m or fundamental discriminant")->required();

	int64_t classno_disc = 0;
	bool classno_narrow = false;
	CLI::App * classno = app.add_subcommand("classno", "class number of the order of a discriminant");
	classno->add_option("--disc", classno_disc, "discriminant")->required();
	classno->add_flag("--narrow", classno_narrow, "narrow class number (rho-cycles of reduced forms)");

	try
	{
		std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
		app.parse(rev);
	}
	catch (const CLI::ParseError & e)
	{
		const int code = app.exit(e);
		return code == 0 ? 0 : exit_usage;
	}

	try
	{
		if (*expand)
		{
			const Surd x = expand_surd.spec().surd();
			const CFExpansion e = cf_expand(x);
			std::cout << format_expansion(e) << "\n";
			std::cout << "period length: " << e.period.size() << "\n";
		}
		else if (*converge)
		{
			ScanConfig cfg;
			cfg.base = conv_surd.spec();
			for (const std::string & w : conv_patterns) cfg.patterns.push_back(Pattern::parse(w));
			cfg.sequence = parse_sequence(conv_sequence);
			cfg.bound = conv_bound;
			if (converge->count("--coprime-to")) cfg.coprime_to = conv_coprime;
			cfg.format = conv_out.fmt();
			cfg.workers = conv_out.workers;
			const ConvergeResult r = run_converge(cfg);
			conv_out.emit(converge_table(r.rows, cfg.format), converge_summary(r.summaries));
		}
		else if (*artin)
		{
			ArtinConfig cfg;
			cfg.field = SurdArgs::big(artin_d, "--d");
			cfg.sequence = parse_sequence(artin_sequence);
			cfg.bound = artin_bound;
			cfg.format = artin_out.fmt();
			cfg.workers = artin_out.workers;
			const ArtinResult r = run_artin(cfg);
			artin_out.emit(artin_table(r.rows, cfg.format), artin_summary(r.summary));
		}
		else if (*duke)
		{
			const DukeResult r = run_duke(duke_min, duke_max, duke_fundamental, duke_out.workers);
			duke_out.emit(duke_table(r.rows, duke_out.fmt()), duke_summary(r.blocks));
		}
		else if (*unit)
		{
			const FieldData f = field_data(SurdArgs::big(unit_d, "--d"));
			std::cout << fmt::format("D: {}\n", f.D.get_str());
			// eps = a + b x_D; print it over sqrt(m)
			const bool halves = f.gen_trace == 1;
			const BigInt u = halves ? BigInt(2 * f.eps.a + f.eps.b) : f.eps.a;
			const std::string body = fmt::format("{} + {} sqrt({})", u.get_str(), f.eps.b.get_str(), f.m.get_str());
			std::cout << "eps: " << (halves ? "(" + body + ") / 2" : body) << "\n";
			std::cout << fmt::format("reg: {}\n", f.reg);
			std::cout << fmt::format("norm: {}\n", f.unit_norm);
		}
		else if (*classno)
		{
			std::cout << (classno_narrow ? narrow_class_number(classno_disc) : class_number(classno_disc)) << "\n";
		}
	}
	catch (const InvalidArgument & e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	}
	catch (const InvariantViolation & e)
	{
		std::cerr << "internal error: " << e.what() << "\n";
		return exit_internal;
	}
	catch (const std::exception & e)
	{
		std::cerr << "internal error: " << e.what() << "\n";
		return exit_internal;
	}
	return 0;
}
