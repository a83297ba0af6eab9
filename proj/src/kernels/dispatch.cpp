#include "qcf/kernels/window_count.hpp"

#include <atomic>

#include "qcf/errors.hpp"

namespace qcf::kernels {

namespace {

Isa detect()
{
#if defined(__x86_64__) || defined(_M_X64)
	if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#elif defined(__aarch64__)
	return Isa::Neon;
#endif
	return Isa::Scalar;
}

// -1: auto-detect
std::atomic<int> forced{ -1 };

}

const char * isa_name(const Isa isa)
{
	switch (isa)
	{
		case Isa::Scalar: return "scalar";
		case Isa::Avx2: return "avx2";
		case Isa::Neon: return "neon";
	}
	return "?";
}

bool isa_available(const Isa isa)
{
	switch (isa)
	{
		case Isa::Scalar: return true;
#if defined(__x86_64__) || defined(_M_X64)
		case Isa::Avx2: return __builtin_cpu_supports("avx2");
#else
		case Isa::Avx2: return false;
#endif
#if defined(__aarch64__)
		case Isa::Neon: return true;
#else
		case Isa::Neon: return false;
#endif
	}
	return false;
}

Isa active_isa()
{
	static const Isa detected = detect();
	const int f = forced.load(std::memory_order_relaxed);
	return (f < 0) ? detected : Isa(f);
}

void force_isa(const std::optional<Isa> isa)
{
	if (isa) require(isa_available(*isa), "force_isa: instruction set not available on this CPU");
	forced.store(isa ? int(*isa) : -1, std::memory_order_relaxed);
}

uint64_t count_matches(const std::span<const uint32_t> stream, const size_t positions, const std::span<const uint32_t> pattern)
{
	require(!pattern.empty(), "count_matches: empty pattern");
	require(positions == 0 || stream.size() >= positions + pattern.size() - 1, "count_matches: stream too short");
	switch (active_isa())
	{
#if defined(__x86_64__) || defined(_M_X64)
		case Isa::Avx2: return count_matches_avx2(stream, positions, pattern);
#endif
#if defined(__aarch64__)
		case Isa::Neon: return count_matches_neon(stream, positions, pattern);
#endif
		default: return count_matches_scalar(stream, positions, pattern);
	}
}

}
