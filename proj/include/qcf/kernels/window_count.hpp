#pragma once

// Cyclic pattern counting over continued-fraction digit streams.
// A scalar reference kernel plus vector variants picked at runtime from the host CPU.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace qcf::kernels {

// Digits that do not fit in 32 bits are stored as this sentinel; patterns never contain it.
inline constexpr uint32_t big_digit = UINT32_MAX;

enum class Isa { Scalar, Avx2, Neon };

const char * isa_name(Isa isa);
bool isa_available(Isa isa);

// The variant count_matches() dispatches to. force_isa() overrides it (tests, benchmarks);
// std::nullopt restores auto-detection.
Isa active_isa();
void force_isa(std::optional<Isa> isa);

// Number of positions i in [0, positions) such that stream[i + j] == pattern[j] for every j.
// Requires stream.size() >= positions + pattern.size() - 1 and a nonempty pattern.
uint64_t count_matches(std::span<const uint32_t> stream, size_t positions, std::span<const uint32_t> pattern);

uint64_t count_matches_scalar(std::span<const uint32_t> stream, size_t positions, std::span<const uint32_t> pattern);
#if defined(__x86_64__) || defined(_M_X64)
uint64_t count_matches_avx2(std::span<const uint32_t> stream, size_t positions, std::span<const uint32_t> pattern);
#endif
#if defined(__aarch64__)
uint64_t count_matches_neon(std::span<const uint32_t> stream, size_t positions, std::span<const uint32_t> pattern);
#endif

}
