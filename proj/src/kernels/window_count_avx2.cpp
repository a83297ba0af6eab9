// Compiled with -mavx2; only reached when the CPU reports AVX2 support.

#include "qcf/kernels/window_count.hpp"

#include <immintrin.h>

namespace qcf::kernels {

uint64_t count_matches_avx2(const std::span<const uint32_t> stream, const size_t positions, const std::span<const uint32_t> pattern)
{
	const size_t k = pattern.size();
	const uint32_t * const s = stream.data();
	uint64_t count = 0;
	size_t i = 0;

	for (; i + 8 <= positions; i += 8)
	{
		__m256i mask = _mm256_cmpeq_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i *>(s + i)),
		                                  _mm256_set1_epi32(int(pattern[0])));
		for (size_t j = 1; j < k; ++j)
		{
			if (_mm256_testz_si256(mask, mask)) break;
			const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(s + i + j));
			mask = _mm256_and_si256(mask, _mm256_cmpeq_epi32(v, _mm256_set1_epi32(int(pattern[j]))));
		}
		count += unsigned(__builtin_popcount(unsigned(_mm256_movemask_ps(_mm256_castsi256_ps(mask)))));
	}

	if (i < positions) count += count_matches_scalar(stream.subspan(i), positions - i, pattern);
	return count;
}

}
