#include "qcf/kernels/window_count.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace qcf::kernels {

uint64_t count_matches_neon(const std::span<const uint32_t> stream, const size_t positions, const std::span<const uint32_t> pattern)
{
	const size_t k = pattern.size();
	const uint32_t * const s = stream.data();
	uint64_t count = 0;
	size_t i = 0;

	for (; i + 4 <= positions; i += 4)
	{
		uint32x4_t mask = vceqq_u32(vld1q_u32(s + i), vdupq_n_u32(pattern[0]));
		for (size_t j = 1; j < k; ++j)
		{
			if (vmaxvq_u32(mask) == 0) break;
			mask = vandq_u32(mask, vceqq_u32(vld1q_u32(s + i + j), vdupq_n_u32(pattern[j])));
		}
		// lanes are 0 or ~0; shift to 0/1 and sum
		count += vaddvq_u32(vshrq_n_u32(mask, 31));
	}

	if (i < positions) count += count_matches_scalar(stream.subspan(i), positions - i, pattern);
	return count;
}

}

#endif
