#include "qcf/kernels/window_count.hpp"

namespace qcf::kernels {

uint64_t count_matches_scalar(const std::span<const uint32_t> stream, const size_t positions, const std::span<const uint32_t> pattern)
{
	const size_t k = pattern.size();
	uint64_t count = 0;
	for (size_t i = 0; i < positions; ++i)
	{
		size_t j = 0;
		while (j < k && stream[i + j] == pattern[j]) ++j;
		count += (j == k) ? 1 : 0;
	}
	return count;
}

}
