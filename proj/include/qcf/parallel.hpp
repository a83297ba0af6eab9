#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qcf {

// Calls fn(i) for every i in [0, count) on up to `workers` threads. Work is handed out by index,
// so callers that write into slot i of a presized vector get output independent of the worker count.
// The first exception thrown by any call is rethrown on the calling thread.
template <typename Fn>
void parallel_for_index(const size_t count, const unsigned workers, Fn && fn)
{
	const unsigned n_threads = unsigned(std::min<size_t>(std::max(1u, workers), std::max<size_t>(count, 1)));
	if (n_threads <= 1)
	{
		for (size_t i = 0; i < count; ++i) fn(i);
		return;
	}

	std::atomic<size_t> next{ 0 };
	std::atomic<bool> failed{ false };
	std::exception_ptr error;
	std::mutex error_mutex;
	std::vector<std::jthread> pool;
	pool.reserve(n_threads);
	for (unsigned t = 0; t < n_threads; ++t)
	{
		pool.emplace_back([&]() {
			for (size_t i = next++; i < count && !failed; i = next++)
			{
				try { fn(i); }
				catch (...)
				{
					const std::lock_guard lock(error_mutex);
					if (!error) error = std::current_exception();
					failed = true;
				}
			}
		});
	}
	pool.clear();
	if (error) std::rethrow_exception(error);
}

}
