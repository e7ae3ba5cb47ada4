// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace markloc {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// processed exactly once; results must be written to per-index slots so the
/// output does not depend on scheduling. The first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
	unsigned const workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
	if (workers <= 1) {
		for (std::size_t i = 0; i < count; ++i) { fn(i); }
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr error;
	std::mutex error_mutex;
	{
		std::vector<std::jthread> pool;
		pool.reserve(workers);
		for (unsigned w = 0; w < workers; ++w) {
			pool.emplace_back([&] {
				for (std::size_t i = next++; i < count; i = next++) {
					try {
						fn(i);
					} catch (...) {
						std::lock_guard lock(error_mutex);
						if (!error) { error = std::current_exception(); }
					}
				}
			});
		}
	}
	if (error) { std::rethrow_exception(error); }
}

} // namespace markloc
