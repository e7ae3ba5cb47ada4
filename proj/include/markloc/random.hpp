// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include <cstdint>
#include <random>

namespace markloc {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
	z += 0x9e3779b97f4a7c15ULL;
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

/// Stable child seed for stream `index` of `parent`.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
	return mix64(mix64(parent) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

/// FNV-1a 64 over a byte range.
template <typename Range>
[[nodiscard]] std::uint64_t fnv1a64(Range const& bytes, std::uint64_t hash = 0xcbf29ce484222325ULL) {
	for (auto b : bytes) {
		hash ^= static_cast<std::uint8_t>(b);
		hash *= 0x100000001b3ULL;
	}
	return hash;
}

} // namespace markloc
