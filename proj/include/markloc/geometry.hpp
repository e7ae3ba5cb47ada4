// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace markloc {

/// Integer pixel coordinate. The pixel's center is the point (x, y).
struct Pixel {
	int x{};
	int y{};

	friend constexpr bool operator==(Pixel const&, Pixel const&) = default;
	/// Raster order: row-major, top to bottom.
	friend constexpr bool operator<(Pixel const& a, Pixel const& b) {
		return a.y != b.y ? a.y < b.y : a.x < b.x;
	}
};

struct Point2 {
	double x{};
	double y{};

	friend constexpr bool operator==(Point2 const&, Point2 const&) = default;
};

struct BoundingBox {
	int min_x{};
	int min_y{};
	int max_x{};
	int max_y{};

	[[nodiscard]] constexpr int width() const { return max_x - min_x + 1; }
	[[nodiscard]] constexpr int height() const { return max_y - min_y + 1; }
	[[nodiscard]] constexpr bool contains(Pixel p) const {
		return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
	}
	friend constexpr bool operator==(BoundingBox const&, BoundingBox const&) = default;
};

/// A set of pixels kept as a sorted, duplicate-free vector (raster order).
using PixelSet = std::vector<Pixel>;

/// Restores the PixelSet invariant after unordered insertion.
inline void normalize(PixelSet& set) {
	std::sort(set.begin(), set.end());
	set.erase(std::unique(set.begin(), set.end()), set.end());
}

[[nodiscard]] inline PixelSet make_pixel_set(std::vector<Pixel> pixels) {
	normalize(pixels);
	return pixels;
}

[[nodiscard]] inline BoundingBox bounding_box(std::span<Pixel const> pixels) {
	BoundingBox box{pixels.front().x, pixels.front().y, pixels.front().x, pixels.front().y};
	for (auto const& p : pixels) {
		box.min_x = std::min(box.min_x, p.x);
		box.min_y = std::min(box.min_y, p.y);
		box.max_x = std::max(box.max_x, p.x);
		box.max_y = std::max(box.max_y, p.y);
	}
	return box;
}

[[nodiscard]] inline PixelSet set_union(std::span<Pixel const> a, std::span<Pixel const> b) {
	PixelSet out;
	out.reserve(a.size() + b.size());
	std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
	return out;
}

[[nodiscard]] inline bool contains(std::span<Pixel const> set, Pixel p) {
	return std::binary_search(set.begin(), set.end(), p);
}

/// |a ∩ b| for two sorted pixel sets.
[[nodiscard]] inline std::size_t intersection_size(std::span<Pixel const> a, std::span<Pixel const> b) {
	std::size_t count = 0;
	auto i = a.begin();
	auto j = b.begin();
	while (i != a.end() && j != b.end()) {
		if (*i < *j) {
			++i;
		} else if (*j < *i) {
			++j;
		} else {
			++count;
			++i;
			++j;
		}
	}
	return count;
}

} // namespace markloc
