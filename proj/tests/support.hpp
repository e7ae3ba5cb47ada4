// Shared fixtures for the test suite.

#pragma once

#include <markloc/markloc.hpp>

#include <cmath>
#include <vector>

namespace testing_support {

using namespace markloc;

/// White image with the given marks drawn in black.
inline GrayImage draw(int width, int height, std::vector<Mark> const& marks, double stroke = default_stroke_width) {
	GrayImage img(width, height, 255);
	for (auto const& m : marks) {
		for (auto const& p : rasterize_mark(m, is_hollow(m.marker) ? std::optional<double>(stroke) : std::nullopt)) {
			if (img.in_bounds(p.x, p.y)) { img.set(p.x, p.y, 0); }
		}
	}
	return img;
}

/// Integer points within distance r of a real center, by plain enumeration.
inline std::vector<Pixel> disk_oracle(double cx, double cy, double r) {
	std::vector<Pixel> out;
	int const reach = static_cast<int>(std::ceil(r)) + 2;
	for (int y = static_cast<int>(cy) - reach; y <= static_cast<int>(cy) + reach; ++y) {
		for (int x = static_cast<int>(cx) - reach; x <= static_cast<int>(cx) + reach; ++x) {
			if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r + 1e-9) { out.push_back({x, y}); }
		}
	}
	return make_pixel_set(out);
}

inline BinaryRegion region_of(std::vector<Mark> const& marks, double stroke = default_stroke_width) {
	PixelSet all;
	for (auto const& m : marks) {
		all = set_union(all, rasterize_mark(m, is_hollow(m.marker) ? std::optional<double>(stroke) : std::nullopt));
	}
	return BinaryRegion::from_pixels(all);
}

} // namespace testing_support
