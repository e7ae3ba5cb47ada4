// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "geometry.hpp"
#include "image.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace markloc {

/// Binarization threshold: a fixed luminance or Otsu's automatic choice.
struct Threshold {
	std::optional<int> value; // nullopt selects Otsu

	[[nodiscard]] static Threshold automatic() { return {}; }
	[[nodiscard]] static Threshold fixed(int v) { return {v}; }
};

/// Otsu's threshold over the 256-bin histogram. Pixels with luminance strictly
/// below the returned value form the dark class. When several splits reach the
/// maximum between-class variance the midpoint of that plateau is used; an
/// image with a single luminance level yields 128.
[[nodiscard]] inline int otsu_threshold(GrayImage const& image) {
	std::array<double, 256> hist{};
	for (auto v : image.values()) { hist[v] += 1.0; }
	double const total = static_cast<double>(image.values().size());
	double sum_all = 0.0;
	for (int i = 0; i < 256; ++i) { sum_all += i * hist[i]; }

	double w0 = 0.0;
	double sum0 = 0.0;
	double best = -1.0;
	int first_best = -1;
	int last_best = -1;
	for (int k = 0; k < 255; ++k) {
		w0 += hist[k];
		sum0 += k * hist[k];
		double const w1 = total - w0;
		if (w0 == 0.0 || w1 == 0.0) { continue; }
		double const mu0 = sum0 / w0;
		double const mu1 = (sum_all - sum0) / w1;
		double const between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
		if (between > best) {
			best = between;
			first_best = last_best = k;
		} else if (between == best && last_best == k - 1) {
			last_best = k;
		}
	}
	if (first_best < 0) { return 128; }
	// split "class0 = values <= k" means threshold k+1
	return (first_best + last_best) / 2 + 1;
}

/// Foreground pixels: luminance strictly below the threshold (dark marks on a
/// light background). With `invert`, luminance is flipped first.
[[nodiscard]] inline PixelSet binarize(GrayImage const& image, Threshold threshold, bool invert = false) {
	if (image.empty()) { throw std::invalid_argument("binarize: empty image"); }
	GrayImage const* src = &image;
	GrayImage flipped;
	if (invert) {
		std::vector<std::uint8_t> values(image.values());
		for (auto& v : values) { v = static_cast<std::uint8_t>(255 - v); }
		flipped = GrayImage(image.width(), image.height(), std::move(values));
		src = &flipped;
	}
	int const t = threshold.value ? *threshold.value : otsu_threshold(*src);
	PixelSet out;
	for (int y = 0; y < src->height(); ++y) {
		for (int x = 0; x < src->width(); ++x) {
			if (src->at(x, y) < t) { out.push_back({x, y}); }
		}
	}
	return out; // already in raster order
}

/// A maximal 8-connected set of foreground pixels.
struct BinaryRegion {
	PixelSet pixels;
	BoundingBox box;

	[[nodiscard]] std::size_t size() const { return pixels.size(); }

	[[nodiscard]] static BinaryRegion from_pixels(std::vector<Pixel> pixels) {
		if (pixels.empty()) { throw std::invalid_argument("BinaryRegion: empty pixel set"); }
		BinaryRegion r;
		r.pixels = make_pixel_set(std::move(pixels));
		r.box = bounding_box(r.pixels);
		return r;
	}
};

/// Splits a foreground set into 8-connected components, ordered by the
/// (min_y, min_x) corner of their bounding boxes.
[[nodiscard]] inline std::vector<BinaryRegion> connected_regions(PixelSet foreground) {
	std::vector<BinaryRegion> regions;
	if (foreground.empty()) { return regions; }
	normalize(foreground);
	BoundingBox const box = bounding_box(foreground);
	int const w = box.width();
	int const h = box.height();
	// 0 = background, 1 = unvisited foreground, 2 = visited
	std::vector<std::uint8_t> grid(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
	auto cell = [&](int x, int y) -> std::uint8_t& {
		return grid[static_cast<std::size_t>(y - box.min_y) * static_cast<std::size_t>(w) +
					static_cast<std::size_t>(x - box.min_x)];
	};
	for (auto const& p : foreground) { cell(p.x, p.y) = 1; }

	std::vector<Pixel> stack;
	for (auto const& seed : foreground) {
		if (cell(seed.x, seed.y) != 1) { continue; }
		std::vector<Pixel> component;
		cell(seed.x, seed.y) = 2;
		stack.push_back(seed);
		while (!stack.empty()) {
			Pixel const p = stack.back();
			stack.pop_back();
			component.push_back(p);
			for (int dy = -1; dy <= 1; ++dy) {
				for (int dx = -1; dx <= 1; ++dx) {
					int const nx = p.x + dx;
					int const ny = p.y + dy;
					if (!box.contains({nx, ny})) { continue; }
					if (cell(nx, ny) == 1) {
						cell(nx, ny) = 2;
						stack.push_back({nx, ny});
					}
				}
			}
		}
		regions.push_back(BinaryRegion::from_pixels(std::move(component)));
	}
	// seeds are visited in raster order so ties on the box corner keep first-pixel order
	std::stable_sort(regions.begin(), regions.end(), [](BinaryRegion const& a, BinaryRegion const& b) {
		return a.box.min_y != b.box.min_y ? a.box.min_y < b.box.min_y : a.box.min_x < b.box.min_x;
	});
	return regions;
}

/// Drops regions with fewer than `min_pixels` pixels.
[[nodiscard]] inline std::vector<BinaryRegion> discard_small(std::vector<BinaryRegion> regions, std::size_t min_pixels) {
	std::erase_if(regions, [&](BinaryRegion const& r) { return r.size() < min_pixels; });
	return regions;
}

/// The pixels plus every background pixel they enclose: background inside the
/// bounding box that is not 4-connected to the area outside it.
[[nodiscard]] inline PixelSet fill_holes(PixelSet const& pixels) {
	if (pixels.empty()) { return {}; }
	BoundingBox const box = bounding_box(pixels);
	int const w = box.width() + 2;
	int const h = box.height() + 2;
	std::vector<std::uint8_t> cell(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0); // 1 fg, 2 outside
	auto idx = [&](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x); };
	for (auto const& p : pixels) { cell[idx(p.x - box.min_x + 1, p.y - box.min_y + 1)] = 1; }
	std::vector<std::pair<int, int>> stack{{0, 0}};
	cell[0] = 2;
	while (!stack.empty()) {
		auto const [x, y] = stack.back();
		stack.pop_back();
		constexpr int dx[] = {1, -1, 0, 0};
		constexpr int dy[] = {0, 0, 1, -1};
		for (int k = 0; k < 4; ++k) {
			int const nx = x + dx[k];
			int const ny = y + dy[k];
			if (nx < 0 || ny < 0 || nx >= w || ny >= h || cell[idx(nx, ny)] != 0) { continue; }
			cell[idx(nx, ny)] = 2;
			stack.emplace_back(nx, ny);
		}
	}
	PixelSet out;
	for (int y = 1; y + 1 < h; ++y) {
		for (int x = 1; x + 1 < w; ++x) {
			if (cell[idx(x, y)] != 2) { out.push_back({x - 1 + box.min_x, y - 1 + box.min_y}); }
		}
	}
	return out;
}

} // namespace markloc
