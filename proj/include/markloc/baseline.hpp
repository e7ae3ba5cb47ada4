// markloc - overlapping scatter mark localization
// Requirements: C++20
//
// Filter-based comparator: smooth the foreground indicator with a Gaussian
// whose size comes from isolated marks, then pick local maxima.

#pragma once

#include "locator.hpp"
#include "raster.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace markloc {

struct FilterConfig {
	std::optional<int> kernel_size; // nullopt: derived from single-mark size via RSMA
	double peak_rel_threshold = 0.5;
	std::optional<double> peak_min_distance; // default k/2
	int fallback_kernel = 11;				 // used when no single mark is found
};

/// Normalized 1-D Gaussian taps; the support is k rounded up to odd, σ = k/4.
[[nodiscard]] inline std::vector<double> gaussian_taps(int k) {
	if (k < 3) { throw std::invalid_argument("gaussian kernel size must be >= 3"); }
	int const support = k % 2 == 0 ? k + 1 : k;
	double const sigma = k / 4.0;
	int const half = support / 2;
	std::vector<double> taps(static_cast<std::size_t>(support));
	double sum = 0.0;
	for (int i = -half; i <= half; ++i) {
		double const v = std::exp(-(i * i) / (2.0 * sigma * sigma));
		taps[static_cast<std::size_t>(i + half)] = v;
		sum += v;
	}
	for (auto& t : taps) { t /= sum; }
	return taps;
}

/// Separable convolution of a 0/1 indicator (zero padding).
[[nodiscard]] inline std::vector<double> gaussian_filter(std::vector<double> const& src, int width, int height, int k) {
	auto const taps = gaussian_taps(k);
	int const half = static_cast<int>(taps.size()) / 2;
	std::vector<double> tmp(src.size(), 0.0);
	std::vector<double> out(src.size(), 0.0);
	auto at = [&](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x); };
	for (int y = 0; y < height; ++y) {
		for (int x = 0; x < width; ++x) {
			double acc = 0.0;
			for (int t = -half; t <= half; ++t) {
				int const xx = x + t;
				if (xx < 0 || xx >= width) { continue; }
				acc += taps[static_cast<std::size_t>(t + half)] * src[at(xx, y)];
			}
			tmp[at(x, y)] = acc;
		}
	}
	for (int y = 0; y < height; ++y) {
		for (int x = 0; x < width; ++x) {
			double acc = 0.0;
			for (int t = -half; t <= half; ++t) {
				int const yy = y + t;
				if (yy < 0 || yy >= height) { continue; }
				acc += taps[static_cast<std::size_t>(t + half)] * tmp[at(x, yy)];
			}
			out[at(x, y)] = acc;
		}
	}
	return out;
}

/// Kernel size from the mean single-mark area: the diameter of a disk of that area.
[[nodiscard]] inline int kernel_from_size(double expected_size) {
	return std::max(3, static_cast<int>(std::lround(2.0 * std::sqrt(expected_size / std::numbers::pi))));
}

[[nodiscard]] inline MarkSet filter_locate(GrayImage const& image, FilterConfig const& filter,
										   LocatorConfig const& locator = {}) {
	auto const start = std::chrono::steady_clock::now();
	auto const regions = extract_regions(image, locator);
	MarkerType marker = MarkerType::filled_circle;
	int k = filter.fallback_kernel;
	if (filter.kernel_size) {
		k = *filter.kernel_size;
	} else if (!regions.empty()) {
		auto const est = rsma(regions, locator.markers, locator.kappa, locator.single_tolerance, locator.stroke);
		if (est.succeeded) {
			k = kernel_from_size(est.expected_size);
			marker = est.estimated_marker;
		}
	}
	if (k < 3) { throw std::invalid_argument("filter_locate: kernel size must be >= 3"); }

	int const w = image.width();
	int const h = image.height();
	auto at = [&](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x); };
	std::vector<double> indicator(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0);
	std::vector<int> label(indicator.size(), -1);
	for (std::size_t r = 0; r < regions.size(); ++r) {
		for (auto const& p : regions[r].pixels) {
			indicator[at(p.x, p.y)] = 1.0;
			label[at(p.x, p.y)] = static_cast<int>(r);
		}
	}
	MarkSet out;
	if (regions.empty()) { return out; }
	auto const smooth = gaussian_filter(indicator, w, h, k);
	double const global = *std::max_element(smooth.begin(), smooth.end());
	double const floor_value = filter.peak_rel_threshold * global;

	struct Peak {
		double value;
		Pixel p;
	};
	std::vector<Peak> candidates;
	for (int y = 0; y < h; ++y) {
		for (int x = 0; x < w; ++x) {
			double const v = smooth[at(x, y)];
			if (v <= floor_value) { continue; }
			bool is_max = true;
			for (int dy = -1; dy <= 1 && is_max; ++dy) {
				for (int dx = -1; dx <= 1; ++dx) {
					int const nx = x + dx;
					int const ny = y + dy;
					if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) { continue; }
					if (smooth[at(nx, ny)] > v) {
						is_max = false;
						break;
					}
				}
			}
			if (is_max) { candidates.push_back({v, {x, y}}); }
		}
	}
	std::stable_sort(candidates.begin(), candidates.end(), [](Peak const& a, Peak const& b) { return a.value > b.value; });
	double const min_dist = filter.peak_min_distance.value_or(k / 2.0);
	std::vector<Pixel> kept;
	for (auto const& c : candidates) {
		bool clear = true;
		for (auto const& q : kept) {
			if (std::hypot(c.p.x - q.x, c.p.y - q.y) < min_dist) {
				clear = false;
				break;
			}
		}
		if (clear) { kept.push_back(c.p); }
	}
	for (auto const& p : kept) {
		Mark m{{static_cast<double>(p.x), static_cast<double>(p.y)}, k / 2.0, marker};
		out.marks.push_back({m, label[at(p.x, p.y)]});
	}
	out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	return out;
}

} // namespace markloc
