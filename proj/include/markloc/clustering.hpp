// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "geometry.hpp"
#include "random.hpp"
#include "raster.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace markloc {

/// n clusters over a pixel set. assignment[i] refers to the i-th input pixel.
struct Clustering {
	int n{};
	std::vector<Point2> centroids;
	std::vector<int> assignment;
	std::vector<double> radii;
	double inertia{}; // within-cluster sum of squared distances
};

struct KMeansOptions {
	int restarts = 3;
	int max_iterations = 100;
};

/// Largest Euclidean distance from `centroid` to any pixel of the set.
[[nodiscard]] inline double cluster_radius(std::span<Pixel const> pixels, Point2 centroid) {
	if (pixels.empty()) { throw std::invalid_argument("cluster_radius: empty pixel set"); }
	double best = 0.0;
	for (auto const& p : pixels) {
		double const dx = p.x - centroid.x;
		double const dy = p.y - centroid.y;
		best = std::max(best, dx * dx + dy * dy);
	}
	return std::sqrt(best);
}

namespace detail {

struct LloydRun {
	std::vector<double> cx;
	std::vector<double> cy;
	std::vector<int> assignment;
	double inertia{};
	std::vector<double> inertia_trace; // WCSS after every assignment step
};

inline double sq(double v) { return v * v; }

inline void plus_plus_init(std::span<Pixel const> pts, int n, Rng& rng, LloydRun& run) {
	auto const count = pts.size();
	run.cx.assign(static_cast<std::size_t>(n), 0.0);
	run.cy.assign(static_cast<std::size_t>(n), 0.0);
	std::uniform_int_distribution<std::size_t> pick(0, count - 1);
	std::size_t first = pick(rng);
	run.cx[0] = pts[first].x;
	run.cy[0] = pts[first].y;
	std::vector<double> d2(count);
	for (std::size_t i = 0; i < count; ++i) { d2[i] = sq(pts[i].x - run.cx[0]) + sq(pts[i].y - run.cy[0]); }
	for (int k = 1; k < n; ++k) {
		double total = 0.0;
		for (auto v : d2) { total += v; }
		std::size_t chosen = count;
		if (total > 0.0) {
			double const r = std::uniform_real_distribution<double>(0.0, total)(rng);
			double acc = 0.0;
			for (std::size_t i = 0; i < count; ++i) {
				if (d2[i] <= 0.0) { continue; }
				acc += d2[i];
				chosen = i;
				if (acc > r) { break; }
			}
		}
		if (chosen == count) { chosen = pick(rng); }
		run.cx[static_cast<std::size_t>(k)] = pts[chosen].x;
		run.cy[static_cast<std::size_t>(k)] = pts[chosen].y;
		for (std::size_t i = 0; i < count; ++i) {
			d2[i] = std::min(d2[i], sq(pts[i].x - pts[chosen].x) + sq(pts[i].y - pts[chosen].y));
		}
	}
}

/// Nearest-centroid assignment, ties to the lowest index. Returns whether any label changed.
inline bool assign(std::span<Pixel const> pts, LloydRun& run) {
	bool changed = false;
	auto const k_count = run.cx.size();
	double inertia = 0.0;
	for (std::size_t i = 0; i < pts.size(); ++i) {
		double const px = pts[i].x;
		double const py = pts[i].y;
		int best_k = 0;
		double best_d = std::numeric_limits<double>::infinity();
		for (std::size_t k = 0; k < k_count; ++k) {
			double const d = sq(px - run.cx[k]) + sq(py - run.cy[k]);
			if (d < best_d) {
				best_d = d;
				best_k = static_cast<int>(k);
			}
		}
		inertia += best_d;
		if (run.assignment[i] != best_k) {
			run.assignment[i] = best_k;
			changed = true;
		}
	}
	run.inertia_trace.push_back(inertia);
	return changed;
}

inline void update_centroids(std::span<Pixel const> pts, LloydRun& run) {
	auto const k_count = run.cx.size();
	std::vector<double> sx(k_count, 0.0);
	std::vector<double> sy(k_count, 0.0);
	std::vector<std::size_t> cnt(k_count, 0);
	for (std::size_t i = 0; i < pts.size(); ++i) {
		auto const k = static_cast<std::size_t>(run.assignment[i]);
		sx[k] += pts[i].x;
		sy[k] += pts[i].y;
		++cnt[k];
	}
	for (std::size_t k = 0; k < k_count; ++k) {
		if (cnt[k] == 0) { continue; }
		run.cx[k] = sx[k] / static_cast<double>(cnt[k]);
		run.cy[k] = sy[k] / static_cast<double>(cnt[k]);
	}
	// repair empty clusters with the point farthest from its own centroid
	for (std::size_t k = 0; k < k_count; ++k) {
		if (cnt[k] != 0) { continue; }
		std::size_t far = pts.size();
		double far_d = -1.0;
		for (std::size_t i = 0; i < pts.size(); ++i) {
			auto const owner = static_cast<std::size_t>(run.assignment[i]);
			if (cnt[owner] < 2) { continue; }
			double const d = sq(pts[i].x - run.cx[owner]) + sq(pts[i].y - run.cy[owner]);
			if (d > far_d) {
				far_d = d;
				far = i;
			}
		}
		auto const owner = static_cast<std::size_t>(run.assignment[far]);
		sx[owner] -= pts[far].x;
		sy[owner] -= pts[far].y;
		--cnt[owner];
		run.cx[owner] = sx[owner] / static_cast<double>(cnt[owner]);
		run.cy[owner] = sy[owner] / static_cast<double>(cnt[owner]);
		run.assignment[far] = static_cast<int>(k);
		sx[k] = pts[far].x;
		sy[k] = pts[far].y;
		cnt[k] = 1;
		run.cx[k] = sx[k];
		run.cy[k] = sy[k];
	}
}

inline LloydRun lloyd(std::span<Pixel const> pts, int n, std::uint64_t seed, int max_iterations) {
	LloydRun run;
	Rng rng(seed);
	plus_plus_init(pts, n, rng, run);
	run.assignment.assign(pts.size(), -1);
	for (int iter = 0; iter < max_iterations; ++iter) {
		bool const changed = assign(pts, run);
		if (!changed) { break; }
		update_centroids(pts, run);
	}
	run.inertia = 0.0;
	for (std::size_t i = 0; i < pts.size(); ++i) {
		auto const k = static_cast<std::size_t>(run.assignment[i]);
		run.inertia += sq(pts[i].x - run.cx[k]) + sq(pts[i].y - run.cy[k]);
	}
	return run;
}

} // namespace detail

/// Seeded k-means over pixel coordinates: k-means++ initialization, Lloyd
/// iterations until the assignment is stable or the iteration cap is hit,
/// best-of-`restarts` by inertia (ties keep the earlier restart).
[[nodiscard]] inline Clustering kmeans(std::span<Pixel const> pixels, int n, std::uint64_t seed,
									   KMeansOptions const& options = {}) {
	if (n < 1) { throw std::invalid_argument("kmeans: cluster count must be >= 1"); }
	if (static_cast<std::size_t>(n) > pixels.size()) {
		throw std::invalid_argument("kmeans: cluster count " + std::to_string(n) + " exceeds pixel count " +
									std::to_string(pixels.size()));
	}
	detail::LloydRun best;
	bool have_best = false;
	int const restarts = n == 1 ? 1 : std::max(1, options.restarts);
	for (int r = 0; r < restarts; ++r) {
		auto run = detail::lloyd(pixels, n, derive_seed(seed, static_cast<std::uint64_t>(r)), options.max_iterations);
		if (!have_best || run.inertia < best.inertia) {
			best = std::move(run);
			have_best = true;
		}
	}

	Clustering out;
	out.n = n;
	out.inertia = best.inertia;
	out.assignment = std::move(best.assignment);
	out.centroids.resize(static_cast<std::size_t>(n));
	out.radii.assign(static_cast<std::size_t>(n), 0.0);
	for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) { out.centroids[k] = {best.cx[k], best.cy[k]}; }
	for (std::size_t i = 0; i < pixels.size(); ++i) {
		auto const k = static_cast<std::size_t>(out.assignment[i]);
		double const d2 = detail::sq(pixels[i].x - out.centroids[k].x) + detail::sq(pixels[i].y - out.centroids[k].y);
		out.radii[k] = std::max(out.radii[k], d2);
	}
	for (auto& r : out.radii) { r = std::sqrt(r); }
	return out;
}

[[nodiscard]] inline Clustering kmeans(BinaryRegion const& region, int n, std::uint64_t seed,
									   KMeansOptions const& options = {}) {
	return kmeans(region.pixels, n, seed, options);
}

/// Pixels of cluster k, in input order.
[[nodiscard]] inline std::vector<Pixel> cluster_members(std::span<Pixel const> pixels, Clustering const& c, int k) {
	std::vector<Pixel> out;
	for (std::size_t i = 0; i < pixels.size(); ++i) {
		if (c.assignment[i] == k) { out.push_back(pixels[i]); }
	}
	return out;
}

} // namespace markloc
