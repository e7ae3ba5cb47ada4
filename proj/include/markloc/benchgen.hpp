// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "geometry.hpp"
#include "image.hpp"
#include "random.hpp"
#include "revis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace markloc {

enum class Distribution { gaussian_blobs, hypercube_classes };

[[nodiscard]] inline std::string to_string(Distribution d) {
	return d == Distribution::gaussian_blobs ? "gaussian_blobs" : "hypercube_classes";
}

[[nodiscard]] inline Distribution parse_distribution(std::string const& s) {
	if (s == "gaussian_blobs") { return Distribution::gaussian_blobs; }
	if (s == "hypercube_classes") { return Distribution::hypercube_classes; }
	throw std::invalid_argument("unknown distribution '" + s + "'");
}

struct GeneratorParams {
	int width = 480;
	int height = 480;
	int margin = 10;
	double radius = 6.0;
	double stroke = default_stroke_width;
	// gaussian_blobs: centers drawn uniformly in [-center_box, center_box]²
	int centers = 3;
	double cluster_std = 1.0;
	double center_box = 10.0;
	// hypercube_classes: one normal cluster per class at square vertices ±class_sep
	int classes = 2;
	double class_sep = 1.0;
	/// When > 0, points are redrawn until every pair of marks is at least this
	/// many pixels apart edge to edge (marks then never touch).
	double min_gap = 0.0;
};

struct BenchmarkCase {
	std::string id;
	GrayImage image;
	std::vector<Mark> truth;
	MarkerType marker{};
	int mark_count{};
	double severity{};
	Distribution distribution{};
	GeneratorParams params;
	std::uint64_t seed{};
};

/// s = 1 − |∪ Mᵢ| / Σ |Mᵢ|.
[[nodiscard]] inline double overlap_severity(std::span<PixelSet const> rasters) {
	if (rasters.empty()) { throw std::invalid_argument("overlap_severity: no marks"); }
	std::size_t total = 0;
	PixelSet all;
	for (auto const& r : rasters) {
		total += r.size();
		all.insert(all.end(), r.begin(), r.end());
	}
	normalize(all);
	if (total == 0) { return 0.0; }
	// (Σ − |∪|) / Σ rounds once, so exact fractions such as 4/20 come out exact
	return static_cast<double>(total - all.size()) / static_cast<double>(total);
}

namespace detail {

inline std::vector<Point2> sample_blobs(int count, GeneratorParams const& p, Rng& rng) {
	std::uniform_real_distribution<double> box(-p.center_box, p.center_box);
	std::vector<Point2> centers(static_cast<std::size_t>(p.centers));
	for (auto& c : centers) {
		c.x = box(rng);
		c.y = box(rng);
	}
	std::normal_distribution<double> noise(0.0, p.cluster_std);
	std::vector<Point2> pts;
	for (int i = 0; i < count; ++i) {
		auto const& c = centers[static_cast<std::size_t>(i % p.centers)];
		double const x = c.x + noise(rng);
		double const y = c.y + noise(rng);
		pts.push_back({x, y});
	}
	return pts;
}

inline std::vector<Point2> sample_hypercube(int count, GeneratorParams const& p, Rng& rng) {
	// distinct square vertices, one per class, each with its own random linear mixing
	std::array<Point2, 4> vertices{{{-1, -1}, {1, -1}, {-1, 1}, {1, 1}}};
	std::shuffle(vertices.begin(), vertices.end(), rng);
	std::uniform_real_distribution<double> mix(-1.0, 1.0);
	std::normal_distribution<double> unit(0.0, 1.0);
	std::vector<std::array<double, 4>> mixing(static_cast<std::size_t>(p.classes));
	for (auto& a : mixing) {
		for (auto& v : a) { v = mix(rng); }
	}
	std::vector<Point2> pts;
	for (int i = 0; i < count; ++i) {
		auto const cls = static_cast<std::size_t>(i % p.classes);
		double const u = unit(rng);
		double const v = unit(rng);
		auto const& a = mixing[cls];
		pts.push_back({vertices[cls % 4].x * p.class_sep + a[0] * u + a[1] * v,
					   vertices[cls % 4].y * p.class_sep + a[2] * u + a[3] * v});
	}
	return pts;
}

/// Min–max scales data into the plot area; data y grows upwards.
inline std::vector<Point2> to_plot_area(std::span<Point2 const> pts, GeneratorParams const& p) {
	double lo_x = std::numeric_limits<double>::infinity();
	double hi_x = -lo_x;
	double lo_y = lo_x;
	double hi_y = -lo_x;
	for (auto const& q : pts) {
		lo_x = std::min(lo_x, q.x);
		hi_x = std::max(hi_x, q.x);
		lo_y = std::min(lo_y, q.y);
		hi_y = std::max(hi_y, q.y);
	}
	double const span_x = p.width - 1 - 2.0 * p.margin;
	double const span_y = p.height - 1 - 2.0 * p.margin;
	std::vector<Point2> out;
	for (auto const& q : pts) {
		double const tx = hi_x > lo_x ? (q.x - lo_x) / (hi_x - lo_x) : 0.5;
		double const ty = hi_y > lo_y ? (q.y - lo_y) / (hi_y - lo_y) : 0.5;
		out.push_back({p.margin + tx * span_x, p.height - 1 - p.margin - ty * span_y});
	}
	return out;
}

inline void validate(int count, Distribution d, GeneratorParams const& p) {
	if (count < 1) { throw std::invalid_argument("generate_case: mark count must be >= 1"); }
	if (p.width <= 2 * p.margin || p.height <= 2 * p.margin) {
		throw std::invalid_argument("generate_case: margin leaves no plot area");
	}
	if (!(p.radius >= 0.0)) { throw std::invalid_argument("generate_case: radius must be >= 0"); }
	if (d == Distribution::gaussian_blobs) {
		if (p.centers < 1) { throw std::invalid_argument("generate_case: gaussian_blobs needs >= 1 center"); }
		if (!(p.cluster_std > 0.0)) { throw std::invalid_argument("generate_case: cluster_std must be > 0"); }
		if (!(p.center_box > 0.0)) { throw std::invalid_argument("generate_case: center_box must be > 0"); }
	} else {
		if (p.classes < 1 || p.classes > 4) {
			throw std::invalid_argument("generate_case: hypercube_classes needs 1..4 classes");
		}
		if (!(p.class_sep > 0.0)) { throw std::invalid_argument("generate_case: class_sep must be > 0"); }
	}
}

} // namespace detail

/// Per-mark rasters clipped to the image.
[[nodiscard]] inline std::vector<PixelSet> mark_rasters(std::span<Mark const> marks, GeneratorParams const& p) {
	std::vector<PixelSet> out;
	for (auto const& m : marks) {
		PixelSet r = rasterize_mark(m, p.stroke);
		std::erase_if(r, [&](Pixel q) { return q.x < 0 || q.y < 0 || q.x >= p.width || q.y >= p.height; });
		out.push_back(std::move(r));
	}
	return out;
}

/// Synthesizes one scatter image: Q points from the distribution, scaled into
/// the plot area, drawn in black on white with the shared glyph geometry.
[[nodiscard]] inline BenchmarkCase generate_case(MarkerType marker, int count, Distribution distribution,
												 GeneratorParams const& params, std::uint64_t seed) {
	detail::validate(count, distribution, params);
	Rng rng(seed);
	std::vector<Point2> centers;
	double const min_dist = 2.0 * params.radius + params.min_gap;
	constexpr int max_attempts = 200;
	for (int attempt = 0;; ++attempt) {
		auto raw = distribution == Distribution::gaussian_blobs ? detail::sample_blobs(count, params, rng)
																: detail::sample_hypercube(count, params, rng);
		centers = detail::to_plot_area(raw, params);
		if (params.min_gap <= 0.0) { break; }
		bool ok = true;
		for (std::size_t i = 0; i < centers.size() && ok; ++i) {
			for (std::size_t j = i + 1; j < centers.size(); ++j) {
				if (std::hypot(centers[i].x - centers[j].x, centers[i].y - centers[j].y) < min_dist) {
					ok = false;
					break;
				}
			}
		}
		if (ok) { break; }
		if (attempt + 1 == max_attempts) {
			throw std::runtime_error("generate_case: could not place marks with the requested gap");
		}
	}

	BenchmarkCase out;
	out.marker = marker;
	out.mark_count = count;
	out.distribution = distribution;
	out.params = params;
	out.seed = seed;
	for (auto const& c : centers) { out.truth.push_back({c, params.radius, marker}); }
	auto const rasters = mark_rasters(out.truth, params);
	out.severity = overlap_severity(rasters);
	out.image = GrayImage(params.width, params.height, 255);
	for (auto const& r : rasters) {
		for (auto const& q : r) { out.image.set(q.x, q.y, 0); }
	}
	return out;
}

/// Shape of a benchmark suite: markers × mark counts × (blob + hypercube images).
struct SuiteSpec {
	std::vector<MarkerType> markers{all_marker_types.begin(), all_marker_types.end()};
	std::vector<int> counts{100, 400, 700};
	int blob_images = 6;
	int hypercube_images = 3;
	std::uint64_t seed = 2023;
	GeneratorParams base;
	/// Blob parameter grid cycled over the blob images: (centers, std).
	std::vector<std::pair<int, double>> blob_grid{{3, 0.5}, {3, 1.0}, {3, 2.0}, {5, 0.5}, {5, 1.0}, {5, 2.0}};
	std::vector<double> class_seps{1.0, 1.5, 2.0};

	[[nodiscard]] std::size_t case_count() const {
		return markers.size() * counts.size() * static_cast<std::size_t>(blob_images + hypercube_images);
	}
};

/// Small mixed-severity suite: every marker, Q = 100, two blob images (one
/// dense, one loose) and one hypercube image each.
[[nodiscard]] inline SuiteSpec desk_suite(std::uint64_t seed = 2023) {
	SuiteSpec s;
	s.counts = {100};
	s.blob_images = 2;
	s.hypercube_images = 1;
	s.seed = seed;
	s.base.radius = 8.0;
	s.blob_grid = {{3, 0.5}, {5, 2.0}};
	s.class_seps = {1.0};
	return s;
}

/// Seeds and parameters of every case, without rendering.
struct CasePlan {
	std::string id;
	MarkerType marker{};
	int count{};
	Distribution distribution{};
	GeneratorParams params;
	std::uint64_t seed{};
};

[[nodiscard]] inline std::vector<CasePlan> plan_suite(SuiteSpec const& spec) {
	std::vector<CasePlan> plans;
	std::size_t index = 0;
	for (auto marker : spec.markers) {
		for (int q : spec.counts) {
			for (int i = 0; i < spec.blob_images + spec.hypercube_images; ++i, ++index) {
				CasePlan p;
				p.marker = marker;
				p.count = q;
				p.params = spec.base;
				p.seed = derive_seed(spec.seed, index);
				if (i < spec.blob_images) {
					p.distribution = Distribution::gaussian_blobs;
					auto const& [centers, stddev] = spec.blob_grid[static_cast<std::size_t>(i) % spec.blob_grid.size()];
					p.params.centers = centers;
					p.params.cluster_std = stddev;
				} else {
					p.distribution = Distribution::hypercube_classes;
					auto const j = static_cast<std::size_t>(i - spec.blob_images);
					p.params.class_sep = spec.class_seps[j % spec.class_seps.size()];
				}
				char buf[96];
				std::snprintf(buf, sizeof(buf), "%s_q%d_%02d", std::string(to_string(marker)).c_str(), q, i);
				p.id = buf;
				plans.push_back(std::move(p));
			}
		}
	}
	return plans;
}

[[nodiscard]] inline BenchmarkCase generate_planned(CasePlan const& plan) {
	BenchmarkCase c = generate_case(plan.marker, plan.count, plan.distribution, plan.params, plan.seed);
	c.id = plan.id;
	return c;
}

[[nodiscard]] inline std::vector<BenchmarkCase> generate_suite(SuiteSpec const& spec) {
	std::vector<BenchmarkCase> out;
	for (auto const& plan : plan_suite(spec)) { out.push_back(generate_planned(plan)); }
	return out;
}

/// Histogram of severities in `bins` equal-width bins over [0, 1).
[[nodiscard]] inline std::vector<std::size_t> severity_histogram(std::span<double const> severities, int bins = 10) {
	std::vector<std::size_t> h(static_cast<std::size_t>(bins), 0);
	for (double s : severities) {
		auto b = static_cast<int>(std::floor(s * bins));
		b = std::clamp(b, 0, bins - 1);
		++h[static_cast<std::size_t>(b)];
	}
	return h;
}

} // namespace markloc
