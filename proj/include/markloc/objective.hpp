// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "clustering.hpp"
#include "raster.hpp"
#include "revis.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace markloc {

struct LossParams {
	double alpha = 1.1;
	double beta = 1.0;
	double space_factor = 60.0; // 𝔉; the cluster-count ceiling is |region| / space_factor
	/// Cluster hollow markers on the region with its enclosed holes filled, so
	/// centroids land on glyph centers rather than on stroke arcs.
	bool fill_hollow = true;
};

/// N₀ = max(1, floor(|region| / space_factor)).
[[nodiscard]] inline int max_clusters(std::size_t region_size, double space_factor) {
	if (!(space_factor > 1.0)) { throw std::invalid_argument("space factor must be > 1"); }
	double const n0 = std::floor(static_cast<double>(region_size) / space_factor);
	return std::max(1, static_cast<int>(n0));
}

struct LossBreakdown {
	double f{}; // |region △ re-visualization|
	double g{}; // cluster-count prior
	double h{}; // radius spread prior
	double total{};
};

/// |a △ b| for two sorted pixel sets.
[[nodiscard]] inline std::size_t sym_diff_size(std::span<Pixel const> a, std::span<Pixel const> b) {
	return a.size() + b.size() - 2 * intersection_size(a, b);
}

/// Population standard deviation.
[[nodiscard]] inline double population_std(std::span<double const> values) {
	if (values.size() < 2) { return 0.0; }
	double mean = 0.0;
	for (auto v : values) { mean += v; }
	mean /= static_cast<double>(values.size());
	double var = 0.0;
	for (auto v : values) { var += (v - mean) * (v - mean); }
	return std::sqrt(var / static_cast<double>(values.size()));
}

/// Loss of one region as a function of (n, marker). Clusterings are computed
/// once per n (they do not depend on the marker) and losses once per (n, m),
/// so every query is a deterministic function of the construction seed.
/// Not thread-safe; use one instance per worker.
class RegionObjective {
  public:
	RegionObjective(BinaryRegion const& region, LossParams params, std::uint64_t seed,
					std::optional<double> stroke = default_stroke_width, KMeansOptions kmeans = {})
		: m_region(&region), m_params(params), m_seed(seed), m_stroke(stroke), m_kmeans(kmeans),
		  m_n_max(max_clusters(region.size(), params.space_factor)) {
		if (params.alpha < 0.0 || params.beta < 0.0) { throw std::invalid_argument("loss weights must be >= 0"); }
		m_clusterings.resize(static_cast<std::size_t>(m_n_max) + 1);
		m_filled_clusterings.resize(static_cast<std::size_t>(m_n_max) + 1);
	}

	[[nodiscard]] int n_max() const { return m_n_max; }
	[[nodiscard]] BinaryRegion const& region() const { return *m_region; }
	[[nodiscard]] LossParams const& params() const { return m_params; }
	[[nodiscard]] std::optional<double> stroke() const { return m_stroke; }
	/// Number of distinct (n, m) losses computed so far.
	[[nodiscard]] std::size_t evaluations() const { return m_losses.size(); }
	[[nodiscard]] std::size_t clusterings_computed() const { return m_clusterings_computed; }

	/// k-means seed used for cluster count n.
	[[nodiscard]] std::uint64_t kmeans_seed(int n) const { return derive_seed(m_seed, static_cast<std::uint64_t>(n)); }

	/// km(region, n).
	[[nodiscard]] Clustering const& clustering(int n) { return cached(n, false); }

	/// Clustering that re-visualization with marker m is built from.
	[[nodiscard]] Clustering const& clustering(int n, MarkerType m) {
		return cached(n, m_params.fill_hollow && is_hollow(m));
	}

	/// f = |region △ revis(km(region, n), m)|, counted on a bitmap canvas.
	[[nodiscard]] std::size_t symmetric_difference(int n, MarkerType m) {
		auto const& c = clustering(n, m);
		auto const& box = m_region->box;
		double reach = 0.0;
		for (std::size_t k = 0; k < c.centroids.size(); ++k) {
			reach = std::max(reach, c.radii[k] * 1.1 + 3.0);
		}
		// every mark center lies inside the region's box, so box ± reach bounds the raster
		int const pad = static_cast<int>(std::ceil(reach));
		int const ox = box.min_x - pad;
		int const oy = box.min_y - pad;
		int const w = box.width() + 2 * pad;
		int const h = box.height() + 2 * pad;
		m_canvas.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
		auto idx = [&](Pixel p) {
			return static_cast<std::size_t>(p.y - oy) * static_cast<std::size_t>(w) + static_cast<std::size_t>(p.x - ox);
		};
		for (auto const& p : m_region->pixels) { m_canvas[idx(p)] = 1; }
		std::size_t drawn = 0;
		std::size_t hit = 0;
		for (auto const& mark : marks_from_clusters(c, m)) {
			visit_mark_pixels(mark, m_stroke, [&](Pixel p) {
				auto& cell = m_canvas[idx(p)];
				if (cell & 2) { return; }
				cell |= 2;
				++drawn;
				if (cell & 1) { ++hit; }
			});
		}
		return m_region->size() + drawn - 2 * hit;
	}

	[[nodiscard]] LossBreakdown evaluate(int n, MarkerType m) {
		auto const key = std::make_pair(n, static_cast<int>(m));
		if (auto it = m_losses.find(key); it != m_losses.end()) { return it->second; }
		LossBreakdown out;
		out.f = static_cast<double>(symmetric_difference(n, m));
		out.g = static_cast<double>(n) / static_cast<double>(m_n_max) * out.f +
				static_cast<double>(n) * std::sqrt(m_params.space_factor);
		out.h = population_std(clustering(n, m).radii);
		out.total = out.f + m_params.alpha * out.g + m_params.beta * out.h;
		m_losses.emplace(key, out);
		return out;
	}

	[[nodiscard]] double loss(int n, MarkerType m) { return evaluate(n, m).total; }

  private:
	Clustering const& cached(int n, bool filled) {
		check_n(n);
		auto& slot = (filled ? m_filled_clusterings : m_clusterings)[static_cast<std::size_t>(n)];
		if (!slot) {
			if (filled && m_filled.empty()) { m_filled = fill_holes(m_region->pixels); }
			slot = std::make_unique<Clustering>(kmeans(filled ? m_filled : m_region->pixels, n, kmeans_seed(n), m_kmeans));
			++m_clusterings_computed;
		}
		return *slot;
	}

	void check_n(int n) const {
		if (n < 1 || n > m_n_max) {
			throw std::out_of_range("cluster count " + std::to_string(n) + " outside [1, " + std::to_string(m_n_max) +
									"]");
		}
	}

	BinaryRegion const* m_region;
	LossParams m_params;
	std::uint64_t m_seed;
	std::optional<double> m_stroke;
	KMeansOptions m_kmeans;
	int m_n_max;
	std::vector<std::unique_ptr<Clustering>> m_clusterings;
	std::vector<std::unique_ptr<Clustering>> m_filled_clusterings;
	PixelSet m_filled;
	std::size_t m_clusterings_computed{};
	std::map<std::pair<int, int>, LossBreakdown> m_losses;
	std::vector<std::uint8_t> m_canvas;
};

/// One-shot loss evaluation.
[[nodiscard]] inline LossBreakdown loss(BinaryRegion const& region, int n, MarkerType m, LossParams const& params,
										std::uint64_t seed, std::optional<double> stroke = default_stroke_width) {
	RegionObjective objective(region, params, seed, stroke);
	return objective.evaluate(n, m);
}

} // namespace markloc
