// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "annealer.hpp"
#include "clustering.hpp"
#include "objective.hpp"
#include "parallel.hpp"
#include "raster.hpp"
#include "revis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace markloc {

struct LocatedMark {
	Mark mark;
	int region_id{};
};

/// What the locator decided for one connected region.
struct RegionReport {
	int region_id{};
	std::size_t pixel_count{};
	BoundingBox box;
	bool single{};
	int n{};
	int n_max{};
	MarkerType marker{};
	double loss{};
	std::size_t evaluations{};
	double elapsed_ms{};
};

struct MarkSet {
	std::string source_image;
	std::vector<LocatedMark> marks;
	std::vector<RegionReport> regions;
	double elapsed_ms{};
};

[[nodiscard]] inline std::vector<Point2> centers(std::span<LocatedMark const> marks) {
	std::vector<Point2> out;
	out.reserve(marks.size());
	for (auto const& m : marks) { out.push_back(m.mark.center); }
	return out;
}

[[nodiscard]] inline std::vector<Point2> centers(std::span<Mark const> marks) {
	std::vector<Point2> out;
	out.reserve(marks.size());
	for (auto const& m : marks) { out.push_back(m.center); }
	return out;
}

struct LocatorConfig {
	LossParams loss;		  // space_factor applies when RSMA is off
	AnnealParams anneal;	  // seed is ignored; streams derive from `seed`
	KMeansOptions kmeans;
	std::vector<MarkerType> markers{all_marker_types.begin(), all_marker_types.end()};
	Threshold threshold = Threshold::automatic();
	bool invert = false;
	std::size_t min_region_px = 4;
	bool use_rsma = true;
	double kappa = 0.8;
	double single_tolerance = 0.2; // τ: relative symmetric difference for a single mark
	bool restrict_marker = true;
	double fallback_space_factor = 60.0;
	std::optional<double> stroke; // hollow stroke; estimated from single marks when unset
	std::uint64_t seed = 0;
	unsigned threads = 1;
	/// Enumerate (n, m) exhaustively instead of annealing when the search space
	/// is no larger than the annealer's minimum proposal budget.
	bool exhaustive_small_spaces = true;
};

/// Fewest proposals an annealing run makes: the n = 1 scan plus S_s chains of S_m.
[[nodiscard]] inline std::size_t minimum_anneal_budget(int n_max, std::size_t marker_count, AnnealParams const& p) {
	auto const stop = static_cast<std::size_t>(schedule_length(p.gamma_s, n_max, marker_count, p.log_base));
	auto const chain = static_cast<std::size_t>(schedule_length(p.gamma_m, n_max, marker_count, p.log_base));
	return marker_count + stop * chain;
}

struct SingleCheck {
	bool is_single{};
	MarkerType best_marker{};
	double relative_diff{};
	std::optional<double> best_stroke; // set when best_marker is hollow
};

/// Symmetric difference between a region and one mark drawn at its centroid
/// with its cluster radius.
[[nodiscard]] inline std::size_t single_mark_difference(BinaryRegion const& region, MarkerType marker,
														std::optional<double> stroke) {
	Clustering const c = is_hollow(marker) ? kmeans(fill_holes(region.pixels), 1, 0) : kmeans(region.pixels, 1, 0);
	PixelSet const raster = rasterize_mark({c.centroids[0], c.radii[0], marker}, stroke);
	return sym_diff_size(region.pixels, raster);
}

/// Candidate stroke widths tried for hollow markers when none is given.
[[nodiscard]] inline std::vector<double> stroke_candidates(BinaryRegion const& region) {
	Clustering const c = kmeans(region.pixels, 1, 0);
	int const top = std::max(1, static_cast<int>(std::ceil(c.radii[0] / 2.0)));
	std::vector<double> out;
	for (int w = 1; w <= top; ++w) { out.push_back(w); }
	return out;
}

/// Whether the region looks like one isolated mark: the best n = 1
/// re-visualization differs from it by at most τ·|region| pixels.
[[nodiscard]] inline SingleCheck classify_single(BinaryRegion const& region, std::span<MarkerType const> markers,
												 double tolerance = 0.2, std::optional<double> stroke = std::nullopt) {
	if (markers.empty()) { throw std::invalid_argument("classify_single: marker set is empty"); }
	if (region.pixels.empty()) { throw std::invalid_argument("classify_single: empty region"); }
	SingleCheck out;
	std::size_t best = std::numeric_limits<std::size_t>::max();
	std::vector<double> const strokes = stroke ? std::vector<double>{*stroke} : stroke_candidates(region);
	for (auto m : markers) {
		if (!is_hollow(m)) {
			auto const f = single_mark_difference(region, m, std::nullopt);
			if (f < best) {
				best = f;
				out.best_marker = m;
				out.best_stroke.reset();
			}
			continue;
		}
		for (double w : strokes) {
			auto const f = single_mark_difference(region, m, w);
			if (f < best) {
				best = f;
				out.best_marker = m;
				out.best_stroke = w;
			}
		}
	}
	out.relative_diff = static_cast<double>(best) / static_cast<double>(region.size());
	out.is_single = out.relative_diff <= tolerance;
	return out;
}

/// Size, marker and stroke statistics of the isolated single marks.
struct RsmaEstimate {
	bool succeeded{}; // false: no region classified single, fallback space factor in use
	std::vector<std::size_t> single_mark_sizes;
	std::vector<bool> is_single; // per input region
	double expected_size{};		 // E(S)
	MarkerType estimated_marker{MarkerType::filled_circle};
	double estimated_stroke{default_stroke_width};
	double kappa{};
	double space_factor{};
};

/// Space factor 𝔉 = κ·E(S) from regions already classified, clamped into
/// (1, smallest multi-mark region size).
[[nodiscard]] inline RsmaEstimate rsma_from_checks(std::span<BinaryRegion const> regions,
												   std::span<SingleCheck const> checks, double kappa,
												   double fallback_space_factor = 60.0,
												   double fallback_stroke = default_stroke_width) {
	if (regions.empty()) { throw std::invalid_argument("rsma: no regions"); }
	RsmaEstimate est;
	est.kappa = kappa;
	est.estimated_stroke = fallback_stroke;
	std::map<int, int> votes;
	std::vector<double> strokes;
	std::size_t smallest_multi = std::numeric_limits<std::size_t>::max();
	double total = 0.0;
	for (std::size_t i = 0; i < regions.size(); ++i) {
		est.is_single.push_back(checks[i].is_single);
		if (!checks[i].is_single) {
			smallest_multi = std::min(smallest_multi, regions[i].size());
			continue;
		}
		est.single_mark_sizes.push_back(regions[i].size());
		total += static_cast<double>(regions[i].size());
		++votes[static_cast<int>(checks[i].best_marker)];
		if (checks[i].best_stroke) { strokes.push_back(*checks[i].best_stroke); }
	}
	if (est.single_mark_sizes.empty()) {
		est.space_factor = fallback_space_factor;
		return est;
	}
	est.succeeded = true;
	est.expected_size = total / static_cast<double>(est.single_mark_sizes.size());
	int best_votes = -1;
	for (auto const& [marker, count] : votes) { // ordered by marker index, so ties keep the lower index
		if (count > best_votes) {
			best_votes = count;
			est.estimated_marker = static_cast<MarkerType>(marker);
		}
	}
	if (!strokes.empty()) {
		std::sort(strokes.begin(), strokes.end());
		std::size_t const mid = strokes.size() / 2;
		est.estimated_stroke = strokes.size() % 2 == 1 ? strokes[mid] : 0.5 * (strokes[mid - 1] + strokes[mid]);
	}
	double f = kappa * est.expected_size;
	if (smallest_multi != std::numeric_limits<std::size_t>::max()) {
		f = std::min(f, std::nextafter(static_cast<double>(smallest_multi), 0.0));
	}
	est.space_factor = std::max(f, std::nextafter(1.0, 2.0));
	return est;
}

[[nodiscard]] inline RsmaEstimate rsma(std::span<BinaryRegion const> regions, std::span<MarkerType const> markers,
									   double kappa, double tolerance = 0.2,
									   std::optional<double> stroke = std::nullopt,
									   double fallback_space_factor = 60.0) {
	std::vector<SingleCheck> checks;
	checks.reserve(regions.size());
	for (auto const& r : regions) { checks.push_back(classify_single(r, markers, tolerance, stroke)); }
	return rsma_from_checks(regions, checks, kappa, fallback_space_factor, stroke.value_or(default_stroke_width));
}

/// Regions the locator works on: binarized, 8-connected, small specks dropped.
[[nodiscard]] inline std::vector<BinaryRegion> extract_regions(GrayImage const& image, LocatorConfig const& config) {
	return discard_small(connected_regions(binarize(image, config.threshold, config.invert)), config.min_region_px);
}

/// Effective search settings after RSMA (or the fixed configuration).
struct SearchPlan {
	double space_factor{};
	std::vector<MarkerType> markers;
	double stroke{};
	std::vector<SingleCheck> checks; // empty when RSMA is off
	std::optional<RsmaEstimate> rsma;
};

[[nodiscard]] inline SearchPlan plan_search(std::span<BinaryRegion const> regions, LocatorConfig const& config) {
	if (config.markers.empty()) { throw std::invalid_argument("locate: marker set is empty"); }
	SearchPlan plan;
	plan.markers = config.markers;
	plan.space_factor = config.loss.space_factor;
	plan.stroke = config.stroke.value_or(default_stroke_width);
	if (!config.use_rsma || regions.empty()) { return plan; }

	plan.checks.resize(regions.size());
	parallel_for(regions.size(), config.threads, [&](std::size_t i) {
		plan.checks[i] = classify_single(regions[i], config.markers, config.single_tolerance, config.stroke);
	});
	plan.rsma = rsma_from_checks(regions, plan.checks, config.kappa, config.fallback_space_factor,
								 config.stroke.value_or(default_stroke_width));
	plan.space_factor = plan.rsma->space_factor;
	if (plan.rsma->succeeded) {
		plan.stroke = config.stroke.value_or(plan.rsma->estimated_stroke);
		if (config.restrict_marker) { plan.markers = {plan.rsma->estimated_marker}; }
	}
	return plan;
}

/// Locates marks in every region of `regions` according to `plan`.
[[nodiscard]] inline MarkSet locate_regions(std::span<BinaryRegion const> regions, SearchPlan const& plan,
											LocatorConfig const& config) {
	using clock = std::chrono::steady_clock;
	std::vector<std::vector<LocatedMark>> per_region(regions.size());
	std::vector<RegionReport> reports(regions.size());
	parallel_for(regions.size(), config.threads, [&](std::size_t i) {
		auto const start = clock::now();
		BinaryRegion const& region = regions[i];
		auto const id = static_cast<int>(i);
		RegionReport& rep = reports[i];
		rep.region_id = id;
		rep.pixel_count = region.size();
		rep.box = region.box;
		std::uint64_t const region_seed = derive_seed(config.seed, i);

		bool const single = !plan.checks.empty() && plan.rsma && plan.rsma->succeeded && plan.checks[i].is_single;
		if (single) {
			auto const& check = plan.checks[i];
			Clustering const c = is_hollow(check.best_marker) ? kmeans(fill_holes(region.pixels), 1, 0)
															  : kmeans(region.pixels, 1, 0);
			per_region[i].push_back({{c.centroids[0], c.radii[0], check.best_marker}, id});
			rep.single = true;
			rep.n = 1;
			rep.n_max = 1;
			rep.marker = check.best_marker;
			rep.loss = check.relative_diff * static_cast<double>(region.size());
		} else {
			LossParams lp = config.loss;
			lp.space_factor = plan.space_factor;
			RegionObjective objective(region, lp, derive_seed(region_seed, 1), plan.stroke, config.kmeans);
			AnnealParams ap = config.anneal;
			ap.seed = derive_seed(region_seed, 2);
			auto const space = static_cast<std::size_t>(objective.n_max()) * plan.markers.size();
			if (config.exhaustive_small_spaces &&
				space <= minimum_anneal_budget(objective.n_max(), plan.markers.size(), ap)) {
				auto const res = exhaustive_search(objective, plan.markers);
				rep.n = res.best_n;
				rep.marker = res.best_m;
				rep.loss = res.best_loss;
				rep.evaluations = res.evaluations;
			} else {
				auto const res = anneal(objective, plan.markers, ap);
				rep.n = res.best_n;
				rep.marker = res.best_m;
				rep.loss = res.best_loss;
				rep.evaluations = res.evaluations;
			}
			Clustering const& c = objective.clustering(rep.n, rep.marker);
			for (auto const& mark : marks_from_clusters(c, rep.marker)) { per_region[i].push_back({mark, id}); }
			rep.n_max = objective.n_max();
		}
		rep.elapsed_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
	});

	MarkSet out;
	out.regions = std::move(reports);
	for (auto& marks : per_region) { out.marks.insert(out.marks.end(), marks.begin(), marks.end()); }
	return out;
}

/// Full pipeline: binarize, split into regions, RSMA, per-region annealing.
[[nodiscard]] inline MarkSet locate(GrayImage const& image, LocatorConfig const& config) {
	auto const start = std::chrono::steady_clock::now();
	auto const regions = extract_regions(image, config);
	SearchPlan const plan = plan_search(regions, config);
	MarkSet out = locate_regions(regions, plan, config);
	out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	return out;
}

} // namespace markloc
