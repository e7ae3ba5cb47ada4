#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace markloc;
using testing_support::draw;
using testing_support::region_of;

namespace {

LocatorConfig quiet_config(std::uint64_t seed = 0) {
	LocatorConfig c;
	c.seed = seed;
	return c;
}

/// Three filled circles on an equilateral triangle, rendered with the
/// generator's rasterizer. Side 9 at radius 6 gives severity ~0.14.
struct Triple {
	GrayImage image;
	std::vector<Mark> truth;
	double severity{};
};

Triple overlapping_triple() {
	GeneratorParams p;
	p.width = 100;
	p.height = 100;
	double const side = 9.0;
	Triple t;
	t.truth = {{{40, 40}, 6.0, MarkerType::filled_circle},
			   {{40 + side, 40}, 6.0, MarkerType::filled_circle},
			   {{40 + side / 2, 40 + side * std::sqrt(3.0) / 2}, 6.0, MarkerType::filled_circle}};
	auto const rasters = mark_rasters(t.truth, p);
	t.severity = overlap_severity(rasters);
	t.image = GrayImage(p.width, p.height, 255);
	for (auto const& r : rasters) {
		for (auto const& q : r) { t.image.set(q.x, q.y, 0); }
	}
	return t;
}

} // namespace

TEST(ClassifySingle, PerfectSquare) {
	auto const region = region_of({{{40, 40}, 9.0, MarkerType::filled_square}});
	auto const r = classify_single(region, all_marker_types);
	EXPECT_TRUE(r.is_single);
	EXPECT_EQ(r.best_marker, MarkerType::filled_square);
	EXPECT_LT(r.relative_diff, 0.02);
}

TEST(ClassifySingle, PerfectCircleAndHollowCircle) {
	auto const filled = region_of({{{40, 40}, 8.0, MarkerType::filled_circle}});
	auto const a = classify_single(filled, all_marker_types);
	EXPECT_TRUE(a.is_single);
	EXPECT_EQ(a.best_marker, MarkerType::filled_circle);
	auto const hollow = region_of({{{40, 40}, 8.0, MarkerType::hollow_circle}});
	auto const b = classify_single(hollow, all_marker_types);
	EXPECT_TRUE(b.is_single);
	EXPECT_EQ(b.best_marker, MarkerType::hollow_circle);
	ASSERT_TRUE(b.best_stroke.has_value());
}

TEST(ClassifySingle, DumbbellIsNotSingle) {
	// two disks joined by a one-pixel bridge
	PixelSet px = set_union(testing_support::disk_oracle(20, 20, 6), testing_support::disk_oracle(40, 20, 6));
	PixelSet bridge;
	for (int x = 26; x <= 34; ++x) { bridge.push_back({x, 20}); }
	px = set_union(px, make_pixel_set(bridge));
	auto const regions = connected_regions(px);
	ASSERT_EQ(regions.size(), 1u);
	auto const r = classify_single(regions[0], all_marker_types);
	EXPECT_GT(r.relative_diff, 0.2);
	EXPECT_FALSE(r.is_single);
}

TEST(ClassifySingle, RejectsEmptyInputs) {
	auto const region = region_of({{{10, 10}, 4.0, MarkerType::filled_circle}});
	EXPECT_THROW(static_cast<void>(classify_single(region, std::span<MarkerType const>{})), std::invalid_argument);
	EXPECT_THROW(static_cast<void>(classify_single(BinaryRegion{}, all_marker_types)), std::invalid_argument);
}

TEST(Rsma, IdenticalSingles) {
	std::vector<BinaryRegion> regions(3);
	for (int i = 0; i < 3; ++i) {
		PixelSet px;
		for (int k = 0; k < 120; ++k) { px.push_back({i * 100 + k % 12, k / 12}); }
		regions[static_cast<std::size_t>(i)] = BinaryRegion::from_pixels(px);
	}
	std::vector<SingleCheck> checks(3, SingleCheck{true, MarkerType::filled_square, 0.0, std::nullopt});
	auto const est = rsma_from_checks(regions, checks, 0.5);
	EXPECT_TRUE(est.succeeded);
	EXPECT_DOUBLE_EQ(est.expected_size, 120.0);
	EXPECT_DOUBLE_EQ(est.space_factor, 60.0);
	EXPECT_EQ(est.estimated_marker, MarkerType::filled_square);
}

TEST(Rsma, MixedSizes) {
	auto const small = region_of({{{10, 10}, 5.0, MarkerType::filled_circle}});
	auto const large = region_of({{{60, 10}, 6.0, MarkerType::filled_circle}});
	std::vector<BinaryRegion> regions{small, large};
	std::vector<SingleCheck> checks(2, SingleCheck{true, MarkerType::filled_circle, 0.0, std::nullopt});
	auto const est = rsma_from_checks(regions, checks, 0.5);
	double const mean = 0.5 * static_cast<double>(small.size() + large.size());
	EXPECT_DOUBLE_EQ(est.expected_size, mean);
	EXPECT_DOUBLE_EQ(est.space_factor, 0.5 * mean);

	// the literal {100, 140} arithmetic
	std::vector<BinaryRegion> boxes(2);
	for (int i = 0; i < 2; ++i) {
		PixelSet px;
		int const n = i == 0 ? 100 : 140;
		for (int k = 0; k < n; ++k) { px.push_back({i * 100 + k % 10, k / 10}); }
		boxes[static_cast<std::size_t>(i)] = BinaryRegion::from_pixels(px);
	}
	EXPECT_DOUBLE_EQ(rsma_from_checks(boxes, checks, 0.5).space_factor, 60.0);
}

TEST(Rsma, ClampedBelowSmallestMultiRegion) {
	PixelSet a, b;
	for (int k = 0; k < 400; ++k) { a.push_back({k % 20, k / 20}); }
	for (int k = 0; k < 150; ++k) { b.push_back({100 + k % 15, k / 15}); }
	std::vector<BinaryRegion> regions{BinaryRegion::from_pixels(a), BinaryRegion::from_pixels(b)};
	std::vector<SingleCheck> checks{SingleCheck{true, MarkerType::filled_square, 0.0, std::nullopt},
									SingleCheck{false, MarkerType::filled_square, 0.5, std::nullopt}};
	auto const est = rsma_from_checks(regions, checks, 0.8);
	EXPECT_LT(est.space_factor, 150.0);
	EXPECT_GT(est.space_factor, 149.0);
	EXPECT_GE(max_clusters(150, est.space_factor), 1);
}

TEST(Rsma, FallbackWhenNothingIsSingle) {
	auto const region = region_of({{{10, 10}, 5.0, MarkerType::filled_circle}});
	std::vector<BinaryRegion> regions{region};
	std::vector<SingleCheck> checks{SingleCheck{false, MarkerType::filled_circle, 0.7, std::nullopt}};
	auto const est = rsma_from_checks(regions, checks, 0.8);
	EXPECT_FALSE(est.succeeded);
	EXPECT_DOUBLE_EQ(est.space_factor, 60.0);
	EXPECT_TRUE(est.single_mark_sizes.empty());
	EXPECT_THROW(static_cast<void>(rsma_from_checks(std::span<BinaryRegion const>{}, {}, 0.8)), std::invalid_argument);
}

TEST(Rsma, ModalMarkerAndMedianStroke) {
	std::vector<BinaryRegion> regions;
	for (int i = 0; i < 4; ++i) { regions.push_back(region_of({{{20.0 + 40 * i, 20}, 8.0, MarkerType::hollow_circle}})); }
	std::vector<SingleCheck> checks{SingleCheck{true, MarkerType::hollow_circle, 0.0, 2.0},
									SingleCheck{true, MarkerType::hollow_circle, 0.0, 3.0},
									SingleCheck{true, MarkerType::hollow_square, 0.0, 1.0},
									SingleCheck{true, MarkerType::hollow_circle, 0.0, 4.0}};
	auto const est = rsma_from_checks(regions, checks, 0.8);
	EXPECT_EQ(est.estimated_marker, MarkerType::hollow_circle);
	EXPECT_DOUBLE_EQ(est.estimated_stroke, 2.5);
}

TEST(Rsma, SmallerKappaNeverShrinksSearchSpace) {
	std::vector<Mark> singles;
	for (int i = 0; i < 4; ++i) { singles.push_back({{20.0 + 40 * i, 20}, 6.0, MarkerType::filled_circle}); }
	auto img = draw(240, 120, singles);
	for (auto const& m : std::vector<Mark>{{{40, 80}, 6, MarkerType::filled_circle},
										   {{47, 84}, 6, MarkerType::filled_circle},
										   {{53, 78}, 6, MarkerType::filled_circle},
										   {{150, 80}, 6, MarkerType::filled_circle},
										   {{158, 80}, 6, MarkerType::filled_circle}}) {
		for (auto const& p : rasterize_mark(m, std::nullopt)) { img.set(p.x, p.y, 0); }
	}
	auto const regions = connected_regions(binarize(img, Threshold::automatic()));
	std::vector<SingleCheck> checks;
	for (auto const& r : regions) { checks.push_back(classify_single(r, all_marker_types)); }
	std::vector<int> previous(regions.size(), 0);
	for (double kappa : {2.0, 1.5, 1.0, 0.8, 0.5, 0.3, 0.1}) {
		auto const est = rsma_from_checks(regions, checks, kappa);
		ASSERT_TRUE(est.succeeded);
		for (std::size_t i = 0; i < regions.size(); ++i) {
			int const n0 = max_clusters(regions[i].size(), est.space_factor);
			EXPECT_GE(n0, previous[i]);
			previous[i] = n0;
		}
	}
}

TEST(Locate, DisjointCircles) {
	std::vector<Mark> truth;
	for (int i = 0; i < 5; ++i) { truth.push_back({{30.0 + 50 * i, 40.0 + 7 * i}, 8.0, MarkerType::filled_circle}); }
	auto const img = draw(300, 100, truth);
	auto const out = locate(img, quiet_config());
	ASSERT_EQ(out.marks.size(), 5u);
	for (std::size_t i = 0; i < truth.size(); ++i) {
		auto const& m = out.marks[i].mark;
		EXPECT_NEAR(m.center.x, truth[i].center.x, 0.5);
		EXPECT_NEAR(m.center.y, truth[i].center.y, 0.5);
		EXPECT_NEAR(m.radius, truth[i].radius, 0.5);
		EXPECT_EQ(m.marker, MarkerType::filled_circle);
		EXPECT_TRUE(out.regions[i].single);
	}
}

TEST(Locate, OverlappingTriple) {
	auto const c = overlapping_triple();
	ASSERT_GT(c.severity, 0.1);
	ASSERT_LT(c.severity, 0.2);
	auto const out = locate(c.image, quiet_config(3));
	ASSERT_EQ(out.regions.size(), 1u);
	EXPECT_EQ(out.marks.size(), 3u);
	auto const truth = centers(std::span<Mark const>(c.truth));
	auto const predicted = centers(std::span<LocatedMark const>(out.marks));
	EXPECT_GE(acb_score(truth, predicted, 1.0).score, 0.95);
}

TEST(Locate, BlankImageGivesNothing) {
	GrayImage const img(64, 64, 255);
	auto const out = locate(img, quiet_config());
	EXPECT_TRUE(out.marks.empty());
	EXPECT_TRUE(out.regions.empty());
}

TEST(Locate, RegionInvariants) {
	GeneratorParams p;
	p.width = 200;
	p.height = 200;
	auto const c = generate_case(MarkerType::filled_diamond, 40, Distribution::gaussian_blobs, p, 17);
	auto const out = locate(c.image, quiet_config(5));
	ASSERT_FALSE(out.regions.empty());
	EXPECT_GE(out.marks.size(), out.regions.size());
	std::vector<int> per_region(out.regions.size(), 0);
	for (auto const& m : out.marks) {
		auto const& rep = out.regions[static_cast<std::size_t>(m.region_id)];
		++per_region[static_cast<std::size_t>(m.region_id)];
		double const reach = m.mark.radius + 1e-9;
		EXPECT_GE(m.mark.center.x, rep.box.min_x - reach);
		EXPECT_LE(m.mark.center.x, rep.box.max_x + reach);
		EXPECT_GE(m.mark.center.y, rep.box.min_y - reach);
		EXPECT_LE(m.mark.center.y, rep.box.max_y + reach);
	}
	for (std::size_t i = 0; i < out.regions.size(); ++i) {
		auto const& rep = out.regions[i];
		EXPECT_GE(rep.n, 1);
		EXPECT_LE(rep.n, rep.n_max);
		EXPECT_EQ(per_region[i], rep.n);
	}
}

TEST(Locate, Deterministic) {
	GeneratorParams p;
	p.width = 200;
	p.height = 200;
	auto const c = generate_case(MarkerType::hollow_square, 40, Distribution::hypercube_classes, p, 4);
	auto a = quiet_config(9);
	auto b = quiet_config(9);
	b.threads = 2;
	auto const ra = locate(c.image, a);
	auto const rb = locate(c.image, b);
	ASSERT_EQ(ra.marks.size(), rb.marks.size());
	for (std::size_t i = 0; i < ra.marks.size(); ++i) {
		EXPECT_EQ(ra.marks[i].mark.center.x, rb.marks[i].mark.center.x);
		EXPECT_EQ(ra.marks[i].mark.center.y, rb.marks[i].mark.center.y);
		EXPECT_EQ(ra.marks[i].mark.radius, rb.marks[i].mark.radius);
		EXPECT_EQ(ra.marks[i].mark.marker, rb.marks[i].mark.marker);
		EXPECT_EQ(ra.marks[i].region_id, rb.marks[i].region_id);
	}
}

TEST(Locate, RestrictsToModalMarker) {
	std::vector<Mark> marks;
	for (int i = 0; i < 4; ++i) { marks.push_back({{20.0 + 40 * i, 20}, 7.0, MarkerType::filled_triangle_up}); }
	marks.push_back({{60, 70}, 7.0, MarkerType::filled_triangle_up});
	marks.push_back({{68, 72}, 7.0, MarkerType::filled_triangle_up});
	auto const img = draw(200, 100, marks);
	auto const out = locate(img, quiet_config(2));
	for (auto const& m : out.marks) { EXPECT_EQ(m.mark.marker, MarkerType::filled_triangle_up); }
}

TEST(Locate, EmptyMarkerSetIsAnError) {
	auto const img = draw(60, 60, {{{30, 30}, 6.0, MarkerType::filled_circle}});
	auto c = quiet_config();
	c.markers.clear();
	EXPECT_THROW(static_cast<void>(locate(img, c)), std::invalid_argument);
}
