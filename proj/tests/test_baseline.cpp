#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <tuple>

using namespace markloc;
using testing_support::draw;

TEST(Kernel, TapsAreNormalizedAndSymmetric) {
	for (int k : {3, 5, 9, 15}) {
		auto const t = gaussian_taps(k);
		ASSERT_EQ(t.size(), static_cast<std::size_t>(k));
		EXPECT_NEAR(std::accumulate(t.begin(), t.end(), 0.0), 1.0, 1e-12);
		for (std::size_t i = 0; i < t.size(); ++i) { EXPECT_DOUBLE_EQ(t[i], t[t.size() - 1 - i]); }
		// σ = k/4 oracle
		double const sigma = k / 4.0;
		int const h = k / 2;
		EXPECT_NEAR(t[static_cast<std::size_t>(h + 1)] / t[static_cast<std::size_t>(h)],
					std::exp(-1.0 / (2 * sigma * sigma)), 1e-12);
	}
}

TEST(Kernel, FromExpectedSize) {
	// k = round(2·sqrt(E/π)): the diameter of a disk with area E
	EXPECT_EQ(kernel_from_size(std::acos(-1.0) * 36.0), 12);
	EXPECT_EQ(kernel_from_size(113.0), 12);
	EXPECT_EQ(kernel_from_size(201.0), 16);
}

TEST(Filter, PreservesConstantImage) {
	std::vector<double> const flat(20 * 15, 3.5);
	auto const out = gaussian_filter(flat, 20, 15, 7);
	// zero padding only touches the 3-pixel border
	for (int y = 3; y < 12; ++y) {
		for (int x = 3; x < 17; ++x) { EXPECT_NEAR(out[static_cast<std::size_t>(y * 20 + x)], 3.5, 1e-12); }
	}
	EXPECT_LT(out[0], 3.5);
}

TEST(FilterLocate, OnePeakPerDisjointCircle) {
	std::vector<Mark> truth;
	for (int i = 0; i < 4; ++i) { truth.push_back({{30.0 + 45 * i, 50.0}, 7.0, MarkerType::filled_circle}); }
	auto const img = draw(200, 100, truth);
	FilterConfig cfg;
	cfg.kernel_size = 14;
	auto const out = filter_locate(img, cfg);
	ASSERT_EQ(out.marks.size(), truth.size());
	auto const pred = centers(std::span<LocatedMark const>(out.marks));
	for (auto const& t : truth) {
		double best = 1e9;
		for (auto const& p : pred) { best = std::min(best, std::hypot(p.x - t.center.x, p.y - t.center.y)); }
		EXPECT_LE(best, 1.0);
	}
}

TEST(FilterLocate, TwoSeparatedCirclesGiveTwoPeaks) {
	auto const img = draw(120, 60, {{{40, 30}, 8.0, MarkerType::filled_circle}, {{62, 30}, 8.0, MarkerType::filled_circle}});
	FilterConfig cfg;
	cfg.kernel_size = 16;
	auto const out = filter_locate(img, cfg);
	EXPECT_EQ(out.marks.size(), 2u);
}

TEST(FilterLocate, TranslationInvariant) {
	std::vector<Mark> marks{{{40, 40}, 6.0, MarkerType::filled_square},
							{{52, 44}, 6.0, MarkerType::filled_square},
							{{90, 70}, 6.0, MarkerType::filled_square}};
	std::vector<Mark> shifted = marks;
	for (auto& m : shifted) {
		m.center.x += 17;
		m.center.y += 9;
	}
	FilterConfig cfg;
	cfg.kernel_size = 12;
	auto const a = filter_locate(draw(160, 120, marks), cfg);
	auto const b = filter_locate(draw(160, 120, shifted), cfg);
	ASSERT_EQ(a.marks.size(), b.marks.size());
	auto pa = centers(std::span<LocatedMark const>(a.marks));
	auto pb = centers(std::span<LocatedMark const>(b.marks));
	auto by_xy = [](Point2 l, Point2 r) { return std::tie(l.x, l.y) < std::tie(r.x, r.y); };
	std::sort(pa.begin(), pa.end(), by_xy);
	std::sort(pb.begin(), pb.end(), by_xy);
	for (std::size_t i = 0; i < pa.size(); ++i) {
		EXPECT_NEAR(pb[i].x - pa[i].x, 17.0, 1e-9);
		EXPECT_NEAR(pb[i].y - pa[i].y, 9.0, 1e-9);
	}
}

TEST(FilterLocate, BlankImage) {
	GrayImage const img(50, 50, 255);
	FilterConfig cfg;
	cfg.kernel_size = 9;
	EXPECT_TRUE(filter_locate(img, cfg).marks.empty());
}
