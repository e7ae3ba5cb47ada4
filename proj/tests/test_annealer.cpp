#include "support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

using namespace markloc;
using testing_support::region_of;

namespace {

constexpr std::array<MarkerType, 3> three_markers{MarkerType::filled_circle, MarkerType::filled_square,
												  MarkerType::filled_diamond};

BinaryRegion cluster_region(std::uint32_t seed, int marks) {
	std::mt19937 rng(seed);
	std::uniform_real_distribution<double> pos(40.0, 60.0);
	std::vector<Mark> ms;
	for (int i = 0; i < marks; ++i) { ms.push_back({{pos(rng), pos(rng)}, 6.0, MarkerType::filled_circle}); }
	return region_of(ms);
}

} // namespace

TEST(Propose, StaysInRange) {
	Rng rng(1);
	for (int n_max : {1, 2, 7, 60}) {
		for (int count : {1, 3, 11}) {
			for (int i = 0; i < 2000; ++i) {
				int const n = 1 + i % n_max;
				auto const p = propose(n, i % count, n_max, count, rng);
				EXPECT_GE(p.n, 1);
				EXPECT_LE(p.n, n_max);
				EXPECT_GE(p.marker_index, 0);
				EXPECT_LT(p.marker_index, count);
			}
		}
	}
}

TEST(Propose, DegenerateSpace) {
	Rng rng(5);
	for (int i = 0; i < 100; ++i) { EXPECT_EQ(propose(1, 0, 1, 1, rng), (Proposal{1, 0})); }
}

TEST(Propose, StepSpreadMatchesSigma) {
	// n = 30 with N₀ = 60 rarely wraps, so the raw step is recoverable; truncation adds < 1 of jitter
	Rng gen(11);
	Rng rng(11);
	double sum = 0.0;
	double sum_sq = 0.0;
	int const draws = 100000;
	for (int i = 0; i < draws; ++i) {
		// fresh distributions per draw, as inside propose
		double const step = std::normal_distribution<double>(0.0, 10.0)(gen);
		static_cast<void>(std::normal_distribution<double>(0.0, 1.0 / 6.0)(gen));
		auto const p = propose(30, 0, 60, 1, rng);
		// same stream, so the proposal is the truncated, wrapped step
		long long const raw = static_cast<long long>(std::trunc(30 + step));
		EXPECT_EQ(p.n, static_cast<int>((((raw - 1) % 60) + 60) % 60 + 1));
		sum += step;
		sum_sq += step * step;
	}
	double const mean = sum / draws;
	double const sd = std::sqrt(sum_sq / draws - mean * mean);
	EXPECT_NEAR(sd, 10.0, 0.5);
}

TEST(Propose, ObservedDeltaSpread) {
	Rng rng(23);
	double sum = 0.0;
	double sum_sq = 0.0;
	int const draws = 100000;
	for (int i = 0; i < draws; ++i) {
		auto const p = propose(30, 0, 60, 1, rng);
		double const d = p.n - 30;
		sum += d;
		sum_sq += d * d;
	}
	double const mean = sum / draws;
	double const sd = std::sqrt(sum_sq / draws - mean * mean);
	EXPECT_NEAR(sd, 10.0, 0.5);
}

TEST(Propose, RejectsEmptySpace) {
	Rng rng(1);
	EXPECT_THROW(static_cast<void>(propose(1, 0, 0, 1, rng)), std::invalid_argument);
	EXPECT_THROW(static_cast<void>(propose(1, 0, 3, 0, rng)), std::invalid_argument);
}

TEST(Schedule, Lengths) {
	EXPECT_EQ(schedule_length(1.5, 1, 1, LogBase::natural), 1);
	// 1.5 ln 30 = 5.10
	EXPECT_EQ(schedule_length(1.5, 10, 3, LogBase::natural), 6);
	// 1.5 log10 30 = 2.22
	EXPECT_EQ(schedule_length(1.5, 10, 3, LogBase::base10), 3);
	EXPECT_EQ(schedule_length(1.0, 2, 1, LogBase::natural), 1);
}

TEST(Anneal, SingleClusterSpaceStopsAtInitialization) {
	auto const region = region_of({{{30, 30}, 4.0, MarkerType::filled_circle}});
	RegionObjective obj(region, {}, 3);
	ASSERT_EQ(obj.n_max(), 1);
	AnnealParams p;
	p.record_steps = true;
	auto const r = anneal(obj, three_markers, p);
	EXPECT_EQ(r.best_n, 1);
	double best = obj.loss(1, three_markers[0]);
	MarkerType best_m = three_markers[0];
	for (auto m : three_markers) {
		if (obj.loss(1, m) < best) {
			best = obj.loss(1, m);
			best_m = m;
		}
	}
	EXPECT_EQ(r.best_m, best_m);
	EXPECT_EQ(r.best_loss, best);
	EXPECT_EQ(r.evaluations, three_markers.size());
	// every proposal in a one-cluster space lands on an already evaluated state
	for (auto const& s : r.step_log) { EXPECT_EQ(s.n, 1); }
}

TEST(Anneal, BestNeverIncreases) {
	for (std::uint32_t seed = 0; seed < 5; ++seed) {
		auto const region = cluster_region(seed, 6);
		RegionObjective obj(region, {1.1, 1.0, 20.0}, seed);
		AnnealParams p;
		p.seed = seed;
		p.record_steps = true;
		auto const r = anneal(obj, three_markers, p);
		ASSERT_FALSE(r.trace.empty());
		for (std::size_t i = 1; i < r.trace.size(); ++i) { EXPECT_LE(r.trace[i].best_loss, r.trace[i - 1].best_loss); }
		for (auto const& t : r.trace) { EXPECT_LE(t.best_loss, t.current_loss); }
		for (auto const& s : r.step_log) { EXPECT_LE(r.best_loss, s.proposed_loss); }
		EXPECT_EQ(r.best_loss, r.trace.back().best_loss);
		EXPECT_EQ(r.best_loss, obj.loss(r.best_n, r.best_m));
	}
}

TEST(Anneal, CoolingScheduleAndAcceptanceRule) {
	auto const region = cluster_region(4, 6);
	RegionObjective obj(region, {1.1, 1.0, 20.0}, 4);
	AnnealParams p;
	p.seed = 9;
	p.record_steps = true;
	auto const r = anneal(obj, three_markers, p);
	double const t0 = obj.n_max();
	ASSERT_FALSE(r.trace.empty());
	EXPECT_EQ(r.trace.front().temperature, t0);
	for (std::size_t i = 1; i < r.trace.size(); ++i) {
		EXPECT_NEAR(r.trace[i].temperature, t0 / (1.0 + std::log(1.0 + static_cast<double>(i - 1))), 1e-12);
	}
	EXPECT_EQ(r.step_log.size(), r.trace.size() * static_cast<std::size_t>(r.markov_length));
	for (auto const& s : r.step_log) {
		if (s.proposed_loss < s.current_loss) { EXPECT_TRUE(s.accepted); }
	}
}

TEST(Anneal, ZeroTemperatureIsGreedy) {
	for (std::uint32_t seed = 0; seed < 5; ++seed) {
		auto const region = cluster_region(seed + 20, 7);
		RegionObjective obj(region, {1.1, 1.0, 20.0}, seed);
		AnnealParams p;
		p.seed = seed;
		p.initial_temperature = 1e-9;
		p.t_min = 0.0;
		p.record_steps = true;
		auto const r = anneal(obj, three_markers, p);
		ASSERT_FALSE(r.step_log.empty());
		for (auto const& s : r.step_log) {
			if (s.proposed_loss > s.current_loss) { EXPECT_FALSE(s.accepted); }
		}
		for (std::size_t i = 1; i < r.trace.size(); ++i) {
			EXPECT_LE(r.trace[i].current_loss, r.trace[i - 1].current_loss);
		}
	}
}

TEST(Anneal, Reproducible) {
	auto const region = cluster_region(8, 8);
	AnnealParams p;
	p.seed = 42;
	p.record_steps = true;
	RegionObjective a(region, {1.1, 1.0, 15.0}, 1);
	RegionObjective b(region, {1.1, 1.0, 15.0}, 1);
	auto const ra = anneal(a, three_markers, p);
	auto const rb = anneal(b, three_markers, p);
	EXPECT_EQ(ra.best_n, rb.best_n);
	EXPECT_EQ(ra.best_m, rb.best_m);
	EXPECT_EQ(ra.best_loss, rb.best_loss);
	EXPECT_EQ(ra.evaluations, rb.evaluations);
	ASSERT_EQ(ra.step_log.size(), rb.step_log.size());
	for (std::size_t i = 0; i < ra.step_log.size(); ++i) {
		EXPECT_EQ(ra.step_log[i].n, rb.step_log[i].n);
		EXPECT_EQ(ra.step_log[i].marker_index, rb.step_log[i].marker_index);
		EXPECT_EQ(ra.step_log[i].accepted, rb.step_log[i].accepted);
	}
}

TEST(Anneal, EvaluationBudget) {
	for (std::uint32_t seed = 0; seed < 6; ++seed) {
		auto const region = cluster_region(seed + 40, 8);
		RegionObjective obj(region, {1.1, 1.0, 15.0}, seed);
		AnnealParams p;
		p.seed = seed;
		auto const r = anneal(obj, three_markers, p);
		EXPECT_LE(r.evaluations, three_markers.size() + r.temperature_steps * static_cast<std::size_t>(r.markov_length));
		EXPECT_EQ(r.steps, r.temperature_steps * static_cast<std::size_t>(r.markov_length));
		EXPECT_LE(r.evaluations, static_cast<std::size_t>(obj.n_max()) * three_markers.size());
	}
}

TEST(Anneal, StopsAfterStaleTemperatures) {
	auto const region = cluster_region(3, 6);
	RegionObjective obj(region, {1.1, 1.0, 20.0}, 3);
	AnnealParams p;
	p.seed = 5;
	p.t_min = 0.0;
	auto const r = anneal(obj, three_markers, p);
	ASSERT_GE(r.trace.size(), static_cast<std::size_t>(r.stop_length));
	// the last S_s temperatures did not improve the global best
	double const final_best = r.trace.back().best_loss;
	std::size_t const first_stale = r.trace.size() - static_cast<std::size_t>(r.stop_length);
	for (std::size_t i = first_stale; i < r.trace.size(); ++i) { EXPECT_EQ(r.trace[i].best_loss, final_best); }
}

TEST(Anneal, MatchesExhaustiveMostOfTheTime) {
	auto const region = cluster_region(77, 7);
	RegionObjective reference(region, {1.1, 1.0, 40.0}, 0);
	ASSERT_LE(reference.n_max(), 15);
	auto const exact = exhaustive_search(reference, three_markers);
	int hits = 0;
	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		RegionObjective obj(region, {1.1, 1.0, 40.0}, 0);
		AnnealParams p;
		p.seed = seed;
		auto const r = anneal(obj, three_markers, p);
		EXPECT_GE(r.best_loss, exact.best_loss);
		if (r.best_loss == exact.best_loss) { ++hits; }
	}
	EXPECT_GE(hits, 18);
}

TEST(Exhaustive, EnumeratesEveryState) {
	auto const region = cluster_region(5, 5);
	RegionObjective obj(region, {1.1, 1.0, 30.0}, 2);
	auto const r = exhaustive_search(obj, three_markers);
	EXPECT_EQ(r.evaluations, static_cast<std::size_t>(obj.n_max()) * three_markers.size());
	for (int n = 1; n <= obj.n_max(); ++n) {
		for (auto m : three_markers) { EXPECT_LE(r.best_loss, obj.loss(n, m)); }
	}
	EXPECT_EQ(r.best_loss, obj.loss(r.best_n, r.best_m));
}

TEST(Anneal, RejectsEmptyMarkerSet) {
	auto const region = cluster_region(1, 3);
	RegionObjective obj(region, {}, 0);
	EXPECT_THROW(static_cast<void>(anneal(obj, std::span<MarkerType const>{}, {})), std::invalid_argument);
	EXPECT_THROW(static_cast<void>(exhaustive_search(obj, std::span<MarkerType const>{})), std::invalid_argument);
}
