// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "objective.hpp"
#include "random.hpp"
#include "revis.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace markloc {

enum class LogBase { natural, base10 };

struct AnnealParams {
	double gamma_s = 1.5; // stop-criterion coefficient
	double gamma_m = 1.5; // Markov-chain length coefficient
	double c_sigma = 6.0; // neighbourhood width divisor
	double t_min = 0.1;
	std::uint64_t seed = 0;
	/// Starting temperature; N₀ when unset.
	std::optional<double> initial_temperature;
	LogBase log_base = LogBase::natural;
	/// Identical proposals are redrawn this many times before the step becomes a self-loop.
	int max_redraws = 5;
	bool record_steps = false;
};

/// One proposal and its fate, recorded when AnnealParams::record_steps is set.
struct AnnealStep {
	int n{};
	int marker_index{};
	double current_loss{};
	double proposed_loss{};
	double temperature{};
	bool accepted{};
};

/// Walker and global best after each temperature.
struct TemperatureRecord {
	int t_c{};
	double temperature{};
	double current_loss{};
	double best_loss{};
};

struct AnnealResult {
	int best_n{};
	MarkerType best_m{};
	double best_loss{};
	std::size_t evaluations{};		 // distinct (n, m) losses computed
	std::size_t steps{};			 // proposals made in the Markov chains
	std::size_t temperature_steps{}; // outer-loop iterations
	int markov_length{};			 // S_m
	int stop_length{};				 // S_s
	std::vector<TemperatureRecord> trace;
	std::vector<AnnealStep> step_log;
};

/// ceil(gamma * log(N₀ · |𝕊|)), at least 1.
[[nodiscard]] inline int schedule_length(double gamma, int n_max, std::size_t marker_count, LogBase base) {
	double const space = static_cast<double>(n_max) * static_cast<double>(marker_count);
	double const lg = base == LogBase::natural ? std::log(space) : std::log10(space);
	return std::max(1, static_cast<int>(std::ceil(gamma * lg - 1e-12)));
}

struct Proposal {
	int n{};
	int marker_index{};
	friend constexpr bool operator==(Proposal const&, Proposal const&) = default;
};

/// Gaussian neighbour of (n, marker_index): independent steps with standard
/// deviations N₀/c_σ and |𝕊|/c_σ, truncated toward zero, wrapped back into
/// [1, N₀] × [0, |𝕊|-1].
[[nodiscard]] inline Proposal propose(int n, int marker_index, int n_max, int marker_count, Rng& rng,
									  double c_sigma = 6.0) {
	if (n_max < 1 || marker_count < 1) { throw std::invalid_argument("propose: empty search space"); }
	std::normal_distribution<double> dn(0.0, static_cast<double>(n_max) / c_sigma);
	std::normal_distribution<double> dm(0.0, static_cast<double>(marker_count) / c_sigma);
	double const step_n = dn(rng);
	double const step_m = dm(rng);
	auto wrap = [](long long v, long long mod) { return ((v % mod) + mod) % mod; };
	auto const raw_n = static_cast<long long>(std::trunc(n + step_n));
	auto const raw_m = static_cast<long long>(std::trunc(marker_index + step_m));
	return {static_cast<int>(wrap(raw_n - 1, n_max) + 1), static_cast<int>(wrap(raw_m, marker_count))};
}

/// Adaptive simulated annealing over (n, m) minimizing the region loss.
[[nodiscard]] inline AnnealResult anneal(RegionObjective& objective, std::span<MarkerType const> markers,
										 AnnealParams const& params) {
	if (markers.empty()) { throw std::invalid_argument("anneal: marker set is empty"); }
	auto const marker_count = static_cast<int>(markers.size());
	int const n_max = objective.n_max();
	std::size_t const evaluations_before = objective.evaluations();

	AnnealResult result;
	double const t0 = params.initial_temperature.value_or(static_cast<double>(n_max));
	result.stop_length = schedule_length(params.gamma_s, n_max, markers.size(), params.log_base);
	result.markov_length = schedule_length(params.gamma_m, n_max, markers.size(), params.log_base);

	auto loss_of = [&](Proposal p) { return objective.loss(p.n, markers[static_cast<std::size_t>(p.marker_index)]); };

	// start from the best marker at n = 1
	Proposal current{1, 0};
	double current_loss = loss_of(current);
	for (int i = 1; i < marker_count; ++i) {
		double const l = loss_of({1, i});
		if (l < current_loss) {
			current_loss = l;
			current = {1, i};
		}
	}
	Proposal best = current;
	double best_loss = current_loss;
	double previous_best = best_loss;

	Rng rng(params.seed);
	std::uniform_real_distribution<double> uniform(0.0, 1.0);
	double temperature = t0;
	int stale = 0; // temperatures without a global-best improvement
	int t_c = 0;
	while (temperature > params.t_min && stale < result.stop_length) {
		for (int i = 0; i < result.markov_length; ++i) {
			Proposal next = propose(current.n, current.marker_index, n_max, marker_count, rng, params.c_sigma);
			for (int redraw = 0; redraw < params.max_redraws && next == current; ++redraw) {
				next = propose(current.n, current.marker_index, n_max, marker_count, rng, params.c_sigma);
			}
			double const next_loss = loss_of(next);
			++result.steps;
			double const p = std::min(1.0, std::exp(-(next_loss - current_loss) / temperature));
			double const r = uniform(rng);
			if (next_loss < best_loss) {
				best = next;
				best_loss = next_loss;
			}
			bool const accepted = next_loss < current_loss || p > r;
			if (params.record_steps) {
				result.step_log.push_back({next.n, next.marker_index, current_loss, next_loss, temperature, accepted});
			}
			if (accepted) {
				current = next;
				current_loss = next_loss;
			}
		}
		result.trace.push_back({t_c, temperature, current_loss, best_loss});
		stale = best_loss < previous_best ? 0 : stale + 1;
		temperature = t0 / (1.0 + std::log(1.0 + t_c));
		++t_c;
		previous_best = best_loss;
	}

	result.best_n = best.n;
	result.best_m = markers[static_cast<std::size_t>(best.marker_index)];
	result.best_loss = best_loss;
	result.temperature_steps = static_cast<std::size_t>(t_c);
	result.evaluations = objective.evaluations() - evaluations_before;
	return result;
}

struct ExhaustiveResult {
	int best_n{};
	MarkerType best_m{};
	double best_loss{std::numeric_limits<double>::infinity()};
	std::size_t evaluations{};
};

/// Brute-force minimum over every (n, m); ties keep the smallest n, then the earlier marker.
[[nodiscard]] inline ExhaustiveResult exhaustive_search(RegionObjective& objective, std::span<MarkerType const> markers) {
	if (markers.empty()) { throw std::invalid_argument("exhaustive_search: marker set is empty"); }
	ExhaustiveResult out;
	for (int n = 1; n <= objective.n_max(); ++n) {
		for (auto m : markers) {
			double const l = objective.loss(n, m);
			++out.evaluations;
			if (l < out.best_loss) {
				out.best_loss = l;
				out.best_n = n;
				out.best_m = m;
			}
		}
	}
	return out;
}

} // namespace markloc
