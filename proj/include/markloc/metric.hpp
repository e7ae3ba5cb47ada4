// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "assignment.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace markloc {

/// Symmetric 2×2 matrix [[xx, xy], [xy, yy]].
struct Sym2 {
	double xx{};
	double xy{};
	double yy{};

	[[nodiscard]] double det() const { return xx * yy - xy * xy; }
	[[nodiscard]] double trace() const { return xx + yy; }
	[[nodiscard]] Sym2 inverse() const {
		double const d = det();
		return {yy / d, -xy / d, xx / d};
	}
};

/// Population covariance of a point set.
[[nodiscard]] inline Sym2 covariance(std::span<Point2 const> points) {
	if (points.empty()) { throw std::invalid_argument("covariance: no points"); }
	double mx = 0.0;
	double my = 0.0;
	for (auto const& p : points) {
		mx += p.x;
		my += p.y;
	}
	auto const count = static_cast<double>(points.size());
	mx /= count;
	my /= count;
	Sym2 c;
	for (auto const& p : points) {
		c.xx += (p.x - mx) * (p.x - mx);
		c.xy += (p.x - mx) * (p.y - my);
		c.yy += (p.y - my) * (p.y - my);
	}
	c.xx /= count;
	c.xy /= count;
	c.yy /= count;
	return c;
}

/// min(1, sqrt((p-g)ᵀ V⁻¹ (p-g)) / λ).
[[nodiscard]] inline double capped_distance(Point2 p, Point2 g, Sym2 const& inv_cov, double lambda) {
	if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(g.x) || !std::isfinite(g.y) ||
		!std::isfinite(inv_cov.xx) || !std::isfinite(inv_cov.xy) || !std::isfinite(inv_cov.yy) ||
		!std::isfinite(lambda)) {
		throw std::invalid_argument("capped_distance: non-finite input");
	}
	if (!(lambda > 0.0)) { throw std::invalid_argument("capped_distance: lambda must be > 0"); }
	double const dx = p.x - g.x;
	double const dy = p.y - g.y;
	double const q = inv_cov.xx * dx * dx + 2.0 * inv_cov.xy * dx * dy + inv_cov.yy * dy * dy;
	return std::min(1.0, std::sqrt(std::max(0.0, q)) / lambda);
}

struct MatchedPair {
	int truth{};
	int predicted{};
	double distance{};
};

struct AcbReport {
	double score{};
	double lambda{};
	std::size_t pair_count{}; // matched (non-padding) pairs
	double cost{};
	std::vector<MatchedPair> pairs;
	bool regularized{}; // covariance was singular and got a ridge
};

/// The metric's cost matrix: capped distances, padded to square with 1.
/// Rows are truth marks, columns predictions.
[[nodiscard]] inline CostMatrix acb_cost_matrix(std::span<Point2 const> truth, std::span<Point2 const> predicted,
												Sym2 const& inv_cov, double lambda) {
	std::size_t const side = std::max(truth.size(), predicted.size());
	CostMatrix cost(side, 1.0);
	for (std::size_t i = 0; i < truth.size(); ++i) {
		for (std::size_t j = 0; j < predicted.size(); ++j) {
			cost(i, j) = capped_distance(predicted[j], truth[i], inv_cov, lambda);
		}
	}
	return cost;
}

/// Covariance inverse with a ridge of 1e-6·trace/2 (at least 1e-6) when the
/// covariance of the truth centers is singular.
[[nodiscard]] inline Sym2 truth_inverse_covariance(std::span<Point2 const> truth, bool* regularized = nullptr) {
	Sym2 v = covariance(truth);
	double const scale = v.trace() / 2.0;
	bool const singular = !(v.det() > 1e-12 * std::max(scale * scale, 1e-300));
	if (singular) {
		double const eps = std::max(1e-6 * scale, 1e-6);
		v.xx += eps;
		v.yy += eps;
	}
	if (regularized != nullptr) { *regularized = singular; }
	return v.inverse();
}

/// Assignment-cost-based score of predicted mark centers against truth.
[[nodiscard]] inline AcbReport acb_score(std::span<Point2 const> truth, std::span<Point2 const> predicted,
										 double lambda) {
	if (truth.empty()) { throw std::invalid_argument("acb_score: ground truth is empty"); }
	AcbReport report;
	report.lambda = lambda;
	Sym2 const inv = truth_inverse_covariance(truth, &report.regularized);
	CostMatrix const cost = acb_cost_matrix(truth, predicted, inv, lambda);
	Assignment const a = solve_assignment(cost);
	report.cost = a.cost;
	for (std::size_t i = 0; i < truth.size(); ++i) {
		auto const j = static_cast<std::size_t>(a.row_to_col[i]);
		if (j < predicted.size()) {
			report.pairs.push_back({static_cast<int>(i), static_cast<int>(j), cost(i, j)});
		}
	}
	report.pair_count = report.pairs.size();
	report.score = 1.0 - report.cost / static_cast<double>(cost.size());
	report.score = std::clamp(report.score, 0.0, 1.0);
	return report;
}

} // namespace markloc
