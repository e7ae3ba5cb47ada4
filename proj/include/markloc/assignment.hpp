// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace markloc {

/// Dense square cost matrix, row-major.
class CostMatrix {
  public:
	explicit CostMatrix(std::size_t n, double fill = 0.0) : m_n(n), m_data(n * n, fill) {}

	[[nodiscard]] std::size_t size() const { return m_n; }
	[[nodiscard]] double& operator()(std::size_t r, std::size_t c) { return m_data[r * m_n + c]; }
	[[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return m_data[r * m_n + c]; }

  private:
	std::size_t m_n;
	std::vector<double> m_data;
};

struct Assignment {
	std::vector<int> row_to_col;
	double cost{}; // summed in row order
};

/// Minimum-cost perfect assignment (Hungarian method with row/column
/// potentials and shortest augmenting paths, O(n³)).
[[nodiscard]] inline Assignment solve_assignment(CostMatrix const& cost) {
	std::size_t const n = cost.size();
	Assignment out;
	out.row_to_col.assign(n, -1);
	if (n == 0) { return out; }
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = 0; j < n; ++j) {
			if (!std::isfinite(cost(i, j))) { throw std::invalid_argument("solve_assignment: non-finite cost"); }
		}
	}
	constexpr double inf = std::numeric_limits<double>::infinity();
	// 1-based: column 0 is a virtual source
	std::vector<double> u(n + 1, 0.0);
	std::vector<double> v(n + 1, 0.0);
	std::vector<std::size_t> row_of(n + 1, 0);
	std::vector<std::size_t> way(n + 1, 0);
	for (std::size_t i = 1; i <= n; ++i) {
		row_of[0] = i;
		std::size_t j0 = 0;
		std::vector<double> minv(n + 1, inf);
		std::vector<char> used(n + 1, 0);
		do {
			used[j0] = 1;
			std::size_t const i0 = row_of[j0];
			double delta = inf;
			std::size_t j1 = 0;
			for (std::size_t j = 1; j <= n; ++j) {
				if (used[j]) { continue; }
				double const cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
				if (cur < minv[j]) {
					minv[j] = cur;
					way[j] = j0;
				}
				if (minv[j] < delta) {
					delta = minv[j];
					j1 = j;
				}
			}
			for (std::size_t j = 0; j <= n; ++j) {
				if (used[j]) {
					u[row_of[j]] += delta;
					v[j] -= delta;
				} else {
					minv[j] -= delta;
				}
			}
			j0 = j1;
		} while (row_of[j0] != 0);
		do {
			std::size_t const j1 = way[j0];
			row_of[j0] = row_of[j1];
			j0 = j1;
		} while (j0 != 0);
	}
	for (std::size_t j = 1; j <= n; ++j) { out.row_to_col[row_of[j] - 1] = static_cast<int>(j - 1); }
	for (std::size_t i = 0; i < n; ++i) { out.cost += cost(i, static_cast<std::size_t>(out.row_to_col[i])); }
	return out;
}

} // namespace markloc
