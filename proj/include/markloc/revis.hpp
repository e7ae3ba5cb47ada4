// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include "clustering.hpp"
#include "geometry.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace markloc {

enum class MarkerType {
	filled_circle,
	hollow_circle,
	filled_square,
	hollow_square,
	filled_diamond,
	hollow_diamond,
	filled_triangle_up,
	hollow_triangle_up,
	filled_triangle_down,
	hollow_triangle_down,
	plus,
};

inline constexpr std::size_t marker_type_count = 11;

inline constexpr std::array<MarkerType, marker_type_count> all_marker_types{
	MarkerType::filled_circle,		  MarkerType::hollow_circle,		MarkerType::filled_square,
	MarkerType::hollow_square,		  MarkerType::filled_diamond,		MarkerType::hollow_diamond,
	MarkerType::filled_triangle_up,	  MarkerType::hollow_triangle_up,	MarkerType::filled_triangle_down,
	MarkerType::hollow_triangle_down, MarkerType::plus,
};

inline constexpr std::array<std::string_view, marker_type_count> marker_names{
	"filled_circle",	  "hollow_circle",		  "filled_square",		  "hollow_square",
	"filled_diamond",	  "hollow_diamond",		  "filled_triangle_up",	  "hollow_triangle_up",
	"filled_triangle_down", "hollow_triangle_down", "plus",
};

[[nodiscard]] constexpr std::string_view to_string(MarkerType m) { return marker_names[static_cast<std::size_t>(m)]; }

[[nodiscard]] inline MarkerType parse_marker(std::string_view name) {
	for (std::size_t i = 0; i < marker_type_count; ++i) {
		if (marker_names[i] == name) { return all_marker_types[i]; }
	}
	throw std::invalid_argument("unknown marker type '" + std::string(name) + "'");
}

[[nodiscard]] constexpr bool is_hollow(MarkerType m) {
	switch (m) {
	case MarkerType::hollow_circle:
	case MarkerType::hollow_square:
	case MarkerType::hollow_diamond:
	case MarkerType::hollow_triangle_up:
	case MarkerType::hollow_triangle_down: return true;
	default: return false;
	}
}

/// One rendered data point. `radius` is the circumscribed radius: the circle's
/// radius, half the diagonal of a square or diamond, the circumradius of a
/// triangle, the half-length of a plus bar.
struct Mark {
	Point2 center;
	double radius{};
	MarkerType marker{MarkerType::filled_circle};
};

inline constexpr double default_stroke_width = 2.0;

namespace detail {

inline constexpr double shape_eps = 1e-9;
inline constexpr double sqrt2 = 1.4142135623730951;
inline constexpr double sqrt3_2 = 0.8660254037844386;

enum class Shape { circle, square, diamond, triangle_up, triangle_down, plus };

constexpr Shape shape_of(MarkerType m) {
	switch (m) {
	case MarkerType::filled_circle:
	case MarkerType::hollow_circle: return Shape::circle;
	case MarkerType::filled_square:
	case MarkerType::hollow_square: return Shape::square;
	case MarkerType::filled_diamond:
	case MarkerType::hollow_diamond: return Shape::diamond;
	case MarkerType::filled_triangle_up:
	case MarkerType::hollow_triangle_up: return Shape::triangle_up;
	case MarkerType::filled_triangle_down:
	case MarkerType::hollow_triangle_down: return Shape::triangle_down;
	case MarkerType::plus: return Shape::plus;
	}
	return Shape::circle;
}

/// Point-in-shape for an offset (dx, dy) from the center, with the boundary
/// pulled inwards by `inset` measured perpendicular to the edges.
inline bool inside(Shape shape, double dx, double dy, double r, double inset) {
	switch (shape) {
	case Shape::circle: {
		double const rr = r - inset;
		return rr >= 0.0 && dx * dx + dy * dy <= rr * rr + shape_eps;
	}
	case Shape::square: {
		double const h = r / sqrt2 - inset;
		return h >= 0.0 && std::abs(dx) <= h + shape_eps && std::abs(dy) <= h + shape_eps;
	}
	case Shape::diamond: {
		double const rr = r - inset * sqrt2;
		return rr >= 0.0 && std::abs(dx) + std::abs(dy) <= rr + shape_eps;
	}
	case Shape::triangle_up:
	case Shape::triangle_down: {
		// image y grows downwards; "up" puts the apex at smaller y
		double const s = shape == Shape::triangle_up ? 1.0 : -1.0;
		double const in_r = r / 2.0 - inset;
		if (in_r < 0.0) { return false; }
		double const e1 = s * dy;
		double const e2 = sqrt3_2 * dx - 0.5 * s * dy;
		double const e3 = -sqrt3_2 * dx - 0.5 * s * dy;
		return e1 <= in_r + shape_eps && e2 <= in_r + shape_eps && e3 <= in_r + shape_eps;
	}
	case Shape::plus: {
		double const half = std::max(1.0, std::round(r / 2.0)) / 2.0;
		double const ax = std::abs(dx);
		double const ay = std::abs(dy);
		return (ax <= r + shape_eps && ay <= half + shape_eps) || (ay <= r + shape_eps && ax <= half + shape_eps);
	}
	}
	return false;
}

inline double stroke_for(MarkerType m, std::optional<double> stroke) {
	if (!is_hollow(m)) { return 0.0; }
	if (!stroke) { throw std::invalid_argument("rasterize: stroke width required for " + std::string(to_string(m))); }
	if (!(*stroke > 0.0)) { throw std::invalid_argument("rasterize: stroke width must be positive"); }
	return *stroke;
}

} // namespace detail

/// Calls `fn(Pixel)` once for every pixel of the mark's raster. Membership is
/// the pixel-center point-in-shape test. A mark whose shape covers no pixel
/// center (including radius 0) rasterizes to the pixel nearest its center.
template <typename Fn>
void visit_mark_pixels(Mark const& mark, std::optional<double> stroke, Fn&& fn) {
	if (!(mark.radius >= 0.0) || !std::isfinite(mark.radius)) {
		throw std::invalid_argument("rasterize: radius must be a finite value >= 0");
	}
	double const w = detail::stroke_for(mark.marker, stroke);
	Pixel const nearest{static_cast<int>(std::round(mark.center.x)), static_cast<int>(std::round(mark.center.y))};
	if (mark.radius == 0.0) {
		fn(nearest);
		return;
	}
	auto const shape = detail::shape_of(mark.marker);
	bool const hollow = is_hollow(mark.marker);
	double const reach = mark.radius * 1.1 + 2.0; // plus bars reach past r
	int const x0 = static_cast<int>(std::floor(mark.center.x - reach));
	int const x1 = static_cast<int>(std::ceil(mark.center.x + reach));
	int const y0 = static_cast<int>(std::floor(mark.center.y - reach));
	int const y1 = static_cast<int>(std::ceil(mark.center.y + reach));
	bool any = false;
	for (int y = y0; y <= y1; ++y) {
		double const dy = y - mark.center.y;
		for (int x = x0; x <= x1; ++x) {
			double const dx = x - mark.center.x;
			if (!detail::inside(shape, dx, dy, mark.radius, 0.0)) { continue; }
			if (hollow && detail::inside(shape, dx, dy, mark.radius, w)) { continue; }
			any = true;
			fn(Pixel{x, y});
		}
	}
	if (!any) { fn(nearest); }
}

[[nodiscard]] inline PixelSet rasterize_mark(Mark const& mark, std::optional<double> stroke = std::nullopt) {
	PixelSet out;
	visit_mark_pixels(mark, stroke, [&](Pixel p) { out.push_back(p); });
	normalize(out);
	return out;
}

/// Marks drawn at every cluster centroid with that cluster's radius.
[[nodiscard]] inline std::vector<Mark> marks_from_clusters(Clustering const& clusters, MarkerType marker) {
	std::vector<Mark> marks;
	marks.reserve(clusters.centroids.size());
	for (std::size_t k = 0; k < clusters.centroids.size(); ++k) {
		marks.push_back({clusters.centroids[k], clusters.radii[k], marker});
	}
	return marks;
}

/// Union of the rasters of every cluster's mark.
[[nodiscard]] inline PixelSet revisualize(Clustering const& clusters, MarkerType marker,
										  std::optional<double> stroke = std::nullopt) {
	PixelSet out;
	for (auto const& mark : marks_from_clusters(clusters, marker)) {
		visit_mark_pixels(mark, stroke, [&](Pixel p) { out.push_back(p); });
	}
	normalize(out);
	return out;
}

} // namespace markloc
