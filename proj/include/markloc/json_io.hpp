// markloc - overlapping scatter mark localization
// Requirements: C++20, nlohmann/json
//
// File formats:
//   prediction  {image, params, marks: [{x, y, radius, marker, region_id}], regions: [...], timing_ms?}
//   truth       {id, marker, Q, severity, seed, distribution, params, marks: [{x, y, radius, marker}]}
//   manifest    {seed, case_count, cases: [{id, marker, Q, distribution, severity, seed, image, truth, image_hash}],
//                severity_histogram}

#pragma once

#include "benchgen.hpp"
#include "locator.hpp"
#include "random.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace markloc {

using Json = nlohmann::ordered_json;

[[nodiscard]] inline Json read_json(std::filesystem::path const& path) {
	std::ifstream in(path);
	if (!in) { throw std::runtime_error("cannot open '" + path.string() + "'"); }
	try {
		return Json::parse(in);
	} catch (Json::exception const& e) {
		throw std::runtime_error("invalid JSON in '" + path.string() + "': " + e.what());
	}
}

inline void write_text(std::filesystem::path const& path, std::string const& text) {
	std::ofstream out(path, std::ios::binary);
	if (!out) { throw std::runtime_error("cannot write '" + path.string() + "'"); }
	out << text;
}

inline void write_json(std::filesystem::path const& path, Json const& j) { write_text(path, j.dump(2) + "\n"); }

[[nodiscard]] inline Json config_to_json(LocatorConfig const& c) {
	Json markers = Json::array();
	for (auto m : c.markers) { markers.push_back(std::string(to_string(m))); }
	Json j;
	j["alpha"] = c.loss.alpha;
	j["beta"] = c.loss.beta;
	j["gamma_s"] = c.anneal.gamma_s;
	j["gamma_m"] = c.anneal.gamma_m;
	j["c_sigma"] = c.anneal.c_sigma;
	j["rsma"] = c.use_rsma;
	j["kappa"] = c.kappa;
	j["space_factor"] = c.loss.space_factor;
	j["single_tolerance"] = c.single_tolerance;
	j["restrict_marker"] = c.restrict_marker;
	j["seed"] = c.seed;
	j["markers"] = markers;
	if (c.stroke) { j["stroke"] = *c.stroke; }
	return j;
}

[[nodiscard]] inline Json markset_to_json(MarkSet const& set, Json params, bool with_timing) {
	Json j;
	j["image"] = set.source_image;
	j["params"] = std::move(params);
	Json marks = Json::array();
	for (auto const& m : set.marks) {
		marks.push_back({{"x", m.mark.center.x},
						 {"y", m.mark.center.y},
						 {"radius", m.mark.radius},
						 {"marker", std::string(to_string(m.mark.marker))},
						 {"region_id", m.region_id}});
	}
	j["marks"] = std::move(marks);
	Json regions = Json::array();
	for (auto const& r : set.regions) {
		Json rj{{"region_id", r.region_id},
				{"pixels", r.pixel_count},
				{"single", r.single},
				{"n", r.n},
				{"n_max", r.n_max},
				{"marker", std::string(to_string(r.marker))},
				{"loss", r.loss}};
		if (with_timing) { rj["timing_ms"] = r.elapsed_ms; }
		regions.push_back(std::move(rj));
	}
	j["regions"] = std::move(regions);
	if (with_timing) { j["timing_ms"] = set.elapsed_ms; }
	return j;
}

[[nodiscard]] inline Mark mark_from_json(Json const& j) {
	Mark m;
	m.center = {j.at("x").get<double>(), j.at("y").get<double>()};
	m.radius = j.value("radius", 0.0);
	m.marker = parse_marker(j.value("marker", std::string("filled_circle")));
	return m;
}

/// Marks of a prediction or truth file (both carry a "marks" array).
[[nodiscard]] inline std::vector<Mark> marks_from_json(Json const& j) {
	std::vector<Mark> out;
	for (auto const& m : j.at("marks")) { out.push_back(mark_from_json(m)); }
	return out;
}

[[nodiscard]] inline Json generator_params_to_json(GeneratorParams const& p, Distribution d) {
	Json j{{"width", p.width}, {"height", p.height}, {"margin", p.margin}, {"radius", p.radius}, {"stroke", p.stroke}};
	if (d == Distribution::gaussian_blobs) {
		j["centers"] = p.centers;
		j["cluster_std"] = p.cluster_std;
		j["center_box"] = p.center_box;
	} else {
		j["classes"] = p.classes;
		j["class_sep"] = p.class_sep;
	}
	if (p.min_gap > 0.0) { j["min_gap"] = p.min_gap; }
	return j;
}

[[nodiscard]] inline Json truth_to_json(BenchmarkCase const& c) {
	Json marks = Json::array();
	for (auto const& m : c.truth) {
		marks.push_back({{"x", m.center.x}, {"y", m.center.y}, {"radius", m.radius}, {"marker", std::string(to_string(m.marker))}});
	}
	return Json{{"id", c.id},
				{"marker", std::string(to_string(c.marker))},
				{"Q", c.mark_count},
				{"severity", c.severity},
				{"seed", c.seed},
				{"distribution", to_string(c.distribution)},
				{"params", generator_params_to_json(c.params, c.distribution)},
				{"marks", std::move(marks)}};
}

[[nodiscard]] inline SuiteSpec suite_spec_from_json(Json const& j) {
	SuiteSpec s;
	if (j.contains("markers")) {
		auto const& m = j.at("markers");
		if (!(m.is_string() && m.get<std::string>() == "all")) {
			s.markers.clear();
			for (auto const& name : m) { s.markers.push_back(parse_marker(name.get<std::string>())); }
		}
	}
	if (j.contains("counts")) { s.counts = j.at("counts").get<std::vector<int>>(); }
	s.blob_images = j.value("blob_images", s.blob_images);
	s.hypercube_images = j.value("hypercube_images", s.hypercube_images);
	s.seed = j.value("seed", s.seed);
	s.base.width = j.value("width", s.base.width);
	s.base.height = j.value("height", s.base.height);
	s.base.margin = j.value("margin", s.base.margin);
	s.base.radius = j.value("radius", s.base.radius);
	s.base.stroke = j.value("stroke", s.base.stroke);
	s.base.min_gap = j.value("min_gap", s.base.min_gap);
	if (j.contains("blob_grid")) {
		s.blob_grid.clear();
		for (auto const& e : j.at("blob_grid")) { s.blob_grid.emplace_back(e.at(0).get<int>(), e.at(1).get<double>()); }
	}
	if (j.contains("class_seps")) { s.class_seps = j.at("class_seps").get<std::vector<double>>(); }
	if (s.markers.empty() || s.counts.empty() || s.blob_grid.empty() || s.class_seps.empty()) {
		throw std::invalid_argument("suite spec: markers, counts, blob_grid and class_seps must be non-empty");
	}
	if (s.blob_images < 0 || s.hypercube_images < 0) {
		throw std::invalid_argument("suite spec: image counts must be >= 0");
	}
	return s;
}

[[nodiscard]] inline std::string hex64(std::uint64_t v) {
	char buf[17];
	std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
	return buf;
}

} // namespace markloc
