// markloc command-line tool: locate, generate, evaluate, sweep.

#include <markloc/json_io.hpp>
#include <markloc/markloc.hpp>
#include <markloc/parallel.hpp>
#include <markloc/png_io.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace markloc;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_assert = 1;
constexpr int exit_input = 2;

struct InputError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Options shared by every subcommand that runs the locator.
struct LocatorOptions {
	double alpha = 1.1;
	double beta = 1.0;
	double gamma_s = 1.5;
	double gamma_m = 1.5;
	double c_sigma = 6.0;
	std::optional<double> space_factor; // set: RSMA off
	double kappa = 0.8;
	std::optional<double> stroke;
	std::vector<std::string> markers;
	std::optional<int> threshold;
	bool invert = false;
	bool exhaustive_small = true;
	std::uint64_t seed = 0;

	void add_to(CLI::App& app) {
		app.add_option("--alpha", alpha, "weight of the cluster-count prior")->capture_default_str();
		app.add_option("--beta", beta, "weight of the radius-spread prior")->capture_default_str();
		app.add_option("--gamma-s", gamma_s, "stop-criterion coefficient")->capture_default_str();
		app.add_option("--gamma-m", gamma_m, "Markov-chain length coefficient")->capture_default_str();
		app.add_option("--c-sigma", c_sigma, "neighbourhood width divisor")->capture_default_str();
		app.add_option("--space-factor", space_factor, "fixed space factor; disables single-mark estimation");
		app.add_option("--kappa", kappa, "space factor = kappa * mean single-mark size")->capture_default_str();
		app.add_option("--stroke", stroke, "hollow marker stroke width (default: estimated)");
		app.add_option("--markers", markers, "marker subset (default: all)")->delimiter(',');
		app.add_option("--threshold", threshold, "fixed binarization threshold (default: Otsu)");
		app.add_flag("--invert", invert, "light marks on a dark background");
		app.add_flag("!--no-exhaustive-small", exhaustive_small, "always anneal, even in tiny search spaces");
		app.add_option("--seed", seed, "master seed")->capture_default_str();
	}

	[[nodiscard]] LocatorConfig config(unsigned threads) const {
		LocatorConfig c;
		c.loss.alpha = alpha;
		c.loss.beta = beta;
		c.anneal.gamma_s = gamma_s;
		c.anneal.gamma_m = gamma_m;
		c.anneal.c_sigma = c_sigma;
		if (space_factor) {
			c.use_rsma = false;
			c.loss.space_factor = *space_factor;
		}
		c.kappa = kappa;
		c.stroke = stroke;
		if (!markers.empty()) {
			c.markers.clear();
			for (auto const& m : markers) { c.markers.push_back(parse_marker(m)); }
		}
		if (threshold) { c.threshold = Threshold::fixed(*threshold); }
		c.invert = invert;
		c.exhaustive_small_spaces = exhaustive_small;
		c.seed = seed;
		c.threads = threads;
		return c;
	}
};

std::vector<fs::path> collect_images(std::vector<std::string> const& inputs) {
	std::vector<fs::path> out;
	for (auto const& in : inputs) {
		fs::path const p(in);
		if (fs::is_directory(p)) {
			std::vector<fs::path> found;
			for (auto const& e : fs::directory_iterator(p)) {
				if (e.is_regular_file() && e.path().extension() == ".png") { found.push_back(e.path()); }
			}
			std::sort(found.begin(), found.end());
			out.insert(out.end(), found.begin(), found.end());
		} else if (fs::is_regular_file(p)) {
			out.push_back(p);
		} else {
			throw InputError("no such file or directory: '" + in + "'");
		}
	}
	return out;
}

GrayImage load_image(fs::path const& p) {
	try {
		return read_png(p);
	} catch (std::exception const& e) {
		throw InputError(e.what());
	}
}

void draw_overlay(RgbImage& img, MarkSet const& set) {
	for (auto const& lm : set.marks) {
		int const cx = static_cast<int>(std::lround(lm.mark.center.x));
		int const cy = static_cast<int>(std::lround(lm.mark.center.y));
		for (int d = -3; d <= 3; ++d) {
			img.set(cx + d, cy, 220, 20, 20);
			img.set(cx, cy + d, 220, 20, 20);
		}
	}
}

std::string format_double(double v) {
	char buf[32];
	std::snprintf(buf, sizeof(buf), "%.6f", v);
	return buf;
}

std::string format_label(double v) {
	char buf[32];
	std::snprintf(buf, sizeof(buf), "%g", v);
	return buf;
}

std::vector<double> parse_range(std::string const& text) {
	// "a:b:step" or "v1,v2,..."
	std::vector<double> out;
	if (text.find(':') != std::string::npos) {
		double a = 0.0;
		double b = 0.0;
		double step = 0.0;
		if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || !(step > 0.0) || b < a) {
			throw InputError("bad range '" + text + "' (expected start:stop:step)");
		}
		auto const count = static_cast<int>(std::floor((b - a) / step + 1e-9));
		for (int i = 0; i <= count; ++i) { out.push_back(a + i * step); }
		return out;
	}
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ',')) {
		try {
			out.push_back(std::stod(item));
		} catch (std::exception const&) {
			throw InputError("bad number '" + item + "'");
		}
	}
	if (out.empty()) { throw InputError("empty value list"); }
	return out;
}

// ---- locate ---------------------------------------------------------------

struct LocateArgs {
	std::vector<std::string> inputs;
	std::string out_dir = ".";
	std::string method = "anneal";
	bool overlay = false;
	bool record_timing = false;
	unsigned threads = 1;
	std::optional<int> kernel_size;
	LocatorOptions loc;
};

int run_locate(LocateArgs const& a) {
	auto const images = collect_images(a.inputs);
	if (images.empty()) { throw InputError("no PNG inputs"); }
	fs::create_directories(a.out_dir);
	// workers over images; each locator runs single-threaded so results do not depend on scheduling
	LocatorConfig const cfg = a.loc.config(1);
	Json params = config_to_json(cfg);
	params["method"] = a.method;
	if (a.method == "baseline" && a.kernel_size) { params["kernel_size"] = *a.kernel_size; }
	std::vector<GrayImage> loaded;
	loaded.reserve(images.size());
	for (auto const& p : images) { loaded.push_back(load_image(p)); }

	parallel_for(images.size(), a.threads, [&](std::size_t i) {
		MarkSet set;
		if (a.method == "baseline") {
			FilterConfig fc;
			fc.kernel_size = a.kernel_size;
			set = filter_locate(loaded[i], fc, cfg);
		} else {
			set = locate(loaded[i], cfg);
		}
		set.source_image = images[i].filename().string();
		auto const stem = images[i].stem().string();
		write_json(fs::path(a.out_dir) / (stem + ".json"), markset_to_json(set, params, a.record_timing));
		if (a.overlay) {
			RgbImage rgb(loaded[i]);
			draw_overlay(rgb, set);
			write_png(fs::path(a.out_dir) / (stem + "_overlay.png"), rgb);
		}
	});
	std::cout << "located marks in " << images.size() << " image(s) -> " << a.out_dir << "\n";
	return exit_ok;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
	std::string spec = "desk";
	std::string out_dir = "suite";
	unsigned threads = 1;
	std::optional<std::uint64_t> seed;
};

SuiteSpec load_suite_spec(std::string const& what) {
	if (what == "desk") { return desk_suite(); }
	if (what == "full") { return SuiteSpec{}; }
	try {
		return suite_spec_from_json(read_json(what));
	} catch (std::exception const& e) {
		throw InputError(e.what());
	}
}

int run_generate(GenerateArgs const& a) {
	SuiteSpec spec = load_suite_spec(a.spec);
	if (a.seed) { spec.seed = *a.seed; }
	auto const plans = plan_suite(spec);
	fs::path const root(a.out_dir);
	fs::create_directories(root / "images");
	fs::create_directories(root / "truth");
	std::vector<Json> entries(plans.size());
	std::vector<double> severities(plans.size());
	parallel_for(plans.size(), a.threads, [&](std::size_t i) {
		BenchmarkCase const c = generate_planned(plans[i]);
		auto const image_rel = "images/" + c.id + ".png";
		auto const truth_rel = "truth/" + c.id + ".json";
		write_png(root / image_rel, c.image);
		write_json(root / truth_rel, truth_to_json(c));
		severities[i] = c.severity;
		entries[i] = Json{{"id", c.id},
						  {"marker", std::string(to_string(c.marker))},
						  {"Q", c.mark_count},
						  {"distribution", to_string(c.distribution)},
						  {"severity", c.severity},
						  {"seed", c.seed},
						  {"image", image_rel},
						  {"truth", truth_rel},
						  {"image_hash", hex64(fnv1a64(c.image.values()))}};
	});
	Json manifest;
	manifest["seed"] = spec.seed;
	manifest["case_count"] = plans.size();
	manifest["cases"] = entries;
	manifest["severity_histogram"] = severity_histogram(severities);
	std::string const text = manifest.dump(2) + "\n";
	write_text(root / "manifest.json", text);
	std::cout << "generated " << plans.size() << " case(s) -> " << a.out_dir << " (manifest hash "
			  << hex64(fnv1a64(text)) << ")\n";
	return exit_ok;
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateArgs {
	std::string pred_dir;
	std::string truth_dir;
	std::vector<double> lambdas{1.0, 5.0, 10.0};
	std::string out_csv = "scores.csv";
	std::string summary_csv;
	std::string label = "markloc";
	std::optional<double> assert_min;
};

struct CaseScore {
	std::string id;
	double severity{};
	std::size_t truth_count{};
	std::size_t pred_count{};
	std::vector<double> scores;
	std::optional<double> timing_ms;
};

std::pair<double, double> mean_std(std::vector<double> const& v) {
	if (v.empty()) { return {0.0, 0.0}; }
	double const mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
	double ss = 0.0;
	for (double x : v) { ss += (x - mean) * (x - mean); }
	return {mean, std::sqrt(ss / static_cast<double>(v.size()))};
}

int run_evaluate(EvaluateArgs const& a) {
	fs::path const truth_dir(a.truth_dir);
	fs::path const pred_dir(a.pred_dir);
	if (!fs::is_directory(truth_dir)) { throw InputError("truth directory not found: '" + a.truth_dir + "'"); }
	if (!fs::is_directory(pred_dir)) { throw InputError("prediction directory not found: '" + a.pred_dir + "'"); }
	for (double l : a.lambdas) {
		if (!(l > 0.0)) { throw InputError("lambda must be > 0"); }
	}
	std::vector<fs::path> truths;
	for (auto const& e : fs::directory_iterator(truth_dir)) {
		if (e.is_regular_file() && e.path().extension() == ".json") { truths.push_back(e.path()); }
	}
	std::sort(truths.begin(), truths.end());
	if (truths.empty()) { throw InputError("no truth files in '" + a.truth_dir + "'"); }

	std::vector<CaseScore> rows;
	for (auto const& tp : truths) {
		Json tj;
		std::vector<Mark> truth;
		try {
			tj = read_json(tp);
			truth = marks_from_json(tj);
		} catch (std::exception const& e) {
			throw InputError(e.what());
		}
		CaseScore row;
		row.id = tj.value("id", tp.stem().string());
		row.severity = tj.value("severity", 0.0);
		row.truth_count = truth.size();
		std::vector<Mark> pred;
		fs::path const pp = pred_dir / (tp.stem().string() + ".json");
		if (fs::exists(pp)) {
			try {
				Json const pj = read_json(pp);
				pred = marks_from_json(pj);
				if (pj.contains("timing_ms")) { row.timing_ms = pj.at("timing_ms").get<double>(); }
			} catch (std::exception const& e) {
				throw InputError(e.what());
			}
		}
		row.pred_count = pred.size();
		auto const tc = centers(std::span<Mark const>(truth));
		auto const pc = centers(std::span<Mark const>(pred));
		for (double l : a.lambdas) { row.scores.push_back(truth.empty() ? 0.0 : acb_score(tc, pc, l).score); }
		rows.push_back(std::move(row));
	}

	std::ostringstream csv;
	csv << "id,severity,truth_count,pred_count";
	for (double l : a.lambdas) { csv << ",acb_l" << format_label(l); }
	csv << "\n";
	for (auto const& r : rows) {
		csv << r.id << ',' << format_double(r.severity) << ',' << r.truth_count << ',' << r.pred_count;
		for (double s : r.scores) { csv << ',' << format_double(s); }
		csv << "\n";
	}
	write_text(a.out_csv, csv.str());

	// Table-2 style aggregate: method, mean±std per λ, time when recorded
	std::ostringstream summary;
	summary << "method,cases";
	for (double l : a.lambdas) { summary << ",acb_l" << format_label(l) << "_mean,acb_l" << format_label(l) << "_std"; }
	bool const timed = std::all_of(rows.begin(), rows.end(), [](CaseScore const& r) { return r.timing_ms.has_value(); });
	if (timed) { summary << ",time_s_mean,time_s_std"; }
	summary << "\n" << a.label << ',' << rows.size();
	std::vector<double> first_scores;
	for (std::size_t k = 0; k < a.lambdas.size(); ++k) {
		std::vector<double> v;
		for (auto const& r : rows) { v.push_back(r.scores[k]); }
		if (k == 0) { first_scores = v; }
		auto const [m, s] = mean_std(v);
		summary << ',' << format_double(m) << ',' << format_double(s);
	}
	if (timed) {
		std::vector<double> t;
		for (auto const& r : rows) { t.push_back(*r.timing_ms / 1000.0); }
		auto const [m, s] = mean_std(t);
		summary << ',' << format_double(m) << ',' << format_double(s);
	}
	summary << "\n";
	if (!a.summary_csv.empty()) { write_text(a.summary_csv, summary.str()); }
	std::cout << summary.str();

	if (a.assert_min) {
		double const mean = mean_std(first_scores).first;
		if (mean < *a.assert_min) {
			std::cerr << "mean ACB " << format_double(mean) << " below required " << format_double(*a.assert_min) << "\n";
			return exit_assert;
		}
	}
	return exit_ok;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
	std::string kind;
	std::string image;
	std::optional<int> region_id;
	std::string suite_dir;
	std::string out_csv = "sweep.csv";
	std::string alpha_grid = "0:3:0.1";
	std::string beta_grid = "0:100:3";
	std::string space_factors;
	std::string gamma_grid = "0.5,1,1.5,2";
	std::vector<std::string> markers{"filled_circle", "filled_square", "filled_diamond"};
	std::vector<double> lambdas{1.0, 5.0, 10.0};
	bool record_timing = false;
	unsigned threads = 1;
	LocatorOptions loc;
};

// Largest region of the image, or the requested one.
BinaryRegion pick_region(SweepArgs const& a, LocatorConfig const& cfg) {
	if (a.image.empty()) { throw InputError("--image is required for this sweep"); }
	auto const regions = extract_regions(load_image(a.image), cfg);
	if (regions.empty()) { throw InputError("image has no foreground region"); }
	if (a.region_id) {
		if (*a.region_id < 0 || static_cast<std::size_t>(*a.region_id) >= regions.size()) {
			throw InputError("region id out of range");
		}
		return regions[static_cast<std::size_t>(*a.region_id)];
	}
	return *std::max_element(regions.begin(), regions.end(),
							 [](BinaryRegion const& x, BinaryRegion const& y) { return x.size() < y.size(); });
}

std::vector<MarkerType> parse_markers(std::vector<std::string> const& names) {
	std::vector<MarkerType> out;
	try {
		for (auto const& n : names) { out.push_back(parse_marker(n)); }
	} catch (std::exception const& e) {
		throw InputError(e.what());
	}
	return out;
}

int sweep_alpha_beta(SweepArgs const& a) {
	LocatorConfig const cfg = a.loc.config(1);
	BinaryRegion const region = pick_region(a, cfg);
	auto const markers = parse_markers(a.markers);
	auto const alphas = parse_range(a.alpha_grid);
	auto const betas = parse_range(a.beta_grid);
	double const f = a.loc.space_factor.value_or(cfg.loss.space_factor);
	std::vector<std::string> lines(alphas.size() * betas.size());
	parallel_for(lines.size(), a.threads, [&](std::size_t k) {
		LossParams lp;
		lp.alpha = alphas[k / betas.size()];
		lp.beta = betas[k % betas.size()];
		lp.space_factor = f;
		RegionObjective obj(region, lp, a.loc.seed, cfg.stroke.value_or(default_stroke_width));
		auto const best = exhaustive_search(obj, markers);
		lines[k] = format_double(lp.alpha) + ',' + format_double(lp.beta) + ',' + std::to_string(best.best_n) + ',' +
				   std::string(to_string(best.best_m)) + ',' + format_double(best.best_loss) + "\n";
	});
	std::string text = "alpha,beta,n,marker,loss\n";
	for (auto const& l : lines) { text += l; }
	write_text(a.out_csv, text);
	std::cout << "wrote " << lines.size() << " grid points -> " << a.out_csv << "\n";
	return exit_ok;
}

int sweep_sa_params(SweepArgs const& a) {
	LocatorConfig const cfg = a.loc.config(1);
	BinaryRegion const region = pick_region(a, cfg);
	auto const markers = parse_markers(a.markers);
	auto const factors = parse_range(a.space_factors.empty() ? "6:90:6" : a.space_factors);
	auto const gammas = parse_range(a.gamma_grid);
	using clock = std::chrono::steady_clock;
	std::ostringstream csv;
	csv << "space_factor,n_max,gamma_s,gamma_m,sa_n,sa_marker,sa_loss,sa_evaluations,greedy_n,greedy_marker,greedy_loss,"
		   "greedy_evaluations";
	if (a.record_timing) { csv << ",sa_ms,greedy_ms"; }
	csv << "\n";
	for (double f : factors) {
		LossParams lp = cfg.loss;
		lp.space_factor = f;
		double const stroke = cfg.stroke.value_or(default_stroke_width);
		auto const g0 = clock::now();
		RegionObjective greedy_obj(region, lp, a.loc.seed, stroke);
		auto const greedy = exhaustive_search(greedy_obj, markers);
		double const greedy_ms = std::chrono::duration<double, std::milli>(clock::now() - g0).count();
		for (double gs : gammas) {
			for (double gm : gammas) {
				AnnealParams ap = cfg.anneal;
				ap.gamma_s = gs;
				ap.gamma_m = gm;
				ap.seed = derive_seed(a.loc.seed, 2);
				auto const s0 = clock::now();
				RegionObjective obj(region, lp, a.loc.seed, stroke);
				auto const res = anneal(obj, markers, ap);
				double const sa_ms = std::chrono::duration<double, std::milli>(clock::now() - s0).count();
				csv << format_double(f) << ',' << obj.n_max() << ',' << format_double(gs) << ',' << format_double(gm) << ','
					<< res.best_n << ',' << to_string(res.best_m) << ',' << format_double(res.best_loss) << ','
					<< res.evaluations << ',' << greedy.best_n << ',' << to_string(greedy.best_m) << ','
					<< format_double(greedy.best_loss) << ',' << greedy.evaluations;
				if (a.record_timing) { csv << ',' << format_double(sa_ms) << ',' << format_double(greedy_ms); }
				csv << "\n";
			}
		}
	}
	write_text(a.out_csv, csv.str());
	std::cout << "wrote sa_params sweep -> " << a.out_csv << "\n";
	return exit_ok;
}

int sweep_space_factor(SweepArgs const& a) {
	if (a.suite_dir.empty()) { throw InputError("--suite is required for the space_factor sweep"); }
	fs::path const root(a.suite_dir);
	Json manifest;
	try {
		manifest = read_json(root / "manifest.json");
	} catch (std::exception const& e) {
		throw InputError(e.what());
	}
	auto const factors = parse_range(a.space_factors.empty() ? "10,60,150" : a.space_factors);
	auto const& cases = manifest.at("cases");
	std::ostringstream csv;
	csv << "space_factor,id,severity,pred_count";
	for (double l : a.lambdas) { csv << ",acb_l" << format_label(l); }
	csv << "\n";
	std::ostringstream summary;
	summary << "space_factor,mean_acb_l" << format_label(a.lambdas.front()) << "\n";
	for (double f : factors) {
		LocatorOptions opts = a.loc;
		opts.space_factor = f;
		LocatorConfig const cfg = opts.config(1);
		std::vector<std::string> lines(cases.size());
		std::vector<double> first(cases.size());
		parallel_for(cases.size(), a.threads, [&](std::size_t i) {
			auto const& entry = cases[i];
			GrayImage const img = load_image(root / entry.at("image").get<std::string>());
			auto const truth = marks_from_json(read_json(root / entry.at("truth").get<std::string>()));
			MarkSet const set = locate(img, cfg);
			std::string line = format_double(f) + ',' + entry.at("id").get<std::string>() + ',' +
							   format_double(entry.at("severity").get<double>()) + ',' + std::to_string(set.marks.size());
			for (std::size_t k = 0; k < a.lambdas.size(); ++k) {
				double const s = acb_score(centers(std::span<Mark const>(truth)), centers(set.marks), a.lambdas[k]).score;
				if (k == 0) { first[i] = s; }
				line += ',' + format_double(s);
			}
			lines[i] = line + "\n";
		});
		for (auto const& l : lines) { csv << l; }
		summary << format_double(f) << ',' << format_double(mean_std(first).first) << "\n";
	}
	write_text(a.out_csv, csv.str());
	std::cout << summary.str();
	return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Locate overlapping marks in scatter images"};
	app.require_subcommand(1);

	LocateArgs locate_args;
	auto* locate_cmd = app.add_subcommand("locate", "locate marks in PNG images or directories of PNGs");
	locate_cmd->add_option("inputs", locate_args.inputs, "PNG files or directories")->required();
	locate_cmd->add_option("-o,--out", locate_args.out_dir, "output directory")->capture_default_str();
	locate_cmd->add_option("--method", locate_args.method, "anneal or baseline")
		->check(CLI::IsMember({"anneal", "baseline"}))
		->capture_default_str();
	locate_cmd->add_option("--kernel-size", locate_args.kernel_size, "baseline kernel size (default: from single marks)");
	locate_cmd->add_flag("--overlay", locate_args.overlay, "also write <name>_overlay.png");
	locate_cmd->add_flag("--record-timing", locate_args.record_timing, "include wall-clock timings in the JSON");
	locate_cmd->add_option("-j,--threads", locate_args.threads, "worker threads")->capture_default_str();
	locate_args.loc.add_to(*locate_cmd);

	GenerateArgs gen_args;
	auto* gen_cmd = app.add_subcommand("generate", "synthesize a benchmark suite");
	gen_cmd->add_option("spec", gen_args.spec, "suite spec JSON, or 'desk' / 'full'")->capture_default_str();
	gen_cmd->add_option("-o,--out", gen_args.out_dir, "output directory")->capture_default_str();
	gen_cmd->add_option("--seed", gen_args.seed, "override the spec seed");
	gen_cmd->add_option("-j,--threads", gen_args.threads, "worker threads")->capture_default_str();

	EvaluateArgs eval_args;
	auto* eval_cmd = app.add_subcommand("evaluate", "score predictions against truth");
	eval_cmd->add_option("--pred", eval_args.pred_dir, "prediction directory")->required();
	eval_cmd->add_option("--truth", eval_args.truth_dir, "truth directory")->required();
	eval_cmd->add_option("--lambda", eval_args.lambdas, "distance caps")->delimiter(',')->capture_default_str();
	eval_cmd->add_option("-o,--out", eval_args.out_csv, "per-case CSV")->capture_default_str();
	eval_cmd->add_option("--summary", eval_args.summary_csv, "aggregate CSV");
	eval_cmd->add_option("--label", eval_args.label, "method label in the aggregate row")->capture_default_str();
	eval_cmd->add_option("--assert", eval_args.assert_min, "exit 1 when mean score at the first lambda is below this");

	SweepArgs sweep_args;
	auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps");
	sweep_cmd->add_option("kind", sweep_args.kind, "alpha_beta, sa_params or space_factor")
		->required()
		->check(CLI::IsMember({"alpha_beta", "sa_params", "space_factor"}));
	sweep_cmd->add_option("--image", sweep_args.image, "image holding the region (alpha_beta, sa_params)");
	sweep_cmd->add_option("--region-id", sweep_args.region_id, "region index (default: largest)");
	sweep_cmd->add_option("--suite", sweep_args.suite_dir, "generated suite directory (space_factor)");
	sweep_cmd->add_option("-o,--out", sweep_args.out_csv, "output CSV")->capture_default_str();
	sweep_cmd->add_option("--alpha-grid", sweep_args.alpha_grid, "start:stop:step or list")->capture_default_str();
	sweep_cmd->add_option("--beta-grid", sweep_args.beta_grid, "start:stop:step or list")->capture_default_str();
	sweep_cmd->add_option("--space-factors", sweep_args.space_factors, "start:stop:step or list");
	sweep_cmd->add_option("--gamma-grid", sweep_args.gamma_grid, "values for gamma_s x gamma_m")->capture_default_str();
	sweep_cmd->add_option("--sweep-markers", sweep_args.markers, "marker set for region sweeps")->delimiter(',');
	sweep_cmd->add_option("--lambda", sweep_args.lambdas, "distance caps")->delimiter(',');
	sweep_cmd->add_flag("--record-timing", sweep_args.record_timing, "add timing columns");
	sweep_cmd->add_option("-j,--threads", sweep_args.threads, "worker threads")->capture_default_str();
	sweep_args.loc.add_to(*sweep_cmd);

	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const& e) {
		int const code = app.exit(e);
		return code == 0 ? exit_ok : exit_input;
	}

	try {
		if (*locate_cmd) { return run_locate(locate_args); }
		if (*gen_cmd) { return run_generate(gen_args); }
		if (*eval_cmd) { return run_evaluate(eval_args); }
		if (sweep_args.kind == "alpha_beta") { return sweep_alpha_beta(sweep_args); }
		if (sweep_args.kind == "sa_params") { return sweep_sa_params(sweep_args); }
		return sweep_space_factor(sweep_args);
	} catch (std::exception const& e) {
		std::cerr << "error: " << e.what() << "\n";
		return exit_input;
	}
}
