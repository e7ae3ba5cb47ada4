// markloc - overlapping scatter mark localization
// Requirements: C++20, libpng >= 1.6 (simplified API)

#pragma once

#include "image.hpp"

#include <png.h>

#include <cstring>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace markloc {

class PngError : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

/// Reads an 8-bit gray or RGB(A) PNG and converts it to luminance.
/// Transparent pixels are composited over white.
[[nodiscard]] inline GrayImage read_png(std::filesystem::path const& path) {
	png_image image;
	std::memset(&image, 0, sizeof(image));
	image.version = PNG_IMAGE_VERSION;
	if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
		throw PngError("cannot read PNG '" + path.string() + "': " + image.message);
	}
	image.format = PNG_FORMAT_RGBA;
	std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
	if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
		std::string const msg = image.message;
		png_image_free(&image);
		throw PngError("cannot decode PNG '" + path.string() + "': " + msg);
	}
	auto const w = static_cast<int>(image.width);
	auto const h = static_cast<int>(image.height);
	std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
	for (std::size_t i = 0; i < gray.size(); ++i) {
		auto const* px = &rgba[i * 4];
		double const a = px[3] / 255.0;
		double const y = luminance(px[0], px[1], px[2]);
		gray[i] = static_cast<std::uint8_t>(y * a + 255.0 * (1.0 - a) + 0.5);
	}
	return GrayImage(w, h, std::move(gray));
}

inline void write_png(std::filesystem::path const& path, GrayImage const& img) {
	png_image image;
	std::memset(&image, 0, sizeof(image));
	image.version = PNG_IMAGE_VERSION;
	image.width = static_cast<png_uint_32>(img.width());
	image.height = static_cast<png_uint_32>(img.height());
	image.format = PNG_FORMAT_GRAY;
	if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.values().data(), 0, nullptr)) {
		throw PngError("cannot write PNG '" + path.string() + "': " + image.message);
	}
}

inline void write_png(std::filesystem::path const& path, RgbImage const& img) {
	png_image image;
	std::memset(&image, 0, sizeof(image));
	image.version = PNG_IMAGE_VERSION;
	image.width = static_cast<png_uint_32>(img.width);
	image.height = static_cast<png_uint_32>(img.height);
	image.format = PNG_FORMAT_RGB;
	if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.rgb.data(), 0, nullptr)) {
		throw PngError("cannot write PNG '" + path.string() + "': " + image.message);
	}
}

} // namespace markloc
