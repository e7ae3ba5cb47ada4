// markloc - overlapping scatter mark localization
// Requirements: C++20

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace markloc {

/// 8-bit luminance image, row-major, origin top-left.
class GrayImage {
  public:
	GrayImage() = default;

	GrayImage(int width, int height, std::uint8_t fill = 255) : m_width(width), m_height(height) {
		validate(width, height);
		m_values.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
	}

	GrayImage(int width, int height, std::vector<std::uint8_t> values)
		: m_width(width), m_height(height), m_values(std::move(values)) {
		validate(width, height);
		if (m_values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
			throw std::invalid_argument("GrayImage: value count does not match width*height");
		}
	}

	[[nodiscard]] int width() const { return m_width; }
	[[nodiscard]] int height() const { return m_height; }
	[[nodiscard]] bool empty() const { return m_values.empty(); }
	[[nodiscard]] bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < m_width && y < m_height; }

	[[nodiscard]] std::uint8_t at(int x, int y) const { return m_values[index(x, y)]; }
	void set(int x, int y, std::uint8_t v) { m_values[index(x, y)] = v; }

	[[nodiscard]] std::vector<std::uint8_t> const& values() const { return m_values; }

	friend bool operator==(GrayImage const&, GrayImage const&) = default;

  private:
	static void validate(int width, int height) {
		if (width <= 0 || height <= 0) {
			throw std::invalid_argument("GrayImage: dimensions must be positive, got " + std::to_string(width) + "x" +
										std::to_string(height));
		}
	}
	[[nodiscard]] std::size_t index(int x, int y) const {
		return static_cast<std::size_t>(y) * static_cast<std::size_t>(m_width) + static_cast<std::size_t>(x);
	}

	int m_width{};
	int m_height{};
	std::vector<std::uint8_t> m_values;
};

/// ITU-R BT.601 luma.
[[nodiscard]] inline std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
	double const y = 0.299 * r + 0.587 * g + 0.114 * b;
	return static_cast<std::uint8_t>(y + 0.5);
}

/// 8-bit RGB image used for annotated overlays.
struct RgbImage {
	int width{};
	int height{};
	std::vector<std::uint8_t> rgb; // 3 bytes per pixel

	explicit RgbImage(GrayImage const& gray) : width(gray.width()), height(gray.height()) {
		rgb.reserve(gray.values().size() * 3);
		for (auto v : gray.values()) {
			rgb.insert(rgb.end(), {v, v, v});
		}
	}

	void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
		if (x < 0 || y < 0 || x >= width || y >= height) { return; }
		auto const i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3;
		rgb[i] = r;
		rgb[i + 1] = g;
		rgb[i + 2] = b;
	}
};

} // namespace markloc
