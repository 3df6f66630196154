#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disco/scene.hpp"

namespace disco {

struct RenderOptions {
  int long_side = 1024;  // pixels, >= 256
  bool show_labels = true;
  bool show_grid = false;
  double grid_spacing = 50;  // cm, drawn only when show_grid
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  bool operator==(const Image&) const = default;
};

/// Top-down schematic view: brown floor, white wall border, each footprint
/// a filled box with a facing tick and optional label. Pixel-deterministic.
/// Image y is flipped so room +Y points up.
Image render_topdown(const Layout& layout, const RenderOptions& options);

/// Deterministic PNG (stored deflate blocks, no external codecs).
std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const Image& image, const std::string& path);
/// Decodes only PNGs produced by encode_png (used by tests).
Image decode_png(const std::vector<std::uint8_t>& bytes);

std::string encode_base64(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> decode_base64(const std::string& text);

}  // namespace disco
