#pragma once

// Image file I/O (PGM/PPM/PNG), padding, transposition and deterministic
// synthetic test images.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "image.hpp"

namespace seqedge::imaging {

/// Reads 8-bit PGM (P5), PPM (P6) or PNG. Colour inputs are reduced to the
/// mean of their channels. Non-power-of-two images are rejected unless `pad`
/// is set, in which case they are zero-padded at the bottom/right.
Image load_image(const std::filesystem::path& path, bool pad = false);

/// Writes PGM (P5, maxval 255) or 8-bit grayscale PNG, chosen by extension.
/// Intensities are rounded and clipped to [0, 255].
void save_image(const Image& img, const std::filesystem::path& path);

Image pad_to_power_of_two(const Image& img);
Image transpose(const Image& img);

enum class GeneratorKind { Checkerboard, Blobs, Polygon, Step, Constant };

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view generator_kind_name(GeneratorKind kind);

struct Vertex {
  double x = 0.0;  // row coordinate
  double y = 0.0;  // column coordinate
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Checkerboard;
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::uint64_t seed = 0;
  double foreground = 255.0;

  // checkerboard
  std::size_t tile = 8;
  std::size_t offset = 0;  // shifts the tile grid down/right by this many pixels

  // step: columns >= step_column are foreground
  std::size_t step_column = 0;

  // blobs: white noise, box-blurred blur_passes times, thresholded at the median
  std::size_t blur_radius = 0;  // 0 picks max(1, min(rows, cols) / 32)
  unsigned blur_passes = 3;

  // polygon: explicit vertices, or a random convex polygon with `sides` corners
  std::vector<Vertex> vertices;
  unsigned sides = 6;
};

Image generate(const GeneratorSpec& spec);

}  // namespace seqedge::imaging
