#include "imaging.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "error.hpp"
#include "wht.hpp"

namespace seqedge::imaging {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void io_error(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::Io, path.string() + ": " + what);
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::uint8_t to_byte(double v) {
  if (!std::isfinite(v)) return 0;
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Reads the next header token of a PNM file, skipping whitespace and comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

std::size_t pnm_number(std::istream& in, const fs::path& path, const char* field) {
  const std::string tok = pnm_token(in);
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    io_error(path, std::string("corrupt PNM header (") + field + ")");
  return std::stoul(tok);
}

Image read_pnm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open for reading");
  const std::string magic = pnm_token(in);
  std::size_t channels = 0;
  if (magic == "P5") channels = 1;
  else if (magic == "P6") channels = 3;
  else io_error(path, "unsupported PNM variant '" + magic + "' (need binary P5 or P6)");
  const std::size_t cols = pnm_number(in, path, "width");
  const std::size_t rows = pnm_number(in, path, "height");
  const std::size_t maxval = pnm_number(in, path, "maxval");
  if (cols == 0 || rows == 0) io_error(path, "zero image dimension");
  if (maxval != 255) io_error(path, "unsupported bit depth (maxval " + std::to_string(maxval) + ", need 255)");

  std::vector<unsigned char> raw(rows * cols * channels);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) io_error(path, "truncated pixel data");

  Image img(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) acc += raw[i * channels + c];
    img.pixels()[i] = acc / static_cast<double>(channels);
  }
  return img;
}

void write_pgm(const Image& img, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error(path, "cannot open for writing");
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  std::vector<unsigned char> raw(img.size());
  std::transform(img.pixels().begin(), img.pixels().end(), raw.begin(), to_byte);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) io_error(path, "write failed");
}

Image read_png(const fs::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) io_error(path, png.message);
  if (png.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&png);
    io_error(path, "unsupported bit depth (16-bit PNG)");
  }
  const bool colour = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const std::size_t channels = colour ? 3 : 1;
  std::vector<png_byte> raw(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, raw.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    io_error(path, msg);
  }
  Image img(png.height, png.width);
  for (std::size_t i = 0; i < img.size(); ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) acc += raw[i * channels + c];
    img.pixels()[i] = acc / static_cast<double>(channels);
  }
  return img;
}

void write_png(const Image& img, const fs::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(img.cols());
  png.height = static_cast<png_uint_32>(img.rows());
  png.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> raw(img.size());
  std::transform(img.pixels().begin(), img.pixels().end(), raw.begin(), to_byte);
  if (!png_image_write_to_file(&png, path.c_str(), 0, raw.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    io_error(path, msg);
  }
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Uniform double in [0, 1) from the raw engine output, so results do not
// depend on the standard library's distribution implementation.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_dims(const GeneratorSpec& spec) {
  if (!wht::is_power_of_two(spec.rows) || !wht::is_power_of_two(spec.cols))
    throw_invalid("generator size " + std::to_string(spec.rows) + "x" + std::to_string(spec.cols) +
                  " is not a power of two in both dimensions");
  if (!std::isfinite(spec.foreground)) throw_invalid("foreground intensity must be finite");
}

Image make_checkerboard(const GeneratorSpec& spec) {
  if (spec.tile == 0) throw_invalid("checkerboard tile size must be >= 1");
  Image img(spec.rows, spec.cols);
  for (std::size_t x = 0; x < spec.rows; ++x)
    for (std::size_t y = 0; y < spec.cols; ++y)
      if ((((x + spec.offset) / spec.tile) + ((y + spec.offset) / spec.tile)) % 2 == 1)
        img.at(x, y) = spec.foreground;
  return img;
}

Image make_step(const GeneratorSpec& spec) {
  if (spec.step_column > spec.cols) throw_invalid("step column beyond image width");
  Image img(spec.rows, spec.cols);
  for (std::size_t x = 0; x < spec.rows; ++x)
    for (std::size_t y = spec.step_column; y < spec.cols; ++y) img.at(x, y) = spec.foreground;
  return img;
}

// Horizontal then vertical running-mean blur with edge clamping.
void box_blur(std::vector<double>& v, std::size_t rows, std::size_t cols, std::size_t radius) {
  std::vector<double> tmp(v.size());
  const auto r = static_cast<std::ptrdiff_t>(radius);
  const double norm = 1.0 / static_cast<double>(2 * radius + 1);
  auto clamp_idx = [](std::ptrdiff_t i, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1));
  };
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y) {
      double acc = 0.0;
      for (std::ptrdiff_t d = -r; d <= r; ++d)
        acc += v[x * cols + clamp_idx(static_cast<std::ptrdiff_t>(y) + d, cols)];
      tmp[x * cols + y] = acc * norm;
    }
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y) {
      double acc = 0.0;
      for (std::ptrdiff_t d = -r; d <= r; ++d)
        acc += tmp[clamp_idx(static_cast<std::ptrdiff_t>(x) + d, rows) * cols + y];
      v[x * cols + y] = acc * norm;
    }
}

Image make_blobs(const GeneratorSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<double> noise(spec.rows * spec.cols);
  for (double& v : noise) v = unit(rng);
  const std::size_t radius =
      spec.blur_radius != 0 ? spec.blur_radius : std::max<std::size_t>(1, std::min(spec.rows, spec.cols) / 32);
  for (unsigned p = 0; p < spec.blur_passes; ++p) box_blur(noise, spec.rows, spec.cols, radius);

  std::vector<double> sorted = noise;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  const double median = *mid;
  Image img(spec.rows, spec.cols);
  for (std::size_t i = 0; i < noise.size(); ++i) img.pixels()[i] = noise[i] >= median ? spec.foreground : 0.0;
  return img;
}

std::vector<Vertex> random_convex_polygon(const GeneratorSpec& spec) {
  if (spec.sides < 3) throw_invalid("polygon needs at least 3 sides");
  std::mt19937_64 rng(spec.seed);
  const double h = static_cast<double>(spec.rows);
  const double w = static_cast<double>(spec.cols);
  const double radius = (0.25 + 0.15 * unit(rng)) * std::min(h, w);
  const double cx = h / 2.0 + (unit(rng) - 0.5) * 0.1 * h;
  const double cy = w / 2.0 + (unit(rng) - 0.5) * 0.1 * w;
  // Points on a common circle in angular order are always convex.
  std::vector<double> angles(spec.sides);
  for (double& a : angles) a = unit(rng) * 2.0 * std::numbers::pi;
  std::sort(angles.begin(), angles.end());
  std::vector<Vertex> verts;
  for (double a : angles) verts.push_back({cx + radius * std::sin(a), cy + radius * std::cos(a)});
  return verts;
}

// Even-odd rule at pixel centres.
Image make_polygon(const GeneratorSpec& spec) {
  const std::vector<Vertex> verts = spec.vertices.empty() ? random_convex_polygon(spec) : spec.vertices;
  if (verts.size() < 3) throw_invalid("polygon needs at least 3 vertices");
  Image img(spec.rows, spec.cols);
  for (std::size_t x = 0; x < spec.rows; ++x) {
    for (std::size_t y = 0; y < spec.cols; ++y) {
      const double px = static_cast<double>(x) + 0.5;
      const double py = static_cast<double>(y) + 0.5;
      bool inside = false;
      for (std::size_t i = 0, j = verts.size() - 1; i < verts.size(); j = i++) {
        const Vertex& a = verts[i];
        const Vertex& b = verts[j];
        if ((a.x > px) != (b.x > px) && py < (b.y - a.y) * (px - a.x) / (b.x - a.x) + a.y)
          inside = !inside;
      }
      if (inside) img.at(x, y) = spec.foreground;
    }
  }
  return img;
}

}  // namespace

Image load_image(const fs::path& path, bool pad) {
  const std::string ext = lower_extension(path);
  Image img;
  if (ext == ".png")
    img = read_png(path);
  else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
    img = read_pnm(path);
  else
    io_error(path, "unrecognized image extension '" + ext + "' (use .pgm, .ppm or .png)");

  if (!img.has_power_of_two_dims()) {
    if (!pad)
      throw_invalid(path.string() + ": dimensions " + std::to_string(img.rows()) + "x" +
                    std::to_string(img.cols()) + " are not powers of two (use padding)");
    img = pad_to_power_of_two(img);
  }
  return img;
}

void save_image(const Image& img, const fs::path& path) {
  if (img.empty()) throw_invalid("cannot save an empty image");
  const std::string ext = lower_extension(path);
  if (ext == ".png")
    write_png(img, path);
  else if (ext == ".pgm")
    write_pgm(img, path);
  else
    io_error(path, "unrecognized output extension '" + ext + "' (use .pgm or .png)");
}

Image pad_to_power_of_two(const Image& img) {
  Image out(next_power_of_two(img.rows()), next_power_of_two(img.cols()));
  for (std::size_t x = 0; x < img.rows(); ++x)
    for (std::size_t y = 0; y < img.cols(); ++y) out.at(x, y) = img.at(x, y);
  return out;
}

Image transpose(const Image& img) {
  Image out(img.cols(), img.rows());
  for (std::size_t x = 0; x < img.rows(); ++x)
    for (std::size_t y = 0; y < img.cols(); ++y) out.at(y, x) = img.at(x, y);
  return out;
}

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "checkerboard") return GeneratorKind::Checkerboard;
  if (name == "blobs") return GeneratorKind::Blobs;
  if (name == "polygon") return GeneratorKind::Polygon;
  if (name == "step") return GeneratorKind::Step;
  if (name == "constant") return GeneratorKind::Constant;
  throw_invalid("unknown generator kind '" + std::string(name) + "'");
}

std::string_view generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Checkerboard: return "checkerboard";
    case GeneratorKind::Blobs: return "blobs";
    case GeneratorKind::Polygon: return "polygon";
    case GeneratorKind::Step: return "step";
    case GeneratorKind::Constant: return "constant";
  }
  return "unknown";
}

Image generate(const GeneratorSpec& spec) {
  check_dims(spec);
  switch (spec.kind) {
    case GeneratorKind::Checkerboard: return make_checkerboard(spec);
    case GeneratorKind::Blobs: return make_blobs(spec);
    case GeneratorKind::Polygon: return make_polygon(spec);
    case GeneratorKind::Step: return make_step(spec);
    case GeneratorKind::Constant: return Image(spec.rows, spec.cols, spec.foreground);
  }
  throw_invalid("unknown generator kind");
}

}  // namespace seqedge::imaging
