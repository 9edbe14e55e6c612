#include "encoding.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "wht.hpp"

namespace seqedge {

Image::Image(std::size_t rows, std::size_t cols, std::vector<double> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (pixels_.size() != rows_ * cols_)
    throw_invalid("image buffer has " + std::to_string(pixels_.size()) + " pixels, expected " +
                  std::to_string(rows_ * cols_));
}

bool Image::has_power_of_two_dims() const noexcept {
  return wht::is_power_of_two(rows_) && wht::is_power_of_two(cols_);
}

namespace encoding {

unsigned QpieState::qubits() const {
  return wht::exact_log2(rows, 1) + wht::exact_log2(cols, 1);
}

std::vector<double> flatten_column_major(const Image& img) {
  std::vector<double> out(img.size());
  for (std::size_t y = 0; y < img.cols(); ++y)
    for (std::size_t x = 0; x < img.rows(); ++x) out[x + y * img.rows()] = img.at(x, y);
  return out;
}

Image unflatten_column_major(std::span<const double> values, std::size_t rows, std::size_t cols) {
  if (values.size() != rows * cols)
    throw_invalid("cannot unflatten " + std::to_string(values.size()) + " values into " +
                  std::to_string(rows) + "x" + std::to_string(cols));
  Image img(rows, cols);
  for (std::size_t y = 0; y < cols; ++y)
    for (std::size_t x = 0; x < rows; ++x) img.at(x, y) = values[x + y * rows];
  return img;
}

QpieState qpie_encode(const Image& img) {
  if (img.empty() || !img.has_power_of_two_dims())
    throw_invalid("QPIE needs power-of-two dimensions, got " + std::to_string(img.rows()) + "x" +
                  std::to_string(img.cols()));
  double sum_sq = 0.0;
  for (double p : img.pixels()) {
    if (!std::isfinite(p)) throw_invalid("image contains a non-finite intensity");
    sum_sq += p * p;
  }
  if (sum_sq == 0.0) throw_invalid("cannot encode an all-zero image");

  QpieState state;
  state.rows = img.rows();
  state.cols = img.cols();
  state.norm_factor = std::sqrt(sum_sq);
  state.amplitudes = flatten_column_major(img);
  for (double& a : state.amplitudes) a /= state.norm_factor;
  return state;
}

Image qpie_decode(std::span<const double> amplitudes, double norm_factor, std::size_t rows,
                  std::size_t cols) {
  if (amplitudes.size() != rows * cols)
    throw_invalid("decode: " + std::to_string(amplitudes.size()) + " amplitudes for a " +
                  std::to_string(rows) + "x" + std::to_string(cols) + " image");
  Image img = unflatten_column_major(amplitudes, rows, cols);
  for (double& p : img.pixels()) p *= norm_factor;
  return img;
}

}  // namespace encoding
}  // namespace seqedge
