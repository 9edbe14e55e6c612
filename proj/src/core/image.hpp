#pragma once

#include <cstddef>
#include <vector>

namespace seqedge {

// Grayscale intensity grid. x indexes rows (height N1), y indexes columns
// (width N2). Storage is row-major. Values are real so filtered (signed)
// outputs can be represented before display mapping.
class Image {
 public:
  Image() = default;
  Image(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), pixels_(rows * cols, fill) {}
  Image(std::size_t rows, std::size_t cols, std::vector<double> pixels);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  double& at(std::size_t x, std::size_t y) { return pixels_[x * cols_ + y]; }
  double at(std::size_t x, std::size_t y) const { return pixels_[x * cols_ + y]; }

  const std::vector<double>& pixels() const noexcept { return pixels_; }
  std::vector<double>& pixels() noexcept { return pixels_; }

  bool has_power_of_two_dims() const noexcept;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> pixels_;
};

}  // namespace seqedge
