#pragma once

// QPIE amplitude encoding: pixels flattened column by column and normalized
// to a unit vector over n1 + n2 qubits.

#include <cstddef>
#include <span>
#include <vector>

#include "image.hpp"

namespace seqedge::encoding {

struct QpieState {
  std::vector<double> amplitudes;
  double norm_factor = 0.0;  // S = sqrt(sum P^2)
  std::size_t rows = 0;
  std::size_t cols = 0;

  /// log2(rows) + log2(cols)
  unsigned qubits() const;
};

/// Index x + y * rows holds P(x, y).
std::vector<double> flatten_column_major(const Image& img);
Image unflatten_column_major(std::span<const double> values, std::size_t rows, std::size_t cols);

/// Requires power-of-two dimensions and a nonzero, finite image.
QpieState qpie_encode(const Image& img);

/// P(x, y) = S * amplitudes[x + y * rows]. Amplitudes need not be normalized.
Image qpie_decode(std::span<const double> amplitudes, double norm_factor, std::size_t rows,
                  std::size_t cols);

}  // namespace seqedge::encoding
