#pragma once

#include <string_view>

#include "image.hpp"

namespace seqedge::metrics {

enum class WindowKind { Gaussian, Uniform };

struct SsimParams {
  WindowKind window = WindowKind::Gaussian;
  int size = 11;
  double sigma = 1.5;  // Gaussian only
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;

  static SsimParams gaussian() { return {}; }
  static SsimParams uniform() { return {WindowKind::Uniform, 7, 0.0}; }
};

SsimParams parse_ssim_window(std::string_view name);
std::string_view ssim_window_name(const SsimParams& params);

/// Mean SSIM over every fully contained window position (no padding).
/// Local statistics use the normalized window weights.
double ssim(const Image& a, const Image& b, const SsimParams& params = {});

/// Frobenius norm of a - b.
double l2_error(const Image& a, const Image& b);
double max_abs_error(const Image& a, const Image& b);

}  // namespace seqedge::metrics
