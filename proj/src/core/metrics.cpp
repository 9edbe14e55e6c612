#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"

namespace seqedge::metrics {
namespace {

void check_same_dims(const Image& a, const Image& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw_invalid("image dimensions differ: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                  " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

std::vector<double> window_weights(const SsimParams& p) {
  std::vector<double> w(static_cast<std::size_t>(p.size));
  const int half = p.size / 2;
  double total = 0.0;
  for (int i = 0; i < p.size; ++i) {
    const double d = i - half;
    w[static_cast<std::size_t>(i)] =
        p.window == WindowKind::Gaussian ? std::exp(-(d * d) / (2.0 * p.sigma * p.sigma)) : 1.0;
    total += w[static_cast<std::size_t>(i)];
  }
  for (double& v : w) v /= total;
  return w;
}

// Separable "valid" filtering: output is (rows-k+1) x (cols-k+1).
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t rows, std::size_t cols,
                                 const std::vector<double>& w) {
  const std::size_t k = w.size();
  const std::size_t out_rows = rows - k + 1;
  const std::size_t out_cols = cols - k + 1;
  std::vector<double> tmp(rows * out_cols, 0.0);
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < out_cols; ++y) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += w[j] * src[x * cols + y + j];
      tmp[x * out_cols + y] = acc;
    }
  std::vector<double> out(out_rows * out_cols, 0.0);
  for (std::size_t x = 0; x < out_rows; ++x)
    for (std::size_t y = 0; y < out_cols; ++y) {
      double acc = 0.0;
      for (std::size_t i = 0; i < k; ++i) acc += w[i] * tmp[(x + i) * out_cols + y];
      out[x * out_cols + y] = acc;
    }
  return out;
}

}  // namespace

SsimParams parse_ssim_window(std::string_view name) {
  if (name == "gaussian") return SsimParams::gaussian();
  if (name == "uniform") return SsimParams::uniform();
  throw_invalid("unknown SSIM window '" + std::string(name) + "' (gaussian or uniform)");
}

std::string_view ssim_window_name(const SsimParams& params) {
  return params.window == WindowKind::Gaussian ? "gaussian" : "uniform";
}

double ssim(const Image& a, const Image& b, const SsimParams& params) {
  check_same_dims(a, b);
  if (params.size < 1 || params.size % 2 == 0) throw_invalid("SSIM window size must be odd");
  if (params.window == WindowKind::Gaussian && !(params.sigma > 0.0))
    throw_invalid("SSIM Gaussian sigma must be positive");
  const auto k = static_cast<std::size_t>(params.size);
  if (a.rows() < k || a.cols() < k)
    throw_invalid("image " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                  " is smaller than the " + std::to_string(k) + "x" + std::to_string(k) + " SSIM window");

  const std::size_t n = a.size();
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  std::vector<double> aa(n), bb(n), ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    aa[i] = pa[i] * pa[i];
    bb[i] = pb[i] * pb[i];
    ab[i] = pa[i] * pb[i];
  }
  const auto w = window_weights(params);
  const auto mu_a = filter_valid(pa, a.rows(), a.cols(), w);
  const auto mu_b = filter_valid(pb, a.rows(), a.cols(), w);
  const auto e_aa = filter_valid(aa, a.rows(), a.cols(), w);
  const auto e_bb = filter_valid(bb, a.rows(), a.cols(), w);
  const auto e_ab = filter_valid(ab, a.rows(), a.cols(), w);

  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double var_a = e_aa[i] - ma * ma;
    const double var_b = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
  }
  return total / static_cast<double>(mu_a.size());
}

double l2_error(const Image& a, const Image& b) {
  check_same_dims(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.pixels()[i] - b.pixels()[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double max_abs_error(const Image& a, const Image& b) {
  check_same_dims(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.pixels()[i] - b.pixels()[i]));
  return m;
}

}  // namespace seqedge::metrics
