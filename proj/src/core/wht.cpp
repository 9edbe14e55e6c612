#include "wht.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace seqedge::wht {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_index(std::uint64_t value, unsigned bits, const char* what) {
  if (bits == 0 || bits > 63) throw_invalid(std::string(what) + ": bit width must be in [1, 63]");
  if (value >= (std::uint64_t{1} << bits))
    throw_invalid(std::string(what) + ": index " + std::to_string(value) + " out of range for " +
                  std::to_string(bits) + " bits");
}

void check_finite(std::span<const double> values) {
  for (double v : values)
    if (!std::isfinite(v)) throw_invalid("transform input contains a non-finite value");
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

unsigned exact_log2(std::size_t n, std::size_t min) {
  if (!is_power_of_two(n) || n < min)
    throw_invalid("length " + std::to_string(n) + " is not a power of two >= " + std::to_string(min));
  unsigned bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

void natural_wht_inplace(std::span<double> values) {
  const std::size_t n = values.size();
  exact_log2(n);
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      double* lo = values.data() + block;
      double* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        const double a = lo[j];
        const double b = hi[j];
        lo[j] = (a + b) * kInvSqrt2;
        hi[j] = (a - b) * kInvSqrt2;
      }
    }
  }
}

std::vector<double> natural_wht(std::span<const double> values) {
  check_finite(values);
  std::vector<double> out(values.begin(), values.end());
  natural_wht_inplace(out);
  return out;
}

std::uint64_t gray_index(std::uint64_t m, unsigned bits) {
  check_index(m, bits, "gray_index");
  std::uint64_t g = 0;
  unsigned running = 0;
  // running = m_0 ^ ... ^ m_j lands on bit bits-1-j of g.
  for (unsigned j = 0; j < bits; ++j) {
    running ^= static_cast<unsigned>((m >> j) & 1U);
    g |= std::uint64_t{running} << (bits - 1 - j);
  }
  return g;
}

std::uint64_t inverse_gray_index(std::uint64_t g, unsigned bits) {
  check_index(g, bits, "inverse_gray_index");
  auto bit = [&](unsigned i) -> std::uint64_t { return i >= bits ? 0 : (g >> i) & 1U; };
  std::uint64_t m = 0;
  for (unsigned i = 0; i < bits; ++i) m |= (bit(bits - i) ^ bit(bits - i - 1)) << i;
  return m;
}

std::vector<std::uint64_t> sequency_to_natural_table(unsigned bits) {
  const std::size_t n = std::size_t{1} << bits;
  std::vector<std::uint64_t> table(n);
  for (std::size_t g = 0; g < n; ++g) table[g] = inverse_gray_index(g, bits);
  return table;
}

std::vector<double> sequency_wht(std::span<const double> values) {
  const unsigned bits = exact_log2(values.size());
  const std::vector<double> natural = natural_wht(values);
  const auto table = sequency_to_natural_table(bits);
  std::vector<double> out(natural.size());
  for (std::size_t g = 0; g < out.size(); ++g) out[g] = natural[table[g]];
  return out;
}

std::vector<double> inverse_sequency_wht(std::span<const double> coeffs) {
  const unsigned bits = exact_log2(coeffs.size());
  check_finite(coeffs);
  std::vector<double> natural(coeffs.size());
  for (std::size_t m = 0; m < natural.size(); ++m) natural[m] = coeffs[gray_index(m, bits)];
  natural_wht_inplace(natural);
  return natural;
}

std::vector<double> highpass(std::span<const double> coeffs, std::size_t cutoff) {
  exact_log2(coeffs.size());
  if (cutoff < 1 || cutoff >= coeffs.size())
    throw_invalid("cutoff " + std::to_string(cutoff) + " outside [1, " +
                  std::to_string(coeffs.size() - 1) + "]");
  std::vector<double> out(coeffs.begin(), coeffs.end());
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(cutoff), 0.0);
  return out;
}

DenseMatrix sequency_wht_matrix(unsigned bits) {
  if (bits == 0) throw_invalid("sequency_wht_matrix: bit width must be >= 1");
  if (bits > kMaxDenseBits)
    throw Error(ErrorCode::Resource, "sequency_wht_matrix: " + std::to_string(bits) +
                                         " bits exceeds the dense limit of " +
                                         std::to_string(kMaxDenseBits));
  const std::size_t n = std::size_t{1} << bits;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  auto bit = [bits](std::size_t v, unsigned i) -> unsigned {
    return i >= bits ? 0U : static_cast<unsigned>((v >> i) & 1U);
  };
  DenseMatrix h(n, n);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t k = 0; k < n; ++k) {
      unsigned parity = 0;
      for (unsigned r = 0; r < bits; ++r) parity ^= bit(g, bits - 1 - r) & (bit(k, r) ^ bit(k, r + 1));
      h(g, k) = parity ? -scale : scale;
    }
  }
  return h;
}

}  // namespace seqedge::wht
