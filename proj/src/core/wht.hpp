#pragma once

// Classical Walsh-Hadamard transforms in natural and sequency order.
//
// All transforms are orthonormal: a forward transform carries the 1/sqrt(N)
// factor, so natural_wht is its own inverse and the sequency transform is
// inverted by its transpose. Bit 0 is the least-significant bit of an index.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "matrix.hpp"

namespace seqedge::wht {

constexpr unsigned kMaxDenseBits = 10;

bool is_power_of_two(std::size_t n) noexcept;

/// Returns log2(n); throws InvalidInput unless n is a power of two >= `min`.
unsigned exact_log2(std::size_t n, std::size_t min = 2);

/// In-place orthonormal butterfly, one 1/sqrt(2) per stage.
void natural_wht_inplace(std::span<double> values);

std::vector<double> natural_wht(std::span<const double> values);

/// Maps a natural (Hadamard) index m to its sequency index g, where bit i of g
/// is the XOR of bits 0..bits-1-i of m.
std::uint64_t gray_index(std::uint64_t m, unsigned bits);

/// Inverse of gray_index: bit i of m is g_{bits-i} ^ g_{bits-1-i}, with the
/// out-of-range bit g_bits taken as 0.
std::uint64_t inverse_gray_index(std::uint64_t g, unsigned bits);

/// table[g] = inverse_gray_index(g, bits) for every g.
std::vector<std::uint64_t> sequency_to_natural_table(unsigned bits);

std::vector<double> sequency_wht(std::span<const double> values);
std::vector<double> inverse_sequency_wht(std::span<const double> coeffs);

/// Zeroes every coefficient with sequency below `cutoff`; 1 <= cutoff <= N-1.
std::vector<double> highpass(std::span<const double> coeffs, std::size_t cutoff);

/// Dense (1/sqrt(N)) H^S for bits <= kMaxDenseBits. Entry (g, k) carries sign
/// (-1)^{sum_r g_{n-1-r} (k_r ^ k_{r+1})}.
DenseMatrix sequency_wht_matrix(unsigned bits);

}  // namespace seqedge::wht
