#pragma once

// End-to-end edge detection: sequency-ordered WHT, ancilla-tagged high-pass
// filter and post-selection, run either as a gate-level simulation or through
// the classical fast transform. Also the QHED amplitude-permutation baseline.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "image.hpp"
#include "metrics.hpp"

namespace seqedge::pipeline {

enum class Mode { Oracle, Circuit };
enum class Pass { Vertical, Horizontal };

Mode parse_mode(std::string_view name);
std::string_view mode_name(Mode mode);
std::string_view pass_name(Pass pass);

/// Sequency cutoff; coefficients with sequency < value are removed.
struct CutoffSpec {
  std::size_t value = 0;
};

/// Accepts an integer or the symbolic "N/2", "N/4" (any "N/<power of two>"),
/// resolved against the flattened length; validates 1 <= c <= N-1.
CutoffSpec resolve_cutoff(std::string_view text, std::size_t flattened_length);
void validate_cutoff(CutoffSpec c, std::size_t flattened_length);

struct EdgeResult {
  Image edge_image;  // signed intensities
  CutoffSpec cutoff;
  Pass pass = Pass::Vertical;
  double scale = 1.0;
  double postselect_probability = 0.0;
  bool degenerate = false;  // nothing survived the filter
  std::size_t gate_count = 0;
  std::size_t depth = 0;
  std::size_t qubits = 0;
};

/// One pass over the image as given (vertical edges). Circuit mode simulates
/// the (n+1)-qubit edge circuit and reads the ancilla=1 block; oracle mode
/// uses the classical fast transforms. A constant image gives a zero edge
/// image with degenerate set.
EdgeResult edge_detect_pass(const Image& img, CutoffSpec c, Mode mode);

struct CombinedEdges {
  Image edges;  // in [0, 255]
  EdgeResult vertical;
  EdgeResult horizontal;
};

constexpr double kDefaultVerticalScale = 3.0;
constexpr double kDefaultHorizontalScale = 2.0;

/// clip(v_scale * |vertical| + h_scale * |horizontal|, 0, 255), where the
/// horizontal pass runs on the transpose and is transposed back.
CombinedEdges edge_detect(const Image& img, CutoffSpec c, double v_scale = kDefaultVerticalScale,
                          double h_scale = kDefaultHorizontalScale, Mode mode = Mode::Oracle);

/// Cyclic up-shift out[i] = in[(i + 1) mod len]; len must be a power of two.
std::vector<double> amplitude_permutation(std::span<const double> values);

/// QHED on one orientation: duplicate amplitudes, permute, Hadamard on the
/// least-significant qubit, keep odd indices. Output pixel at flattened
/// index i is (P_i - P_{i+1 mod N}) / 2.
EdgeResult qhed_pass(const Image& img);
CombinedEdges qhed_detect(const Image& img, double v_scale = kDefaultVerticalScale,
                          double h_scale = kDefaultHorizontalScale);

struct PipelineResources {
  unsigned data_qubits = 0;
  std::size_t cutoff = 0;
  std::size_t wht_depth = 0;
  std::size_t wht_gates = 0;
  std::size_t filter_gates = 0;
  std::size_t filter_max_controls = 0;
  std::size_t inverse_depth = 0;
  std::size_t inverse_gates = 0;
  std::size_t total_gates = 0;
  std::size_t total_depth = 0;
};

PipelineResources pipeline_resources(unsigned data_qubits, std::size_t cutoff);

struct CompareReport {
  double ssim_proposed = 0.0;
  double ssim_qhed = 0.0;
  metrics::SsimParams ssim_params;
  CombinedEdges proposed;
  CombinedEdges qhed;
  PipelineResources resources;
  /// Max |circuit - oracle| over both passes, when the image is small enough
  /// (<= 64x64) to cross-check.
  std::optional<double> mode_crosscheck;
};

constexpr std::size_t kCrosscheckMaxPixels = 64 * 64;

CompareReport compare_methods(const Image& img, CutoffSpec c, double v_scale = kDefaultVerticalScale,
                              double h_scale = kDefaultHorizontalScale, Mode mode = Mode::Oracle,
                              const metrics::SsimParams& params = {});

}  // namespace seqedge::pipeline
