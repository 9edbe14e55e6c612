#include "pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "encoding.hpp"
#include "error.hpp"
#include "imaging.hpp"
#include "qsim.hpp"
#include "wht.hpp"

namespace seqedge::pipeline {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t parse_size(std::string_view s, std::string_view whole) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end)
    throw_invalid("cannot parse cutoff '" + std::string(whole) + "'");
  return v;
}

// |a| * scale_a + |b| * scale_b, clipped to [0, 255].
Image combine(const Image& a, double scale_a, const Image& b, double scale_b) {
  Image out(a.rows(), a.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = std::abs(a.pixels()[i]) * scale_a + std::abs(b.pixels()[i]) * scale_b;
    out.pixels()[i] = std::clamp(v, 0.0, 255.0);
  }
  return out;
}

void check_scale(double s, const char* which) {
  if (!std::isfinite(s) || s < 0.0) throw_invalid(std::string(which) + " scale must be finite and >= 0");
}

EdgeResult degenerate_result(const Image& img, CutoffSpec c) {
  EdgeResult r;
  r.edge_image = Image(img.rows(), img.cols());
  r.cutoff = c;
  r.degenerate = true;
  r.postselect_probability = 0.0;
  return r;
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "oracle") return Mode::Oracle;
  if (name == "circuit") return Mode::Circuit;
  throw_invalid("unknown mode '" + std::string(name) + "' (oracle or circuit)");
}

std::string_view mode_name(Mode mode) { return mode == Mode::Oracle ? "oracle" : "circuit"; }
std::string_view pass_name(Pass pass) { return pass == Pass::Vertical ? "vertical" : "horizontal"; }

void validate_cutoff(CutoffSpec c, std::size_t flattened_length) {
  if (flattened_length < 2 || c.value < 1 || c.value > flattened_length - 1)
    throw_invalid("cutoff " + std::to_string(c.value) + " outside [1, " +
                  std::to_string(flattened_length > 0 ? flattened_length - 1 : 0) + "]");
}

CutoffSpec resolve_cutoff(std::string_view text, std::size_t flattened_length) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  CutoffSpec c;
  if (text.starts_with("N/") || text.starts_with("n/")) {
    const std::size_t divisor = parse_size(text.substr(2), text);
    if (divisor == 0 || flattened_length % divisor != 0)
      throw_invalid("cutoff '" + std::string(text) + "' does not divide N = " + std::to_string(flattened_length));
    c.value = flattened_length / divisor;
  } else {
    c.value = parse_size(text, text);
  }
  validate_cutoff(c, flattened_length);
  return c;
}

EdgeResult edge_detect_pass(const Image& img, CutoffSpec c, Mode mode) {
  const encoding::QpieState enc = encoding::qpie_encode(img);
  validate_cutoff(c, enc.amplitudes.size());
  const unsigned n = enc.qubits();
  const qsim::Circuit circuit = qsim::build_edge_circuit(n, c.value);

  EdgeResult result;
  result.cutoff = c;
  result.gate_count = qsim::gate_count(circuit);
  result.depth = qsim::circuit_depth(circuit);
  result.qubits = n + 1;

  std::vector<double> high;
  if (mode == Mode::Circuit) {
    std::vector<double> amps(enc.amplitudes.size() * 2, 0.0);
    std::copy(enc.amplitudes.begin(), enc.amplitudes.end(), amps.begin());  // |0>_a (x) |k>_d
    qsim::StateVector state = qsim::StateVector::from_amplitudes(std::move(amps));
    qsim::run_inplace(circuit, state);
    try {
      qsim::PostSelection sel = qsim::postselect_ancilla(state, n, true);
      result.postselect_probability = sel.probability;
      high = std::move(sel.amplitudes);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegeneratePostselection) throw;
      EdgeResult d = degenerate_result(img, c);
      d.gate_count = result.gate_count;
      d.depth = result.depth;
      d.qubits = result.qubits;
      return d;
    }
  } else {
    const std::vector<double> filtered = wht::highpass(wht::sequency_wht(enc.amplitudes), c.value);
    double prob = 0.0;
    for (double v : filtered) prob += v * v;
    if (prob < qsim::kDegenerateProbability) {
      EdgeResult d = degenerate_result(img, c);
      d.gate_count = result.gate_count;
      d.depth = result.depth;
      d.qubits = result.qubits;
      return d;
    }
    result.postselect_probability = prob;
    high = wht::inverse_sequency_wht(filtered);
  }
  result.edge_image = encoding::qpie_decode(high, enc.norm_factor, img.rows(), img.cols());
  return result;
}

CombinedEdges edge_detect(const Image& img, CutoffSpec c, double v_scale, double h_scale, Mode mode) {
  check_scale(v_scale, "vertical");
  check_scale(h_scale, "horizontal");
  CombinedEdges out;
  out.vertical = edge_detect_pass(img, c, mode);
  out.vertical.scale = v_scale;
  out.horizontal = edge_detect_pass(imaging::transpose(img), c, mode);
  out.horizontal.edge_image = imaging::transpose(out.horizontal.edge_image);
  out.horizontal.pass = Pass::Horizontal;
  out.horizontal.scale = h_scale;
  out.edges = combine(out.vertical.edge_image, v_scale, out.horizontal.edge_image, h_scale);
  return out;
}

std::vector<double> amplitude_permutation(std::span<const double> values) {
  wht::exact_log2(values.size());
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[(i + 1) % values.size()];
  return out;
}

EdgeResult qhed_pass(const Image& img) {
  const encoding::QpieState enc = encoding::qpie_encode(img);
  const std::size_t n = enc.amplitudes.size();
  std::vector<double> doubled(2 * n);
  for (std::size_t i = 0; i < n; ++i) doubled[2 * i] = doubled[2 * i + 1] = enc.amplitudes[i] * kInvSqrt2;

  qsim::StateVector state = qsim::StateVector::from_amplitudes(amplitude_permutation(doubled));
  qsim::apply_gate_inplace(state, qsim::Gate::h(0));

  EdgeResult result;
  result.qubits = state.width();
  try {
    qsim::PostSelection sel = qsim::postselect_ancilla(state, 0, true);
    result.postselect_probability = sel.probability;
    result.edge_image = encoding::qpie_decode(sel.amplitudes, enc.norm_factor, img.rows(), img.cols());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegeneratePostselection) throw;
    result.edge_image = Image(img.rows(), img.cols());
    result.degenerate = true;
  }
  return result;
}

CombinedEdges qhed_detect(const Image& img, double v_scale, double h_scale) {
  check_scale(v_scale, "vertical");
  check_scale(h_scale, "horizontal");
  CombinedEdges out;
  out.vertical = qhed_pass(img);
  out.vertical.scale = v_scale;
  out.horizontal = qhed_pass(imaging::transpose(img));
  out.horizontal.edge_image = imaging::transpose(out.horizontal.edge_image);
  out.horizontal.pass = Pass::Horizontal;
  out.horizontal.scale = h_scale;
  out.edges = combine(out.vertical.edge_image, v_scale, out.horizontal.edge_image, h_scale);
  return out;
}

PipelineResources pipeline_resources(unsigned data_qubits, std::size_t cutoff) {
  PipelineResources r;
  r.data_qubits = data_qubits;
  r.cutoff = cutoff;
  const qsim::Circuit wht = qsim::build_sequency_wht_circuit(data_qubits);
  const qsim::Circuit filter = qsim::build_highpass_circuit(data_qubits, cutoff);
  const qsim::Circuit inverse = qsim::build_inverse_sequency_wht_circuit(data_qubits);
  const qsim::Circuit full = qsim::build_edge_circuit(data_qubits, cutoff);
  r.wht_depth = qsim::circuit_depth(wht);
  r.wht_gates = qsim::gate_count(wht);
  r.filter_gates = qsim::gate_count(filter);
  r.filter_max_controls = qsim::count_gates(filter).max_controls;
  r.inverse_depth = qsim::circuit_depth(inverse);
  r.inverse_gates = qsim::gate_count(inverse);
  r.total_gates = qsim::gate_count(full);
  r.total_depth = qsim::circuit_depth(full);
  return r;
}

CompareReport compare_methods(const Image& img, CutoffSpec c, double v_scale, double h_scale, Mode mode,
                              const metrics::SsimParams& params) {
  CompareReport report;
  report.ssim_params = params;
  report.proposed = edge_detect(img, c, v_scale, h_scale, mode);
  report.qhed = qhed_detect(img, v_scale, h_scale);
  report.ssim_proposed = metrics::ssim(report.proposed.edges, img, params);
  report.ssim_qhed = metrics::ssim(report.qhed.edges, img, params);
  report.resources = pipeline_resources(wht::exact_log2(img.size(), 2), c.value);

  if (img.size() <= kCrosscheckMaxPixels) {
    const Mode other = mode == Mode::Oracle ? Mode::Circuit : Mode::Oracle;
    const EdgeResult v = edge_detect_pass(img, c, other);
    const Image h = imaging::transpose(edge_detect_pass(imaging::transpose(img), c, other).edge_image);
    report.mode_crosscheck = std::max(metrics::max_abs_error(v.edge_image, report.proposed.vertical.edge_image),
                                      metrics::max_abs_error(h, report.proposed.horizontal.edge_image));
  }
  return report;
}

}  // namespace seqedge::pipeline
