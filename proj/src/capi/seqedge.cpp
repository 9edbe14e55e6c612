#include "seqedge/seqedge.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/encoding.hpp"
#include "core/error.hpp"
#include "core/imaging.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"
#include "core/qsim.hpp"
#include "core/wht.hpp"

struct se_image {
  seqedge::Image image;
};

struct se_circuit {
  seqedge::qsim::Circuit circuit;
};

namespace {

using namespace seqedge;

thread_local std::string g_last_error;

se_status fail(se_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

se_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return SE_ERR_INVALID_INPUT;
    case ErrorCode::Resource: return SE_ERR_RESOURCE;
    case ErrorCode::DegeneratePostselection: return SE_ERR_DEGENERATE_POSTSELECTION;
    case ErrorCode::Io: return SE_ERR_IO;
  }
  return SE_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
se_status guarded(F&& body) {
  try {
    body();
    return SE_OK;
  } catch (const Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SE_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(SE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SE_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw_invalid(std::string(what) + " must not be NULL");
}

se_image* wrap(Image img) { return new se_image{std::move(img)}; }
se_circuit* wrap(qsim::Circuit c) { return new se_circuit{std::move(c)}; }

pipeline::Mode to_mode(se_mode mode) {
  switch (mode) {
    case SE_MODE_ORACLE: return pipeline::Mode::Oracle;
    case SE_MODE_CIRCUIT: return pipeline::Mode::Circuit;
  }
  throw_invalid("unknown mode");
}

metrics::SsimParams to_params(se_ssim_window window) {
  switch (window) {
    case SE_SSIM_GAUSSIAN: return metrics::SsimParams::gaussian();
    case SE_SSIM_UNIFORM: return metrics::SsimParams::uniform();
  }
  throw_invalid("unknown SSIM window");
}

imaging::GeneratorKind to_kind(se_generator_kind kind) {
  switch (kind) {
    case SE_GEN_CHECKERBOARD: return imaging::GeneratorKind::Checkerboard;
    case SE_GEN_BLOBS: return imaging::GeneratorKind::Blobs;
    case SE_GEN_POLYGON: return imaging::GeneratorKind::Polygon;
    case SE_GEN_STEP: return imaging::GeneratorKind::Step;
    case SE_GEN_CONSTANT: return imaging::GeneratorKind::Constant;
  }
  throw_invalid("unknown generator kind");
}

se_pass_info to_info(const pipeline::EdgeResult& r) {
  return se_pass_info{r.cutoff.value, r.scale, r.postselect_probability, r.degenerate ? 1 : 0,
                      r.gate_count,   r.depth, r.qubits};
}

se_pipeline_resources to_resources(const pipeline::PipelineResources& r) {
  return se_pipeline_resources{r.data_qubits,   r.cutoff,          r.wht_depth,   r.wht_gates,
                               r.filter_gates,  r.filter_max_controls, r.inverse_depth, r.inverse_gates,
                               r.total_gates,   r.total_depth};
}

template <typename Transform>
se_status transform_into(const double* in, double* out, std::size_t len, Transform&& t) {
  return guarded([&] {
    require(in, "input");
    require(out, "output");
    const std::vector<double> result = t(std::span<const double>(in, len));
    std::memcpy(out, result.data(), result.size() * sizeof(double));
  });
}

}  // namespace

extern "C" {

const char* se_version(void) { return "0.1.0"; }

const char* se_last_error(void) { return g_last_error.c_str(); }

const char* se_status_name(se_status status) {
  switch (status) {
    case SE_OK: return "ok";
    case SE_ERR_INVALID_INPUT: return "invalid-input";
    case SE_ERR_RESOURCE: return "resource";
    case SE_ERR_DEGENERATE_POSTSELECTION: return "degenerate-postselection";
    case SE_ERR_IO: return "io";
    case SE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

// ---- images

se_status se_image_create(size_t rows, size_t cols, const double* pixels, se_image** out) {
  return guarded([&] {
    require(out, "out");
    require(pixels, "pixels");
    *out = wrap(Image(rows, cols, std::vector<double>(pixels, pixels + rows * cols)));
  });
}

se_status se_image_load(const char* path, int pad, se_image** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(imaging::load_image(path, pad != 0));
  });
}

se_status se_image_save(const se_image* img, const char* path) {
  return guarded([&] {
    require(img, "image");
    require(path, "path");
    imaging::save_image(img->image, path);
  });
}

se_status se_image_transpose(const se_image* img, se_image** out) {
  return guarded([&] {
    require(img, "image");
    require(out, "out");
    *out = wrap(imaging::transpose(img->image));
  });
}

size_t se_image_rows(const se_image* img) { return img ? img->image.rows() : 0; }
size_t se_image_cols(const se_image* img) { return img ? img->image.cols() : 0; }

se_status se_image_pixels(const se_image* img, double* out, size_t len) {
  return guarded([&] {
    require(img, "image");
    require(out, "out");
    if (len < img->image.size()) throw_invalid("output buffer too small");
    std::memcpy(out, img->image.pixels().data(), img->image.size() * sizeof(double));
  });
}

void se_image_free(se_image* img) { delete img; }

void se_generator_spec_init(se_generator_spec* spec, se_generator_kind kind, size_t rows, size_t cols) {
  if (spec == nullptr) return;
  const imaging::GeneratorSpec d;
  *spec = se_generator_spec{kind,     rows,          cols,           d.seed,          d.foreground,
                            d.tile,   d.offset,      d.step_column,  d.blur_radius,   d.blur_passes,
                            nullptr,  0,             d.sides};
}

se_status se_generator_kind_parse(const char* name, se_generator_kind* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    switch (imaging::parse_generator_kind(name)) {
      case imaging::GeneratorKind::Checkerboard: *out = SE_GEN_CHECKERBOARD; break;
      case imaging::GeneratorKind::Blobs: *out = SE_GEN_BLOBS; break;
      case imaging::GeneratorKind::Polygon: *out = SE_GEN_POLYGON; break;
      case imaging::GeneratorKind::Step: *out = SE_GEN_STEP; break;
      case imaging::GeneratorKind::Constant: *out = SE_GEN_CONSTANT; break;
    }
  });
}

se_status se_generate(const se_generator_spec* spec, se_image** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    imaging::GeneratorSpec g;
    g.kind = to_kind(spec->kind);
    g.rows = spec->rows;
    g.cols = spec->cols;
    g.seed = spec->seed;
    g.foreground = spec->foreground;
    g.tile = spec->tile;
    g.offset = spec->offset;
    g.step_column = spec->step_column;
    g.blur_radius = spec->blur_radius;
    g.blur_passes = spec->blur_passes;
    g.sides = spec->sides;
    if (spec->vertex_count > 0) {
      require(spec->vertices, "vertices");
      for (size_t i = 0; i < spec->vertex_count; ++i)
        g.vertices.push_back({spec->vertices[i].x, spec->vertices[i].y});
    }
    *out = wrap(imaging::generate(g));
  });
}

// ---- transforms

se_status se_natural_wht(const double* in, double* out, size_t len) {
  return transform_into(in, out, len, [](std::span<const double> v) { return wht::natural_wht(v); });
}

se_status se_sequency_wht(const double* in, double* out, size_t len) {
  return transform_into(in, out, len, [](std::span<const double> v) { return wht::sequency_wht(v); });
}

se_status se_inverse_sequency_wht(const double* in, double* out, size_t len) {
  return transform_into(in, out, len, [](std::span<const double> v) { return wht::inverse_sequency_wht(v); });
}

se_status se_highpass(const double* in, double* out, size_t len, size_t cutoff) {
  return transform_into(in, out, len, [cutoff](std::span<const double> v) { return wht::highpass(v, cutoff); });
}

se_status se_gray_index(uint64_t m, unsigned bits, uint64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = wht::gray_index(m, bits);
  });
}

se_status se_inverse_gray_index(uint64_t g, unsigned bits, uint64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = wht::inverse_gray_index(g, bits);
  });
}

// ---- edge detection

se_status se_resolve_cutoff(const char* text, size_t flattened_length, size_t* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = pipeline::resolve_cutoff(text, flattened_length).value;
  });
}

se_status se_edge_detect_pass(const se_image* img, size_t cutoff, se_mode mode, se_image** out,
                              se_pass_info* info) {
  return guarded([&] {
    require(img, "image");
    require(out, "out");
    pipeline::EdgeResult r = pipeline::edge_detect_pass(img->image, {cutoff}, to_mode(mode));
    if (info) *info = to_info(r);
    *out = wrap(std::move(r.edge_image));
  });
}

se_status se_edge_detect(const se_image* img, size_t cutoff, double v_scale, double h_scale, se_mode mode,
                         se_image** out, se_pass_info* vertical, se_pass_info* horizontal) {
  return guarded([&] {
    require(img, "image");
    require(out, "out");
    pipeline::CombinedEdges r = pipeline::edge_detect(img->image, {cutoff}, v_scale, h_scale, to_mode(mode));
    if (vertical) *vertical = to_info(r.vertical);
    if (horizontal) *horizontal = to_info(r.horizontal);
    *out = wrap(std::move(r.edges));
  });
}

se_status se_qhed_pass(const se_image* img, se_image** out, se_pass_info* info) {
  return guarded([&] {
    require(img, "image");
    require(out, "out");
    pipeline::EdgeResult r = pipeline::qhed_pass(img->image);
    if (info) *info = to_info(r);
    *out = wrap(std::move(r.edge_image));
  });
}

se_status se_qhed_detect(const se_image* img, double v_scale, double h_scale, se_image** out,
                         se_pass_info* vertical, se_pass_info* horizontal) {
  return guarded([&] {
    require(img, "image");
    require(out, "out");
    pipeline::CombinedEdges r = pipeline::qhed_detect(img->image, v_scale, h_scale);
    if (vertical) *vertical = to_info(r.vertical);
    if (horizontal) *horizontal = to_info(r.horizontal);
    *out = wrap(std::move(r.edges));
  });
}

se_status se_amplitude_permutation(const double* in, double* out, size_t len) {
  return transform_into(in, out, len,
                        [](std::span<const double> v) { return pipeline::amplitude_permutation(v); });
}

se_status se_pipeline_resources_for(unsigned data_qubits, size_t cutoff, se_pipeline_resources* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_resources(pipeline::pipeline_resources(data_qubits, cutoff));
  });
}

se_status se_compare(const se_image* img, size_t cutoff, double v_scale, double h_scale, se_mode mode,
                     se_ssim_window window, se_compare_result* result, se_image** proposed_out,
                     se_image** qhed_out) {
  return guarded([&] {
    require(img, "image");
    require(result, "result");
    pipeline::CompareReport r =
        pipeline::compare_methods(img->image, {cutoff}, v_scale, h_scale, to_mode(mode), to_params(window));
    result->ssim_proposed = r.ssim_proposed;
    result->ssim_qhed = r.ssim_qhed;
    result->proposed_vertical = to_info(r.proposed.vertical);
    result->proposed_horizontal = to_info(r.proposed.horizontal);
    result->qhed_vertical = to_info(r.qhed.vertical);
    result->qhed_horizontal = to_info(r.qhed.horizontal);
    result->resources = to_resources(r.resources);
    result->has_crosscheck = r.mode_crosscheck.has_value() ? 1 : 0;
    result->crosscheck_max_abs = r.mode_crosscheck.value_or(0.0);
    se_image* p = proposed_out ? wrap(std::move(r.proposed.edges)) : nullptr;
    if (qhed_out) *qhed_out = wrap(std::move(r.qhed.edges));
    if (proposed_out) *proposed_out = p;
  });
}

// ---- metrics

se_status se_ssim(const se_image* a, const se_image* b, se_ssim_window window, double* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = metrics::ssim(a->image, b->image, to_params(window));
  });
}

se_status se_l2_error(const se_image* a, const se_image* b, double* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = metrics::l2_error(a->image, b->image);
  });
}

se_status se_max_abs_error(const se_image* a, const se_image* b, double* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = metrics::max_abs_error(a->image, b->image);
  });
}

// ---- circuits

se_status se_circuit_sequency_wht(unsigned n, se_circuit** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(qsim::build_sequency_wht_circuit(n));
  });
}

se_status se_circuit_inverse_sequency_wht(unsigned n, se_circuit** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(qsim::build_inverse_sequency_wht_circuit(n));
  });
}

se_status se_circuit_highpass(unsigned n, uint64_t cutoff, se_circuit** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(qsim::build_highpass_circuit(n, cutoff));
  });
}

se_status se_circuit_edge(unsigned n, uint64_t cutoff, se_circuit** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(qsim::build_edge_circuit(n, cutoff));
  });
}

se_status se_circuit_from_qasm(const char* text, se_circuit** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(qsim::import_qasm(text).circuit);
  });
}

unsigned se_circuit_width(const se_circuit* c) { return c ? c->circuit.width() : 0; }
size_t se_circuit_gate_count(const se_circuit* c) { return c ? qsim::gate_count(c->circuit) : 0; }
size_t se_circuit_depth(const se_circuit* c) { return c ? qsim::circuit_depth(c->circuit) : 0; }

se_status se_circuit_run(const se_circuit* c, double* amplitudes, size_t len) {
  return guarded([&] {
    require(c, "circuit");
    require(amplitudes, "amplitudes");
    qsim::StateVector state = qsim::StateVector::from_amplitudes(std::vector<double>(amplitudes, amplitudes + len));
    qsim::run_inplace(c->circuit, state);
    std::memcpy(amplitudes, state.amplitudes().data(), len * sizeof(double));
  });
}

se_status se_circuit_to_qasm(const se_circuit* c, char** out) {
  return guarded([&] {
    require(c, "circuit");
    require(out, "out");
    const std::string text = qsim::export_qasm(c->circuit);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void se_circuit_free(se_circuit* c) { delete c; }

void se_string_free(char* s) { std::free(s); }

}  // extern "C"
