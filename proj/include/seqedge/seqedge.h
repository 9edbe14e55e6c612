/*
 * seqedge: edge detection with a sequency-ordered Walsh-Hadamard transform
 * and an ancilla-tagged high-pass filter, simulated at gate level or run
 * through a classical fast transform.
 *
 * Plain C interface over the C++ core. Objects are opaque handles released
 * with the matching *_free function. Every fallible call returns an
 * se_status; on failure, se_last_error() describes the problem for the
 * calling thread until its next failing call.
 */
#ifndef SEQEDGE_SEQEDGE_H
#define SEQEDGE_SEQEDGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SEQEDGE_BUILDING_LIBRARY)
#    define SEQEDGE_API __declspec(dllexport)
#  else
#    define SEQEDGE_API __declspec(dllimport)
#  endif
#else
#  define SEQEDGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum se_status {
  SE_OK = 0,
  SE_ERR_INVALID_INPUT = 1,
  SE_ERR_RESOURCE = 2,
  SE_ERR_DEGENERATE_POSTSELECTION = 3,
  SE_ERR_IO = 4,
  SE_ERR_INTERNAL = 5
} se_status;

typedef enum se_mode { SE_MODE_ORACLE = 0, SE_MODE_CIRCUIT = 1 } se_mode;

typedef enum se_ssim_window { SE_SSIM_GAUSSIAN = 0, SE_SSIM_UNIFORM = 1 } se_ssim_window;

typedef enum se_generator_kind {
  SE_GEN_CHECKERBOARD = 0,
  SE_GEN_BLOBS = 1,
  SE_GEN_POLYGON = 2,
  SE_GEN_STEP = 3,
  SE_GEN_CONSTANT = 4
} se_generator_kind;

typedef struct se_image se_image;
typedef struct se_circuit se_circuit;

SEQEDGE_API const char* se_version(void);
SEQEDGE_API const char* se_last_error(void);
SEQEDGE_API const char* se_status_name(se_status status);

/* ---- images ------------------------------------------------------------ */

/* pixels: rows*cols values, row-major. */
SEQEDGE_API se_status se_image_create(size_t rows, size_t cols, const double* pixels, se_image** out);
SEQEDGE_API se_status se_image_load(const char* path, int pad, se_image** out);
SEQEDGE_API se_status se_image_save(const se_image* img, const char* path);
SEQEDGE_API se_status se_image_transpose(const se_image* img, se_image** out);
SEQEDGE_API size_t se_image_rows(const se_image* img);
SEQEDGE_API size_t se_image_cols(const se_image* img);
/* Copies rows*cols pixels (row-major) into out; len must be at least that. */
SEQEDGE_API se_status se_image_pixels(const se_image* img, double* out, size_t len);
SEQEDGE_API void se_image_free(se_image* img);

typedef struct se_vertex {
  double x; /* row */
  double y; /* column */
} se_vertex;

typedef struct se_generator_spec {
  se_generator_kind kind;
  size_t rows;
  size_t cols;
  uint64_t seed;
  double foreground;
  size_t tile;        /* checkerboard */
  size_t offset;      /* checkerboard grid shift */
  size_t step_column; /* step */
  size_t blur_radius; /* blobs, 0 = automatic */
  unsigned blur_passes;
  const se_vertex* vertices; /* polygon; NULL for a random convex polygon */
  size_t vertex_count;
  unsigned sides;
} se_generator_spec;

/* Fills a spec with defaults for the given kind and size. */
SEQEDGE_API void se_generator_spec_init(se_generator_spec* spec, se_generator_kind kind, size_t rows,
                                        size_t cols);
SEQEDGE_API se_status se_generator_kind_parse(const char* name, se_generator_kind* out);
SEQEDGE_API se_status se_generate(const se_generator_spec* spec, se_image** out);

/* ---- classical transforms (in and out may alias) ----------------------- */

SEQEDGE_API se_status se_natural_wht(const double* in, double* out, size_t len);
SEQEDGE_API se_status se_sequency_wht(const double* in, double* out, size_t len);
SEQEDGE_API se_status se_inverse_sequency_wht(const double* in, double* out, size_t len);
SEQEDGE_API se_status se_highpass(const double* in, double* out, size_t len, size_t cutoff);
SEQEDGE_API se_status se_gray_index(uint64_t m, unsigned bits, uint64_t* out);
SEQEDGE_API se_status se_inverse_gray_index(uint64_t g, unsigned bits, uint64_t* out);

/* ---- edge detection ---------------------------------------------------- */

/* Accepts an integer or "N/2", "N/4", ...; validates 1 <= c <= N-1. */
SEQEDGE_API se_status se_resolve_cutoff(const char* text, size_t flattened_length, size_t* out);

typedef struct se_pass_info {
  size_t cutoff;
  double scale;
  double postselect_probability;
  int degenerate;
  size_t gate_count;
  size_t depth;
  size_t qubits;
} se_pass_info;

/* One vertical pass; out receives the signed edge image. */
SEQEDGE_API se_status se_edge_detect_pass(const se_image* img, size_t cutoff, se_mode mode, se_image** out,
                                          se_pass_info* info);

/* Both passes combined and clipped to [0, 255]. Either info pointer may be NULL. */
SEQEDGE_API se_status se_edge_detect(const se_image* img, size_t cutoff, double v_scale, double h_scale,
                                     se_mode mode, se_image** out, se_pass_info* vertical,
                                     se_pass_info* horizontal);

SEQEDGE_API se_status se_qhed_pass(const se_image* img, se_image** out, se_pass_info* info);
SEQEDGE_API se_status se_qhed_detect(const se_image* img, double v_scale, double h_scale, se_image** out,
                                     se_pass_info* vertical, se_pass_info* horizontal);

/* Cyclic up-shift out[i] = in[(i+1) mod len]. */
SEQEDGE_API se_status se_amplitude_permutation(const double* in, double* out, size_t len);

typedef struct se_pipeline_resources {
  unsigned data_qubits;
  size_t cutoff;
  size_t wht_depth;
  size_t wht_gates;
  size_t filter_gates;
  size_t filter_max_controls;
  size_t inverse_depth;
  size_t inverse_gates;
  size_t total_gates;
  size_t total_depth;
} se_pipeline_resources;

SEQEDGE_API se_status se_pipeline_resources_for(unsigned data_qubits, size_t cutoff, se_pipeline_resources* out);

typedef struct se_compare_result {
  double ssim_proposed;
  double ssim_qhed;
  se_pass_info proposed_vertical;
  se_pass_info proposed_horizontal;
  se_pass_info qhed_vertical;
  se_pass_info qhed_horizontal;
  se_pipeline_resources resources;
  int has_crosscheck;
  double crosscheck_max_abs; /* circuit vs oracle, images <= 64x64 */
} se_compare_result;

/* proposed_out / qhed_out receive the combined edge maps (may be NULL). */
SEQEDGE_API se_status se_compare(const se_image* img, size_t cutoff, double v_scale, double h_scale,
                                 se_mode mode, se_ssim_window window, se_compare_result* result,
                                 se_image** proposed_out, se_image** qhed_out);

/* ---- metrics ----------------------------------------------------------- */

SEQEDGE_API se_status se_ssim(const se_image* a, const se_image* b, se_ssim_window window, double* out);
SEQEDGE_API se_status se_l2_error(const se_image* a, const se_image* b, double* out);
SEQEDGE_API se_status se_max_abs_error(const se_image* a, const se_image* b, double* out);

/* ---- circuits ---------------------------------------------------------- */

SEQEDGE_API se_status se_circuit_sequency_wht(unsigned n, se_circuit** out);
SEQEDGE_API se_status se_circuit_inverse_sequency_wht(unsigned n, se_circuit** out);
SEQEDGE_API se_status se_circuit_highpass(unsigned n, uint64_t cutoff, se_circuit** out);
/* X on ancilla, sequency WHT, high-pass, inverse; width n+1. */
SEQEDGE_API se_status se_circuit_edge(unsigned n, uint64_t cutoff, se_circuit** out);
SEQEDGE_API se_status se_circuit_from_qasm(const char* text, se_circuit** out);
SEQEDGE_API unsigned se_circuit_width(const se_circuit* c);
SEQEDGE_API size_t se_circuit_gate_count(const se_circuit* c);
SEQEDGE_API size_t se_circuit_depth(const se_circuit* c);
/* Runs the circuit on a state of length 2^width (in place, unit norm). */
SEQEDGE_API se_status se_circuit_run(const se_circuit* c, double* amplitudes, size_t len);
/* Caller releases *out with se_string_free. */
SEQEDGE_API se_status se_circuit_to_qasm(const se_circuit* c, char** out);
SEQEDGE_API void se_circuit_free(se_circuit* c);

SEQEDGE_API void se_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SEQEDGE_SEQEDGE_H */
