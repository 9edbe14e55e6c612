// seqedge command-line front end. Talks to the library only through the C API.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqedge/seqedge.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kReportSchemaVersion = 1;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(se_status status, const std::string& context) {
  if (status != SE_OK)
    throw CliError(context + ": " + se_status_name(status) + ": " + se_last_error());
}

struct ImageDeleter {
  void operator()(se_image* img) const { se_image_free(img); }
};
using ImagePtr = std::unique_ptr<se_image, ImageDeleter>;

struct CircuitDeleter {
  void operator()(se_circuit* c) const { se_circuit_free(c); }
};
using CircuitPtr = std::unique_ptr<se_circuit, CircuitDeleter>;

ImagePtr load(const std::string& path, bool pad) {
  se_image* img = nullptr;
  check(se_image_load(path.c_str(), pad ? 1 : 0, &img), "loading " + path);
  return ImagePtr(img);
}

void save(const se_image* img, const std::string& path) { check(se_image_save(img, path.c_str()), "writing " + path); }

se_mode parse_mode(const std::string& name) {
  if (name == "oracle") return SE_MODE_ORACLE;
  if (name == "circuit") return SE_MODE_CIRCUIT;
  throw CliError("unknown mode '" + name + "'");
}

std::size_t resolve_cutoff(const std::string& text, std::size_t flattened) {
  std::size_t c = 0;
  check(se_resolve_cutoff(text.c_str(), flattened, &c), "cutoff");
  return c;
}

json pass_json(const char* name, const se_pass_info& p) {
  return json{{"pass", name},
              {"scale", p.scale},
              {"postselect_probability", p.postselect_probability},
              {"degenerate_postselection", p.degenerate != 0},
              {"gate_count", p.gate_count},
              {"depth", p.depth},
              {"qubits", p.qubits}};
}

json resources_json(const se_pipeline_resources& r) {
  return json{{"data_qubits", r.data_qubits},
              {"total_qubits", r.data_qubits + 1},
              {"cutoff", r.cutoff},
              {"sequency_wht", {{"depth", r.wht_depth}, {"gates", r.wht_gates}}},
              {"highpass_filter", {{"gates", r.filter_gates}, {"max_controls", r.filter_max_controls}}},
              {"inverse_sequency_wht", {{"depth", r.inverse_depth}, {"gates", r.inverse_gates}}},
              {"total", {{"depth", r.total_depth}, {"gates", r.total_gates}}}};
}

void emit_report(const json& report, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliError("cannot write report " + path);
  out << report.dump(2) << "\n";
}

json base_report(const std::string& command) {
  return json{{"schema_version", kReportSchemaVersion}, {"command", command}};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---- commands

struct EdgesOptions {
  std::string input, output, report, cutoff = "N/2", mode = "oracle";
  double v_scale = 3.0, h_scale = 2.0;
  bool pad = false;
};

void cmd_edges(const EdgesOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ImagePtr img = load(o.input, o.pad);
  const std::size_t n_total = se_image_rows(img.get()) * se_image_cols(img.get());
  const std::size_t cutoff = resolve_cutoff(o.cutoff, n_total);

  se_image* raw = nullptr;
  se_pass_info v{}, h{};
  check(se_edge_detect(img.get(), cutoff, o.v_scale, o.h_scale, parse_mode(o.mode), &raw, &v, &h), "edge detection");
  ImagePtr edges(raw);
  save(edges.get(), o.output);

  json report = base_report("edges");
  report["input"] = o.input;
  report["output"] = o.output;
  report["image"] = {{"rows", se_image_rows(img.get())}, {"cols", se_image_cols(img.get())}};
  report["cutoff"] = {{"requested", o.cutoff}, {"resolved", cutoff}, {"flattened_length", n_total}};
  report["mode"] = o.mode;
  report["v_scale"] = o.v_scale;
  report["h_scale"] = o.h_scale;
  report["passes"] = json::array({pass_json("vertical", v), pass_json("horizontal", h)});
  report["degenerate_postselection"] = v.degenerate != 0 || h.degenerate != 0;
  report["wall_time_ms"] = elapsed_ms(start);
  emit_report(report, o.report);
}

void cmd_qhed(const EdgesOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  ImagePtr img = load(o.input, o.pad);
  se_image* raw = nullptr;
  se_pass_info v{}, h{};
  check(se_qhed_detect(img.get(), o.v_scale, o.h_scale, &raw, &v, &h), "QHED");
  ImagePtr edges(raw);
  save(edges.get(), o.output);

  json report = base_report("qhed");
  report["input"] = o.input;
  report["output"] = o.output;
  report["image"] = {{"rows", se_image_rows(img.get())}, {"cols", se_image_cols(img.get())}};
  report["v_scale"] = o.v_scale;
  report["h_scale"] = o.h_scale;
  report["amplitude_permutation"] = "applied directly as a basis permutation";
  report["passes"] = json::array({pass_json("vertical", v), pass_json("horizontal", h)});
  report["degenerate_postselection"] = v.degenerate != 0 || h.degenerate != 0;
  report["wall_time_ms"] = elapsed_ms(start);
  emit_report(report, o.report);
}

struct CompareOptions {
  EdgesOptions edges;
  std::string proposed_output, qhed_output, window = "gaussian";
};

void cmd_compare(const CompareOptions& c) {
  const EdgesOptions& o = c.edges;
  const auto start = std::chrono::steady_clock::now();
  ImagePtr img = load(o.input, o.pad);
  const std::size_t n_total = se_image_rows(img.get()) * se_image_cols(img.get());
  const std::size_t cutoff = resolve_cutoff(o.cutoff, n_total);
  se_ssim_window window;
  if (c.window == "gaussian") window = SE_SSIM_GAUSSIAN;
  else if (c.window == "uniform") window = SE_SSIM_UNIFORM;
  else throw CliError("unknown SSIM window '" + c.window + "'");

  se_compare_result r{};
  se_image* proposed_raw = nullptr;
  se_image* qhed_raw = nullptr;
  check(se_compare(img.get(), cutoff, o.v_scale, o.h_scale, parse_mode(o.mode), window, &r, &proposed_raw, &qhed_raw),
        "compare");
  ImagePtr proposed(proposed_raw), qhed(qhed_raw);
  if (!c.proposed_output.empty()) save(proposed.get(), c.proposed_output);
  if (!c.qhed_output.empty()) save(qhed.get(), c.qhed_output);

  json report = base_report("compare");
  report["input"] = o.input;
  report["image"] = {{"rows", se_image_rows(img.get())}, {"cols", se_image_cols(img.get())}};
  report["cutoff"] = {{"requested", o.cutoff}, {"resolved", cutoff}, {"flattened_length", n_total}};
  report["mode"] = o.mode;
  report["v_scale"] = o.v_scale;
  report["h_scale"] = o.h_scale;
  report["ssim_reference"] = "original image";
  if (window == SE_SSIM_GAUSSIAN)
    report["ssim_params"] = {{"window", "gaussian"}, {"size", 11}, {"sigma", 1.5}, {"k1", 0.01}, {"k2", 0.03}, {"dynamic_range", 255}};
  else
    report["ssim_params"] = {{"window", "uniform"}, {"size", 7}, {"k1", 0.01}, {"k2", 0.03}, {"dynamic_range", 255}};
  report["table"] = json::array(
      {json{{"original_image", o.input}, {"detected_edges", c.proposed_output}, {"algorithm", "sequency-wht-highpass"}, {"ssim", r.ssim_proposed}},
       json{{"original_image", o.input}, {"detected_edges", c.qhed_output}, {"algorithm", "qhed"}, {"ssim", r.ssim_qhed}}});
  report["proposed_passes"] = json::array({pass_json("vertical", r.proposed_vertical), pass_json("horizontal", r.proposed_horizontal)});
  report["qhed_passes"] = json::array({pass_json("vertical", r.qhed_vertical), pass_json("horizontal", r.qhed_horizontal)});
  report["resources"] = resources_json(r.resources);
  report["mode_crosscheck_max_abs"] = r.has_crosscheck ? json(r.crosscheck_max_abs) : json(nullptr);
  report["wall_time_ms"] = elapsed_ms(start);
  emit_report(report, o.report);
}

struct GenOptions {
  std::string kind = "checkerboard", output;
  std::size_t size = 64, rows = 0, cols = 0, tile = 8, offset = 0, step_column = 0, blur_radius = 0;
  unsigned sides = 6;
  std::uint64_t seed = 0;
};

void cmd_gen(const GenOptions& o) {
  se_generator_kind kind;
  check(se_generator_kind_parse(o.kind.c_str(), &kind), "generator");
  se_generator_spec spec;
  se_generator_spec_init(&spec, kind, o.rows ? o.rows : o.size, o.cols ? o.cols : o.size);
  spec.seed = o.seed;
  spec.tile = o.tile;
  spec.offset = o.offset;
  spec.step_column = o.step_column;
  spec.blur_radius = o.blur_radius;
  spec.sides = o.sides;
  se_image* raw = nullptr;
  check(se_generate(&spec, &raw), "generate");
  ImagePtr img(raw);
  save(img.get(), o.output);
}

struct CircuitOptions {
  unsigned qubits = 12;
  std::string cutoff = "N/2", output, report, circuit = "edge";
  unsigned table_min = 2, table_max = 14;
};

void cmd_resources(const CircuitOptions& o) {
  if (o.qubits < 1 || o.qubits > 62) throw CliError("--qubits must be in [1, 62]");
  const std::size_t cutoff = resolve_cutoff(o.cutoff, std::size_t{1} << o.qubits);
  se_pipeline_resources r{};
  check(se_pipeline_resources_for(o.qubits, cutoff, &r), "resources");

  json report = base_report("resources");
  report["cutoff"] = {{"requested", o.cutoff}, {"resolved", cutoff}};
  report["pipeline"] = resources_json(r);
  json table = json::array();
  for (unsigned n = o.table_min; n <= o.table_max; ++n) {
    se_pipeline_resources row{};
    const std::size_t c = resolve_cutoff(o.cutoff, std::size_t{1} << n);
    check(se_pipeline_resources_for(n, c, &row), "resources");
    table.push_back(resources_json(row));
  }
  report["scaling"] = table;

  if (o.report.empty()) {
    std::printf("%-4s %-8s %-10s %-10s %-10s %-12s %-12s\n", "n", "cutoff", "wht_depth", "wht_gates", "filter",
                "total_gates", "total_depth");
    for (const auto& row : table)
      std::printf("%-4u %-8zu %-10zu %-10zu %-10zu %-12zu %-12zu\n", row["data_qubits"].get<unsigned>(),
                  row["cutoff"].get<std::size_t>(), row["sequency_wht"]["depth"].get<std::size_t>(),
                  row["sequency_wht"]["gates"].get<std::size_t>(), row["highpass_filter"]["gates"].get<std::size_t>(),
                  row["total"]["gates"].get<std::size_t>(), row["total"]["depth"].get<std::size_t>());
    std::printf("\nselected n=%u cutoff=%zu: sequency WHT depth %zu, filter gates %zu, total gates %zu\n", o.qubits,
                cutoff, r.wht_depth, r.filter_gates, r.total_gates);
  } else {
    emit_report(report, o.report);
  }
}

void cmd_qasm(const CircuitOptions& o) {
  if (o.qubits < 1 || o.qubits > 62) throw CliError("--qubits must be in [1, 62]");
  se_circuit* raw = nullptr;
  if (o.circuit == "edge" || o.circuit == "highpass") {
    const std::size_t cutoff = resolve_cutoff(o.cutoff, std::size_t{1} << o.qubits);
    check(o.circuit == "edge" ? se_circuit_edge(o.qubits, cutoff, &raw) : se_circuit_highpass(o.qubits, cutoff, &raw),
          "circuit");
  } else if (o.circuit == "wht") {
    check(se_circuit_sequency_wht(o.qubits, &raw), "circuit");
  } else if (o.circuit == "inverse") {
    check(se_circuit_inverse_sequency_wht(o.qubits, &raw), "circuit");
  } else {
    throw CliError("unknown circuit '" + o.circuit + "' (edge, wht, inverse, highpass)");
  }
  CircuitPtr circuit(raw);
  char* text = nullptr;
  check(se_circuit_to_qasm(circuit.get(), &text), "qasm export");
  std::unique_ptr<char, void (*)(char*)> owned(text, se_string_free);
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw CliError("cannot write " + o.output);
  out << text;
}

void add_edge_flags(CLI::App* sub, EdgesOptions& o, bool with_cutoff) {
  sub->add_option("--input,-i", o.input, "Input image (.pgm, .ppm, .png)")->required();
  sub->add_option("--v-scale", o.v_scale, "Vertical pass intensity scale")->capture_default_str();
  sub->add_option("--h-scale", o.h_scale, "Horizontal pass intensity scale")->capture_default_str();
  sub->add_option("--report", o.report, "JSON report path ('-' for stdout)");
  sub->add_flag("--pad", o.pad, "Zero-pad non-power-of-two inputs");
  if (with_cutoff) {
    sub->add_option("--cutoff,-c", o.cutoff, "Sequency cutoff: integer, N/2 or N/4")->capture_default_str();
    sub->add_option("--mode", o.mode, "oracle or circuit")
        ->check(CLI::IsMember({"oracle", "circuit"}))
        ->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequency-ordered Walsh-Hadamard edge detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(se_version()));

  EdgesOptions edges;
  auto* edges_cmd = app.add_subcommand("edges", "Detect edges (vertical + horizontal passes)");
  add_edge_flags(edges_cmd, edges, true);
  edges_cmd->add_option("--output,-o", edges.output, "Edge image output (.pgm or .png)")->required();

  EdgesOptions qhed;
  auto* qhed_cmd = app.add_subcommand("qhed", "QHED baseline edge map");
  add_edge_flags(qhed_cmd, qhed, false);
  qhed_cmd->add_option("--output,-o", qhed.output, "Edge image output (.pgm or .png)")->required();

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "SSIM comparison of both methods against the original");
  add_edge_flags(compare_cmd, compare.edges, true);
  compare_cmd->add_option("--proposed-output", compare.proposed_output, "Write the proposed edge map here");
  compare_cmd->add_option("--qhed-output", compare.qhed_output, "Write the QHED edge map here");
  compare_cmd->add_option("--window", compare.window, "SSIM window: gaussian (11, 1.5) or uniform (7)")
      ->check(CLI::IsMember({"gaussian", "uniform"}))
      ->capture_default_str();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic test image");
  gen_cmd->add_option("--kind,-k", gen.kind, "checkerboard, blobs, polygon, step, constant")->capture_default_str();
  gen_cmd->add_option("--size", gen.size, "Square size (power of two)")->capture_default_str();
  gen_cmd->add_option("--rows", gen.rows, "Height, overrides --size");
  gen_cmd->add_option("--cols", gen.cols, "Width, overrides --size");
  gen_cmd->add_option("--tile", gen.tile, "Checkerboard tile size")->capture_default_str();
  gen_cmd->add_option("--offset", gen.offset, "Checkerboard grid shift in pixels")->capture_default_str();
  gen_cmd->add_option("--step-column", gen.step_column, "First foreground column of a step image");
  gen_cmd->add_option("--blur-radius", gen.blur_radius, "Blob box-blur radius (0 = automatic)");
  gen_cmd->add_option("--sides", gen.sides, "Random polygon corner count")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--output,-o", gen.output, "Output image (.pgm or .png)")->required();

  CircuitOptions res;
  auto* res_cmd = app.add_subcommand("resources", "Gate count and depth of the edge-detection circuit");
  res_cmd->add_option("--qubits,-n", res.qubits, "Data qubits n = log2(N1 N2)")->capture_default_str();
  res_cmd->add_option("--cutoff,-c", res.cutoff, "Sequency cutoff: integer, N/2 or N/4")->capture_default_str();
  res_cmd->add_option("--table-max", res.table_max, "Largest n in the scaling table")->capture_default_str();
  res_cmd->add_option("--report", res.report, "JSON report path ('-' for stdout); default prints a table");

  CircuitOptions qasm;
  auto* qasm_cmd = app.add_subcommand("qasm", "Export a circuit as OpenQASM 2.0");
  qasm_cmd->add_option("--qubits,-n", qasm.qubits, "Data qubits")->capture_default_str();
  qasm_cmd->add_option("--cutoff,-c", qasm.cutoff, "Sequency cutoff: integer, N/2 or N/4")->capture_default_str();
  qasm_cmd->add_option("--circuit", qasm.circuit, "edge, wht, inverse or highpass")->capture_default_str();
  qasm_cmd->add_option("--output,-o", qasm.output, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*edges_cmd) cmd_edges(edges);
    else if (*qhed_cmd) cmd_qhed(qhed);
    else if (*compare_cmd) cmd_compare(compare);
    else if (*gen_cmd) cmd_gen(gen);
    else if (*res_cmd) cmd_resources(res);
    else if (*qasm_cmd) cmd_qasm(qasm);
  } catch (const std::exception& e) {
    std::cerr << "seqedge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
