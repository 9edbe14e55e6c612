// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/encoding.hpp"
#include "core/imaging.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"
#include "core/qsim.hpp"
#include "core/wht.hpp"
#include "oracles.hpp"

using namespace seqedge;
using pipeline::Mode;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. circuit unitary vs the printed 8x8 matrices
Outcome golden_matrices() {
  Outcome o;
  const auto t0 = Clock::now();
  const DenseMatrix hs = qsim::unitary_of(qsim::build_sequency_wht_circuit(3));
  const double e_seq = oracle::max_abs_diff(hs, oracle::from_signs(oracle::kSequencySigns8));
  qsim::Circuit layer(3);
  for (unsigned q = 0; q < 3; ++q) layer.add(qsim::Gate::h(q));
  const double e_nat = oracle::max_abs_diff(qsim::unitary_of(layer), oracle::from_signs(oracle::kNaturalSigns8));
  const double dt = seconds_since(t0);
  o.require(e_seq < 1e-12, "H^S_8 mismatch " + fmt("%.3g", e_seq));
  o.require(e_nat < 1e-12, "H_8 mismatch " + fmt("%.3g", e_nat));
  o.require(dt < 1.0, "runtime " + fmt("%.3f s", dt));
  if (o.pass) o.detail = "max err " + fmt("%.2g", std::max(e_seq, e_nat)) + ", " + fmt("%.3f s", dt);
  return o;
}

// 2. circuit mode == oracle mode on random images
Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  int runs = 0;
  for (auto [r, c] : {std::pair{8, 8}, std::pair{16, 8}, std::pair{32, 32}})
    for (std::size_t div : {4, 2})
      for (int i = 0; i < 50; ++i) {
        const Image img = oracle::random_image(r, c, rng);
        const pipeline::CutoffSpec cut{img.size() / div};
        const auto a = pipeline::edge_detect_pass(img, cut, Mode::Circuit);
        const auto b = pipeline::edge_detect_pass(img, cut, Mode::Oracle);
        worst = std::max(worst, metrics::max_abs_error(a.edge_image, b.edge_image));
        ++runs;
      }
  const double dt = seconds_since(t0);
  o.require(worst < 1e-10, "max diff " + fmt("%.3g", worst));
  o.require(dt < 30.0, "runtime " + fmt("%.2f s", dt));
  if (o.pass) o.detail = std::to_string(runs) + " passes, max diff " + fmt("%.2g", worst) + ", " + fmt("%.2f s", dt);
  return o;
}

// 3. gray_index bijection and U_z basis mapping
Outcome permutation_law() {
  Outcome o;
  const auto t0 = Clock::now();
  for (unsigned n = 1; n <= 8 && o.pass; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<bool> seen(dim, false);
    for (std::uint64_t m = 0; m < dim; ++m) {
      const std::uint64_t g = wht::gray_index(m, n);
      o.require(g < dim && !seen[g], "gray_index not a bijection at n=" + std::to_string(n));
      if (g < dim) seen[g] = true;
      o.require(wht::inverse_gray_index(g, n) == m, "inverse_gray_index mismatch at n=" + std::to_string(n));
    }
    const qsim::Circuit uz = qsim::build_sequency_permutation_circuit(n);
    for (std::uint64_t m = 0; m < dim; ++m) {
      const qsim::StateVector out = qsim::run(uz, qsim::StateVector::basis(n, m));
      const std::uint64_t g = wht::gray_index(m, n);
      o.require(std::abs(out.amplitudes()[g] - 1.0) < 1e-15,
                "U_z maps |" + std::to_string(m) + "> wrongly at n=" + std::to_string(n));
    }
  }
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, "runtime " + fmt("%.2f s", dt));
  if (o.pass) o.detail = "n=1..8 exhaustive, " + fmt("%.3f s", dt);
  return o;
}

// 4. inverse after forward is the identity
Outcome round_trip() {
  Outcome o;
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (std::size_t n = 2; n <= 4096; n *= 2)
    for (int t = 0; t < 5; ++t) {
      const auto v = oracle::random_unit_vector(n, rng);
      worst = std::max(worst, oracle::max_abs_diff(wht::inverse_sequency_wht(wht::sequency_wht(v)), v));
    }
  o.require(worst < 1e-12, "max err " + fmt("%.3g", worst));
  if (o.pass) o.detail = "N=2..4096, max err " + fmt("%.2g", worst);
  return o;
}

// 5. depth n, 2n-1 gates; pipeline within 4n + popcount(c)
Outcome depth_and_gates() {
  Outcome o;
  for (unsigned n = 2; n <= 12; ++n) {
    const qsim::Circuit c = qsim::build_sequency_wht_circuit(n);
    const std::size_t d = qsim::circuit_depth(c), g = qsim::gate_count(c);
    o.require(d == n, "depth " + std::to_string(d) + " at n=" + std::to_string(n));
    o.require(g == 2 * n - 1, "gates " + std::to_string(g) + " at n=" + std::to_string(n));
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::size_t> cuts;
    if (n <= 8)
      for (std::size_t k = 1; k < dim; ++k) cuts.push_back(k);
    else
      cuts = {1, dim / 4, dim / 2, dim - 1, dim / 2 + dim / 4 + 3};
    for (std::size_t k : cuts) {
      const std::size_t total = qsim::gate_count(qsim::build_edge_circuit(n, k));
      o.require(total <= 4 * n + static_cast<std::size_t>(std::popcount(k)),
                "pipeline gates " + std::to_string(total) + " at n=" + std::to_string(n) + " c=" + std::to_string(k));
    }
  }
  if (o.pass) o.detail = "n=2..12";
  return o;
}

// 6. filter circuit flips the ancilla exactly below the cutoff
Outcome filter_algebra() {
  Outcome o;
  for (unsigned n = 1; n <= 6; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t c = 1; c < dim; ++c) {
      const qsim::Circuit hp = qsim::build_highpass_circuit(n, c);
      o.require(qsim::gate_count(hp) == static_cast<std::size_t>(std::popcount(c)),
                "gate count at n=" + std::to_string(n) + " c=" + std::to_string(c));
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t k = 0; k < dim; ++k) {
          const std::size_t in = k + a * dim;
          const std::size_t want = k + ((a ^ (k < c ? 1 : 0)) * dim);
          const qsim::StateVector out = qsim::run(hp, qsim::StateVector::basis(n + 1, in));
          o.require(std::abs(out.amplitudes()[want] - 1.0) < 1e-15,
                    "basis |" + std::to_string(in) + "> at n=" + std::to_string(n) + " c=" + std::to_string(c));
        }
    }
  }
  if (o.pass) o.detail = "n=1..6, all cutoffs, both ancilla values";
  return o;
}

// 7. QHED vs dense D and Hadamard; cyclic differences
Outcome qhed_property() {
  Outcome o;
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (auto [r, c] : {std::pair{2, 2}, std::pair{4, 4}, std::pair{8, 4}, std::pair{16, 16}})
    for (int t = 0; t < 10; ++t) {
      const Image img = oracle::random_image(r, c, rng);
      const encoding::QpieState enc = encoding::qpie_encode(img);
      const std::size_t n = enc.amplitudes.size();
      std::vector<double> dup(2 * n);
      for (std::size_t i = 0; i < n; ++i) dup[2 * i] = dup[2 * i + 1] = enc.amplitudes[i] / std::sqrt(2.0);
      const auto dense = (oracle::hadamard_on_lsb(2 * n) * oracle::qhed_permutation_matrix(2 * n)).apply(dup);

      const auto got = encoding::flatten_column_major(pipeline::qhed_pass(img).edge_image);
      const auto flat = encoding::flatten_column_major(img);
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(got[i] - dense[2 * i + 1] * enc.norm_factor));
        worst = std::max(worst, std::abs(got[i] - (flat[i] - flat[(i + 1) % n]) / 2.0));
      }
    }
  o.require(worst < 1e-10, "max diff " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max diff " + fmt("%.2g", worst);
  return o;
}

// 8. constant -> zero + degenerate; step -> energy at the transition
Outcome trivial_images() {
  Outcome o;
  for (Mode mode : {Mode::Oracle, Mode::Circuit}) {
    const auto e = pipeline::edge_detect(Image(8, 8, 128.0), {32}, 3.0, 2.0, mode);
    o.require(e.vertical.degenerate && e.horizontal.degenerate, "constant image not flagged");
    o.require(e.edges == Image(8, 8, 0.0), "constant image edge map not zero");
  }
  imaging::GeneratorSpec spec;
  spec.kind = imaging::GeneratorKind::Step;
  spec.rows = spec.cols = 8;
  spec.step_column = 3;
  const Image step = imaging::generate(spec);
  double fraction = 0.0;
  for (Mode mode : {Mode::Oracle, Mode::Circuit}) {
    const auto e = pipeline::edge_detect(step, {32}, 1.0, 1.0, mode);
    double near = 0.0, total = 0.0;
    for (std::size_t x = 0; x < 8; ++x)
      for (std::size_t y = 0; y < 8; ++y) {
        const double v = e.vertical.edge_image.at(x, y), h = e.horizontal.edge_image.at(x, y);
        const double en = v * v + h * h;
        total += en;
        if (y == 2 || y == 3) near += en;
      }
    o.require(total > 0.0, "step image produced no edges");
    fraction = total > 0.0 ? near / total : 0.0;
    o.require(fraction > 0.99, "energy at transition " + fmt("%.3f", fraction));
  }
  if (o.pass) o.detail = "step energy in columns 2-3: " + fmt("%.6f", fraction);
  return o;
}

// 9. SSIM sanity and the comparison protocol
Outcome ssim_sanity() {
  Outcome o;
  std::mt19937_64 rng(5);
  const Image a = oracle::random_image(64, 64, rng);
  const Image b = oracle::random_image(64, 64, rng);
  for (const auto& p : {metrics::SsimParams::gaussian(), metrics::SsimParams::uniform()}) {
    const double self = metrics::ssim(a, a, p);
    o.require(std::abs(self - 1.0) <= 1e-9, "self SSIM " + fmt("%.12f", self));
    const double ab = metrics::ssim(a, b, p), ba = metrics::ssim(b, a, p);
    o.require(std::abs(ab - ba) <= 1e-12, "asymmetry " + fmt("%.3g", std::abs(ab - ba)));
  }

  std::string table;
  for (auto kind : {imaging::GeneratorKind::Polygon, imaging::GeneratorKind::Blobs,
                    imaging::GeneratorKind::Checkerboard}) {
    imaging::GeneratorSpec spec;
    spec.kind = kind;
    spec.rows = spec.cols = 64;
    spec.seed = 1;
    spec.offset = 1;
    const Image img = imaging::generate(spec);
    const auto rep = pipeline::compare_methods(img, {img.size() / 2});
    o.require(std::isfinite(rep.ssim_proposed) && std::isfinite(rep.ssim_qhed), "non-finite SSIM");
    o.require(rep.mode_crosscheck.has_value(), "missing crosscheck");
    table += std::string(table.empty() ? "" : "; ") + std::string(imaging::generator_kind_name(kind)) + " " +
             fmt("%.4f", rep.ssim_proposed) + "/" + fmt("%.4f", rep.ssim_qhed);
  }
  if (o.pass) o.detail = "proposed/QHED SSIM: " + table;
  return o;
}

struct Localization {
  std::size_t nonzero = 0;
  std::size_t misplaced = 0;
};

// Distance from pixel centre to the nearest tile boundary of an offset grid,
// along rows and columns; a pixel is well placed if either is within reach.
Localization localize(const Image& edges, std::size_t tile, std::size_t offset, double reach) {
  auto dist = [&](std::size_t i) {
    const double centre = static_cast<double>(i) + 0.5 + static_cast<double>(offset);
    const double r = std::fmod(centre, static_cast<double>(tile));
    return std::min(r, static_cast<double>(tile) - r);
  };
  Localization l;
  for (std::size_t x = 0; x < edges.rows(); ++x)
    for (std::size_t y = 0; y < edges.cols(); ++y) {
      if (std::abs(edges.at(x, y)) <= 1e-6) continue;
      ++l.nonzero;
      if (dist(x) > reach && dist(y) > reach) ++l.misplaced;
    }
  return l;
}

// 10. 512x512 checkerboard in both modes
Outcome scale_test() {
  Outcome o;
  imaging::GeneratorSpec spec;
  spec.kind = imaging::GeneratorKind::Checkerboard;
  spec.rows = spec.cols = 512;
  spec.tile = 64;
  spec.offset = 1;
  const Image img = imaging::generate(spec);
  const std::size_t n_total = img.size();

  auto t0 = Clock::now();
  const auto half = pipeline::edge_detect(img, {n_total / 2}, 3.0, 2.0, Mode::Oracle);
  const double t_oracle = seconds_since(t0);
  const auto quarter = pipeline::edge_detect(img, {n_total / 4}, 3.0, 2.0, Mode::Oracle);

  t0 = Clock::now();
  const auto half_circuit = pipeline::edge_detect(img, {n_total / 2}, 3.0, 2.0, Mode::Circuit);
  const double t_circuit = seconds_since(t0);

  o.require(t_oracle < 2.0, "oracle runtime " + fmt("%.2f s", t_oracle));
  o.require(t_circuit < 60.0, "circuit runtime " + fmt("%.2f s", t_circuit));
  o.require(half_circuit.vertical.qubits == 19, "expected 19 qubits");
  const double diff = metrics::max_abs_error(half.edges, half_circuit.edges);
  o.require(diff < 1e-8, "circuit vs oracle " + fmt("%.3g", diff));

  const Localization lh = localize(half.edges, 64, 1, 1.0);
  const Localization lq = localize(quarter.edges, 64, 1, 3.0);
  o.require(lh.nonzero > 0, "no edges at N/2");
  o.require(lh.misplaced == 0, std::to_string(lh.misplaced) + " N/2 pixels away from tile boundaries");
  o.require(lq.misplaced == 0, std::to_string(lq.misplaced) + " N/4 pixels away from tile boundaries");
  o.require(lq.nonzero > lh.nonzero, "N/4 not finer than N/2");
  if (o.pass)
    o.detail = "oracle " + fmt("%.2f s", t_oracle) + ", circuit " + fmt("%.2f s", t_circuit) + ", nonzero " +
               std::to_string(lh.nonzero) + " (N/2) / " + std::to_string(lq.nonzero) + " (N/4)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 golden matrices", golden_matrices},     {"AC2 oracle equivalence", oracle_equivalence},
      {"AC3 permutation law", permutation_law},     {"AC4 round-trip unitarity", round_trip},
      {"AC5 depth and gate count", depth_and_gates}, {"AC6 filter algebra", filter_algebra},
      {"AC7 QHED baseline", qhed_property},         {"AC8 trivial images", trivial_images},
      {"AC9 SSIM sanity", ssim_sanity},             {"AC10 512x512 scale test", scale_test},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
