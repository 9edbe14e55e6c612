#include "qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "error.hpp"

namespace seqedge::qsim {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string qubit_str(unsigned q) { return std::to_string(q); }

// Physical-index kernels. `target` etc. are bit positions in the amplitude
// index, already mapped through any relabeling.

void kernel_h(std::span<double> amps, unsigned target) {
  const std::size_t stride = std::size_t{1} << target;
  const std::size_t n = amps.size();
  for (std::size_t block = 0; block < n; block += 2 * stride) {
    double* lo = amps.data() + block;
    double* hi = lo + stride;
    for (std::size_t j = 0; j < stride; ++j) {
      const double a = lo[j];
      const double b = hi[j];
      lo[j] = (a + b) * kInvSqrt2;
      hi[j] = (a - b) * kInvSqrt2;
    }
  }
}

// X on `target` for every basis index whose bits under `mask` equal `value`.
void kernel_controlled_x(std::span<double> amps, unsigned target, std::uint64_t mask,
                         std::uint64_t value) {
  const std::size_t stride = std::size_t{1} << target;
  const std::size_t n = amps.size();
  for (std::size_t block = 0; block < n; block += 2 * stride) {
    for (std::size_t j = 0; j < stride; ++j) {
      const std::size_t i = block + j;
      if ((i & mask) == value) std::swap(amps[i], amps[i + stride]);
    }
  }
}

// Physically permutes amplitudes so that bit qubits[i] of the new index
// holds bit qubits[k-1-i] of the old index.
void kernel_reverse(std::span<double> amps, const std::vector<unsigned>& qubits) {
  const std::size_t k = qubits.size();
  std::uint64_t mask = 0;
  for (unsigned q : qubits) mask |= std::uint64_t{1} << q;
  std::vector<double> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::uint64_t j = i & ~mask;
    for (std::size_t r = 0; r < k; ++r)
      if ((i >> qubits[k - 1 - r]) & 1U) j |= std::uint64_t{1} << qubits[r];
    out[j] = amps[i];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

void apply_physical(std::span<double> amps, const Gate& gate,
                    const std::vector<unsigned>& layout) {
  switch (gate.kind()) {
    case GateKind::H:
      kernel_h(amps, layout[gate.target()]);
      return;
    case GateKind::X:
      kernel_controlled_x(amps, layout[gate.target()], 0, 0);
      return;
    case GateKind::CNOT:
    case GateKind::MCX: {
      std::uint64_t mask = 0;
      std::uint64_t value = 0;
      for (const Control& c : gate.controls()) {
        const std::uint64_t bit = std::uint64_t{1} << layout[c.qubit];
        mask |= bit;
        if (c.polarity) value |= bit;
      }
      kernel_controlled_x(amps, layout[gate.target()], mask, value);
      return;
    }
    case GateKind::Reverse: {
      std::vector<unsigned> physical;
      physical.reserve(gate.reversed().size());
      for (unsigned q : gate.reversed()) physical.push_back(layout[q]);
      kernel_reverse(amps, physical);
      return;
    }
  }
}

std::vector<unsigned> identity_layout(unsigned width) {
  std::vector<unsigned> layout(width);
  std::iota(layout.begin(), layout.end(), 0U);
  return layout;
}

void relabel(std::vector<unsigned>& layout, const std::vector<unsigned>& reversed) {
  const std::size_t k = reversed.size();
  std::vector<unsigned> old = layout;
  for (std::size_t i = 0; i < k; ++i) layout[reversed[i]] = old[reversed[k - 1 - i]];
}

void check_fits(const Gate& gate, unsigned width) {
  if (gate.max_qubit() >= width)
    throw_invalid("gate touches qubit " + qubit_str(gate.max_qubit()) + " but width is " +
                  qubit_str(width));
}

}  // namespace

// ---------------------------------------------------------------------------
// Gate

Gate Gate::h(unsigned target) {
  Gate g;
  g.kind_ = GateKind::H;
  g.target_ = target;
  return g;
}

Gate Gate::x(unsigned target) {
  Gate g;
  g.kind_ = GateKind::X;
  g.target_ = target;
  return g;
}

Gate Gate::cnot(unsigned control, unsigned target) {
  Gate g;
  g.kind_ = GateKind::CNOT;
  g.target_ = target;
  g.controls_ = {Control{control, true}};
  g.validate();
  return g;
}

Gate Gate::mcx(std::vector<Control> controls, unsigned target) {
  Gate g;
  g.kind_ = GateKind::MCX;
  g.target_ = target;
  g.controls_ = std::move(controls);
  g.validate();
  return g;
}

Gate Gate::reverse(std::vector<unsigned> qubits) {
  Gate g;
  g.kind_ = GateKind::Reverse;
  g.reversed_ = std::move(qubits);
  g.validate();
  return g;
}

void Gate::validate() const {
  if (kind_ == GateKind::MCX && controls_.empty()) throw_invalid("MCX needs at least one control");
  if (kind_ == GateKind::Reverse && reversed_.size() < 2)
    throw_invalid("reversal marker needs at least two qubits");
  std::vector<unsigned> qs = qubits();
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end())
    throw_invalid("gate qubits must be distinct");
}

std::vector<unsigned> Gate::qubits() const {
  if (kind_ == GateKind::Reverse) return reversed_;
  std::vector<unsigned> qs;
  qs.reserve(controls_.size() + 1);
  for (const Control& c : controls_) qs.push_back(c.qubit);
  qs.push_back(target_);
  return qs;
}

unsigned Gate::max_qubit() const {
  const auto qs = qubits();
  return *std::max_element(qs.begin(), qs.end());
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(unsigned width) : width_(width) {
  if (width == 0) throw_invalid("circuit width must be >= 1");
  if (width > 63) throw_invalid("circuit width must be <= 63");
}

Circuit& Circuit::add(Gate gate) {
  check_fits(gate, width_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.width_ > width_)
    throw_invalid("cannot append a " + qubit_str(other.width_) + "-qubit circuit to a " +
                  qubit_str(width_) + "-qubit circuit");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(unsigned width) : width_(width) {
  if (width == 0 || width > kMaxStateWidth)
    throw_invalid("state width must be in [1, " + qubit_str(kMaxStateWidth) + "]");
  amps_.assign(std::size_t{1} << width, 0.0);
  amps_[0] = 1.0;
}

StateVector::StateVector(unsigned width, std::vector<double> amps)
    : width_(width), amps_(std::move(amps)) {}

StateVector StateVector::basis(unsigned width, std::uint64_t index) {
  StateVector s(width);
  if (index >= s.size()) throw_invalid("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<double> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || (n & (n - 1)) != 0) throw_invalid("amplitude count must be a power of two >= 2");
  const unsigned width = static_cast<unsigned>(std::countr_zero(n));
  if (width > kMaxStateWidth) throw Error(ErrorCode::Resource, "state too large");
  StateVector s(width, std::move(amplitudes));
  for (double a : s.amps_)
    if (!std::isfinite(a)) throw_invalid("amplitudes must be finite");
  if (std::abs(s.norm() - 1.0) > 1e-9) throw_invalid("amplitudes must have unit norm");
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (double a : amps_) acc += a * a;
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// Simulation

void apply_gate_inplace(StateVector& state, const Gate& gate) {
  check_fits(gate, state.width());
  apply_physical(state.amplitudes(), gate, identity_layout(state.width()));
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  apply_gate_inplace(state, gate);
  return state;
}

void run_inplace(const Circuit& circuit, StateVector& state) {
  if (circuit.width() != state.width())
    throw_invalid("circuit width " + qubit_str(circuit.width()) + " does not match state width " +
                  qubit_str(state.width()));
  for (const Gate& gate : circuit.gates()) check_fits(gate, state.width());
  const std::span<double> amps = state.amplitudes();
  std::vector<unsigned> layout = identity_layout(circuit.width());
  for (const Gate& gate : circuit.gates()) {
    if (gate.is_marker())
      relabel(layout, gate.reversed());
    else
      apply_physical(amps, gate, layout);
  }
  if (layout == identity_layout(circuit.width())) return;
  const std::vector<double> physical_amps(amps.begin(), amps.end());
  for (std::size_t logical = 0; logical < amps.size(); ++logical) {
    std::size_t physical = 0;
    for (unsigned q = 0; q < circuit.width(); ++q)
      if ((logical >> q) & 1U) physical |= std::size_t{1} << layout[q];
    amps[logical] = physical_amps[physical];
  }
}

StateVector run(const Circuit& circuit, StateVector state) {
  run_inplace(circuit, state);
  return state;
}

DenseMatrix unitary_of(const Circuit& circuit) {
  if (circuit.width() > kMaxUnitaryWidth)
    throw Error(ErrorCode::Resource, "unitary_of: width " + qubit_str(circuit.width()) +
                                         " exceeds " + qubit_str(kMaxUnitaryWidth));
  const std::size_t n = std::size_t{1} << circuit.width();
  DenseMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const StateVector column = run(circuit, StateVector::basis(circuit.width(), k));
    const auto amps = column.amplitudes();
    for (std::size_t r = 0; r < n; ++r) u(r, k) = amps[r];
  }
  return u;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

void require_qubits(unsigned n) {
  if (n < 1) throw_invalid("qubit count must be >= 1");
  if (n > 62) throw_invalid("qubit count must be <= 62");
}

std::vector<unsigned> all_qubits(unsigned n) { return identity_layout(n); }

}  // namespace

Circuit build_sequency_permutation_circuit(unsigned n) {
  require_qubits(n);
  Circuit c(n);
  if (n == 1) return c;
  c.add(Gate::reverse(all_qubits(n)));
  for (unsigned j = n - 1; j-- > 0;) c.add(Gate::cnot(j + 1, j));
  return c;
}

Circuit build_sequency_wht_circuit(unsigned n) {
  require_qubits(n);
  Circuit c(n);
  for (unsigned q = 0; q < n; ++q) c.add(Gate::h(q));
  c.append(build_sequency_permutation_circuit(n));
  return c;
}

Circuit build_inverse_sequency_wht_circuit(unsigned n) {
  require_qubits(n);
  Circuit c(n);
  if (n > 1) {
    for (unsigned j = 0; j + 1 < n; ++j) c.add(Gate::cnot(j + 1, j));
    c.add(Gate::reverse(all_qubits(n)));
  }
  for (unsigned q = 0; q < n; ++q) c.add(Gate::h(q));
  return c;
}

std::vector<DyadicInterval> dyadic_cover(std::uint64_t c, unsigned n) {
  require_qubits(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  if (c < 1 || c >= size)
    throw_invalid("cutoff " + std::to_string(c) + " outside [1, " + std::to_string(size - 1) + "]");
  std::vector<DyadicInterval> cover;
  for (unsigned b = n; b-- > 0;) {
    if (((c >> b) & 1U) == 0) continue;
    // High bits of c above b, followed by a 0 at position b.
    cover.push_back(DyadicInterval{(c >> b) ^ 1U, n - b});
  }
  return cover;
}

Circuit build_highpass_circuit(unsigned n, std::uint64_t c) {
  const auto cover = dyadic_cover(c, n);
  Circuit circuit(n + 1);
  for (const DyadicInterval& iv : cover) {
    std::vector<Control> controls;
    controls.reserve(iv.length);
    for (unsigned i = 0; i < iv.length; ++i) {
      // Prefix bit i (from the top) sits on data qubit n-1-i.
      const bool bit = ((iv.prefix >> (iv.length - 1 - i)) & 1U) != 0;
      controls.push_back(Control{n - 1 - i, bit});
    }
    circuit.add(Gate::mcx(std::move(controls), n));
  }
  return circuit;
}

Circuit build_edge_circuit(unsigned n, std::uint64_t c) {
  Circuit highpass = build_highpass_circuit(n, c);
  Circuit circuit(n + 1);
  circuit.add(Gate::x(n));
  circuit.append(build_sequency_wht_circuit(n));
  circuit.append(highpass);
  circuit.append(build_inverse_sequency_wht_circuit(n));
  return circuit;
}

// ---------------------------------------------------------------------------
// Post-selection and accounting

PostSelection postselect_ancilla(const StateVector& state, unsigned ancilla, bool value) {
  if (state.width() < 2) throw_invalid("post-selection needs a state of width >= 2");
  if (ancilla >= state.width()) throw_invalid("ancilla index out of range");
  const auto amps = state.amplitudes();
  const std::size_t low_mask = (std::size_t{1} << ancilla) - 1;
  PostSelection sel;
  sel.width = state.width() - 1;
  sel.amplitudes.resize(amps.size() / 2);
  double prob = 0.0;
  for (std::size_t j = 0; j < sel.amplitudes.size(); ++j) {
    const std::size_t i = (j & low_mask) | ((j & ~low_mask) << 1) |
                          (value ? std::size_t{1} << ancilla : 0);
    sel.amplitudes[j] = amps[i];
    prob += amps[i] * amps[i];
  }
  if (prob < kDegenerateProbability)
    throw Error(ErrorCode::DegeneratePostselection,
                "post-selection probability " + std::to_string(prob) + " is degenerate");
  sel.probability = prob;
  return sel;
}

std::size_t circuit_depth(const Circuit& circuit) {
  std::vector<std::size_t> level(circuit.width(), 0);
  std::vector<unsigned> layout = identity_layout(circuit.width());
  std::size_t depth = 0;
  for (const Gate& gate : circuit.gates()) {
    if (gate.is_marker()) {
      relabel(layout, gate.reversed());
      continue;
    }
    std::size_t layer = 0;
    for (unsigned q : gate.qubits()) layer = std::max(layer, level[layout[q]]);
    ++layer;
    for (unsigned q : gate.qubits()) level[layout[q]] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

std::size_t gate_count(const Circuit& circuit) {
  return static_cast<std::size_t>(std::count_if(circuit.gates().begin(), circuit.gates().end(),
                                                [](const Gate& g) { return !g.is_marker(); }));
}

GateCounts count_gates(const Circuit& circuit) {
  GateCounts counts;
  for (const Gate& g : circuit.gates()) {
    switch (g.kind()) {
      case GateKind::H: ++counts.h; break;
      case GateKind::X: ++counts.x; break;
      case GateKind::CNOT: ++counts.cnot; break;
      case GateKind::MCX:
        ++counts.mcx;
        counts.max_controls = std::max(counts.max_controls, g.controls().size());
        break;
      case GateKind::Reverse: ++counts.reversals; break;
    }
  }
  return counts;
}

}  // namespace seqedge::qsim
