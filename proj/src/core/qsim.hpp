#pragma once

// Real-amplitude statevector simulator for the H / X / CNOT / multi-controlled
// X gate set, plus constructors for the sequency-ordered WHT and the
// ancilla-tagging high-pass filter.
//
// Qubit q corresponds to bit q of the basis index. Circuits may contain
// qubit-order reversal markers: they relabel qubits for every later gate and
// cost nothing in depth or gate count. QASM export materializes them as swaps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"

namespace seqedge::qsim {

constexpr unsigned kMaxUnitaryWidth = 10;
constexpr unsigned kMaxStateWidth = 30;
constexpr double kDegenerateProbability = 1e-15;

struct Control {
  unsigned qubit = 0;
  bool polarity = true;  // true fires on |1>, false on |0>

  friend bool operator==(const Control&, const Control&) = default;
};

enum class GateKind { H, X, CNOT, MCX, Reverse };

class Gate {
 public:
  static Gate h(unsigned target);
  static Gate x(unsigned target);
  static Gate cnot(unsigned control, unsigned target);
  static Gate mcx(std::vector<Control> controls, unsigned target);
  /// Relabeling marker: logical qubit qubits[i] becomes qubits[k-1-i].
  static Gate reverse(std::vector<unsigned> qubits);

  GateKind kind() const noexcept { return kind_; }
  unsigned target() const noexcept { return target_; }
  const std::vector<Control>& controls() const noexcept { return controls_; }
  const std::vector<unsigned>& reversed() const noexcept { return reversed_; }

  bool is_marker() const noexcept { return kind_ == GateKind::Reverse; }
  /// Every qubit the gate touches.
  std::vector<unsigned> qubits() const;
  unsigned max_qubit() const;

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  Gate() = default;
  void validate() const;

  GateKind kind_ = GateKind::H;
  unsigned target_ = 0;
  std::vector<Control> controls_;
  std::vector<unsigned> reversed_;
};

class Circuit {
 public:
  explicit Circuit(unsigned width);

  unsigned width() const noexcept { return width_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  Circuit& add(Gate gate);
  /// Appends `other` acting on qubits 0..other.width()-1 of this circuit.
  Circuit& append(const Circuit& other);

 private:
  unsigned width_;
  std::vector<Gate> gates_;
};

class StateVector {
 public:
  /// |0...0> on `width` qubits.
  explicit StateVector(unsigned width);
  static StateVector basis(unsigned width, std::uint64_t index);
  /// Takes ownership of amplitudes; requires power-of-two length and unit
  /// norm within 1e-9.
  static StateVector from_amplitudes(std::vector<double> amplitudes);

  unsigned width() const noexcept { return width_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const double> amplitudes() const noexcept { return amps_; }
  std::span<double> amplitudes() noexcept { return amps_; }
  double norm() const;

 private:
  StateVector(unsigned width, std::vector<double> amps);

  unsigned width_;
  std::vector<double> amps_;
};

/// Applies one gate in place. Reverse markers physically permute amplitudes.
void apply_gate_inplace(StateVector& state, const Gate& gate);
StateVector apply_gate(StateVector state, const Gate& gate);

/// Applies the gates in order. Reverse markers only update a logical->physical
/// qubit map; the final layout is materialized once at the end if needed.
void run_inplace(const Circuit& circuit, StateVector& state);
StateVector run(const Circuit& circuit, StateVector state);

/// Columns are run(circuit, |k>). Width <= kMaxUnitaryWidth.
DenseMatrix unitary_of(const Circuit& circuit);

/// H on every qubit, reversal, then CNOT(j+1 -> j) for j = n-2 .. 0.
Circuit build_sequency_wht_circuit(unsigned n);
/// The U_z part alone: reversal followed by the descending CNOT cascade.
Circuit build_sequency_permutation_circuit(unsigned n);
/// CNOT(j+1 -> j) for j = 0 .. n-2, reversal, then H on every qubit.
Circuit build_inverse_sequency_wht_circuit(unsigned n);

struct DyadicInterval {
  std::uint64_t prefix = 0;  // value of the top `length` bits
  unsigned length = 0;       // number of fixed high bits

  std::uint64_t begin(unsigned n) const { return prefix << (n - length); }
  std::uint64_t end(unsigned n) const { return (prefix + 1) << (n - length); }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Disjoint dyadic intervals covering [0, c), one per set bit of c, highest
/// first.
std::vector<DyadicInterval> dyadic_cover(std::uint64_t c, unsigned n);

/// (n+1)-qubit circuit flipping the ancilla (qubit n) iff the data index is
/// below c. One MCX per dyadic interval.
Circuit build_highpass_circuit(unsigned n, std::uint64_t c);

/// X on the ancilla, sequency WHT, high-pass filter, inverse sequency WHT.
Circuit build_edge_circuit(unsigned n, std::uint64_t c);

struct PostSelection {
  std::vector<double> amplitudes;  // unnormalized; squared norm = probability
  unsigned width = 0;
  double probability = 0.0;
};

/// Keeps the block where `ancilla` reads `value`. Throws
/// DegeneratePostselection when that block has probability < 1e-15.
PostSelection postselect_ancilla(const StateVector& state, unsigned ancilla, bool value);

/// Greedy layering in program order; markers are free.
std::size_t circuit_depth(const Circuit& circuit);
/// Number of non-marker gates.
std::size_t gate_count(const Circuit& circuit);

struct GateCounts {
  std::size_t h = 0;
  std::size_t x = 0;
  std::size_t cnot = 0;
  std::size_t mcx = 0;
  std::size_t max_controls = 0;
  std::size_t reversals = 0;
};
GateCounts count_gates(const Circuit& circuit);

/// OpenQASM 2.0. Multi-controlled X with three or more controls is expanded
/// into a Toffoli V-chain over a separate `anc` register that starts and ends
/// in |0>; anti-controls are wrapped in x gates; reversals become swaps.
std::string export_qasm(const Circuit& circuit);

struct ParsedQasm {
  Circuit circuit{1};
  unsigned data_width = 0;   // size of register q
  unsigned work_width = 0;   // size of register anc (placed after q)
};

/// Parses the subset emitted by export_qasm (h, x, cx, ccx, swap over qreg q
/// and optional qreg anc).
ParsedQasm import_qasm(std::string_view text);

}  // namespace seqedge::qsim
