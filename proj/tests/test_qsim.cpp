#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/qsim.hpp"
#include "core/wht.hpp"
#include "oracles.hpp"

using namespace seqedge;
using namespace seqedge::qsim;

namespace {

std::vector<double> amps(const StateVector& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

double identity_error(const DenseMatrix& m) {
  double err = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) err = std::max(err, std::abs(m(r, c) - (r == c ? 1.0 : 0.0)));
  return err;
}

StateVector random_state(unsigned width, std::mt19937_64& rng) {
  return StateVector::from_amplitudes(oracle::random_unit_vector(std::size_t{1} << width, rng));
}

}  // namespace

TEST_CASE("gate validation") {
  CHECK_THROWS_AS(Gate::cnot(1, 1), Error);
  CHECK_THROWS_AS(Gate::mcx({}, 0), Error);
  CHECK_THROWS_AS(Gate::mcx({{0, true}, {0, false}}, 1), Error);
  CHECK_THROWS_AS(Gate::mcx({{2, true}}, 2), Error);
  CHECK_THROWS_AS(Gate::reverse({0}), Error);
  Circuit c(2);
  CHECK_THROWS_AS(c.add(Gate::h(2)), Error);
  CHECK_THROWS_AS(c.add(Gate::cnot(0, 5)), Error);
}

TEST_CASE("apply_gate examples") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(oracle::max_abs_diff(amps(apply_gate(StateVector(1), Gate::h(0))), {s, s}) < 1e-15);
  CHECK(amps(apply_gate(StateVector::basis(2, 0), Gate::x(1))) == std::vector<double>{0, 0, 1, 0});
  // anti-controlled X fires when qubit 1 is 0: |01> -> |00>
  CHECK(amps(apply_gate(StateVector::basis(2, 1), Gate::mcx({{1, false}}, 0))) == std::vector<double>{1, 0, 0, 0});
  CHECK_THROWS_AS(apply_gate(StateVector(1), Gate::h(1)), Error);
}

TEST_CASE("anti-controlled X on all four basis states") {
  const Gate g = Gate::mcx({{1, false}}, 0);
  // control bit (qubit 1) zero for indices 0 and 1: they swap; 2 and 3 untouched
  const std::uint64_t expected[4] = {1, 0, 2, 3};
  for (std::uint64_t k = 0; k < 4; ++k) {
    const auto out = amps(apply_gate(StateVector::basis(2, k), g));
    CHECK(out[expected[k]] == 1.0);
  }
}

TEST_CASE("every gate preserves the norm") {
  std::mt19937_64 rng(1);
  StateVector s = random_state(5, rng);
  const std::vector<Gate> gates{Gate::h(0), Gate::h(4), Gate::x(2), Gate::cnot(3, 1), Gate::mcx({{0, true}, {2, false}}, 4),
                                Gate::mcx({{1, false}, {2, false}, {3, true}}, 0), Gate::reverse({0, 1, 2, 3, 4})};
  for (const Gate& g : gates) {
    apply_gate_inplace(s, g);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("StateVector::from_amplitudes enforces normalization") {
  CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 1.0}), Error);
  CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 0.0, 0.0}), Error);
  CHECK_NOTHROW(StateVector::from_amplitudes({0.6, 0.8}));
}

TEST_CASE("run examples") {
  std::mt19937_64 rng(2);
  const StateVector s = random_state(3, rng);
  CHECK(amps(run(Circuit(3), s)) == amps(s));

  Circuit hh(3);
  hh.add(Gate::h(0)).add(Gate::h(0));
  CHECK(oracle::max_abs_diff(amps(run(hh, s)), amps(s)) < 1e-12);

  const auto hs = wht::sequency_wht_matrix(3);
  const Circuit wht3 = build_sequency_wht_circuit(3);
  for (std::uint64_t k = 0; k < 8; ++k) {
    const auto col = amps(run(wht3, StateVector::basis(3, k)));
    for (std::size_t r = 0; r < 8; ++r) CHECK(std::abs(col[r] - hs(r, k)) < 1e-12);
  }
  CHECK_THROWS_AS(run(Circuit(2), s), Error);
}

TEST_CASE("relabeling in run matches physical reversal in apply_gate") {
  std::mt19937_64 rng(8);
  Circuit c(4);
  c.add(Gate::h(0)).add(Gate::reverse({0, 1, 3})).add(Gate::cnot(0, 2)).add(Gate::h(3)).add(Gate::reverse({1, 2}));
  const StateVector s = random_state(4, rng);
  StateVector manual = s;
  for (const Gate& g : c.gates()) apply_gate_inplace(manual, g);
  CHECK(oracle::max_abs_diff(amps(run(c, s)), amps(manual)) < 1e-15);
}

TEST_CASE("build_sequency_wht_circuit") {
  const Circuit one = build_sequency_wht_circuit(1);
  CHECK(gate_count(one) == 1);
  CHECK(oracle::max_abs_diff(unitary_of(one), wht::sequency_wht_matrix(1)) < 1e-15);

  CHECK(oracle::max_abs_diff(unitary_of(build_sequency_wht_circuit(3)),
                             oracle::from_signs(oracle::kSequencySigns8)) < 1e-12);

  // U_z alone maps |m> to |gray_index(m)>
  const Circuit uz = build_sequency_permutation_circuit(3);
  for (std::uint64_t m = 0; m < 8; ++m) {
    const auto out = amps(run(uz, StateVector::basis(3, m)));
    CHECK(out[wht::gray_index(m, 3)] == 1.0);
  }
  CHECK_THROWS_AS(build_sequency_wht_circuit(0), Error);
}

TEST_CASE("circuit unitary equals the sequency matrix for n <= 8") {
  for (unsigned n = 1; n <= 8; ++n)
    CHECK_MESSAGE(oracle::max_abs_diff(unitary_of(build_sequency_wht_circuit(n)), wht::sequency_wht_matrix(n)) < 1e-12,
                  "n=" << n);
}

TEST_CASE("build_inverse_sequency_wht_circuit") {
  std::mt19937_64 rng(4);
  const StateVector s = random_state(6, rng);
  const StateVector back = run(build_inverse_sequency_wht_circuit(6), run(build_sequency_wht_circuit(6), s));
  CHECK(oracle::max_abs_diff(amps(back), amps(s)) < 1e-12);

  const Circuit one = build_inverse_sequency_wht_circuit(1);
  CHECK(gate_count(one) == 1);
  CHECK(one.gates()[0].kind() == GateKind::H);

  CHECK(oracle::max_abs_diff(unitary_of(build_inverse_sequency_wht_circuit(3)),
                             wht::sequency_wht_matrix(3).transposed()) < 1e-12);
  CHECK_THROWS_AS(build_inverse_sequency_wht_circuit(0), Error);
}

TEST_CASE("dyadic_cover examples") {
  CHECK(dyadic_cover(4, 3) == std::vector<DyadicInterval>{{0b0, 1}});
  CHECK(dyadic_cover(2, 3) == std::vector<DyadicInterval>{{0b00, 2}});
  CHECK(dyadic_cover(3, 3) == std::vector<DyadicInterval>{{0b00, 2}, {0b010, 3}});
  CHECK_THROWS_AS(dyadic_cover(0, 3), Error);
  CHECK_THROWS_AS(dyadic_cover(8, 3), Error);
}

TEST_CASE("dyadic_cover partitions [0, c)") {
  for (unsigned n = 1; n <= 8; ++n) {
    const std::uint64_t size = std::uint64_t{1} << n;
    for (std::uint64_t c = 1; c < size; ++c) {
      const auto cover = dyadic_cover(c, n);
      REQUIRE(cover.size() == static_cast<std::size_t>(std::popcount(c)));
      std::vector<int> hits(size, 0);
      for (const auto& iv : cover)
        for (std::uint64_t m = iv.begin(n); m < iv.end(n); ++m) ++hits[m];
      for (std::uint64_t m = 0; m < size; ++m) REQUIRE(hits[m] == (m < c ? 1 : 0));
    }
  }
}

TEST_CASE("build_highpass_circuit examples") {
  const Circuit c4 = build_highpass_circuit(3, 4);
  REQUIRE(c4.gates().size() == 1);
  CHECK(c4.gates()[0].controls() == std::vector<Control>{{2, false}});
  CHECK(c4.gates()[0].target() == 3);

  const Circuit c2 = build_highpass_circuit(3, 2);
  REQUIRE(c2.gates().size() == 1);
  CHECK(c2.gates()[0].controls() == std::vector<Control>{{2, false}, {1, false}});

  // |1>_a (x) |m>: ancilla drops to 0 exactly when m < c
  for (std::uint64_t c : {2, 3, 4}) {
    const Circuit hp = build_highpass_circuit(3, c);
    for (std::uint64_t m = 0; m < 8; ++m) {
      const auto out = amps(run(hp, StateVector::basis(4, 8 + m)));
      CHECK(out[(m < c ? 0 : 8) + m] == 1.0);
    }
  }
  CHECK_THROWS_AS(build_highpass_circuit(3, 0), Error);
  CHECK_THROWS_AS(build_highpass_circuit(3, 8), Error);
}

TEST_CASE("high-pass circuit is an involution") {
  for (unsigned n = 1; n <= 5; ++n)
    for (std::uint64_t c = 1; c < (std::uint64_t{1} << n); ++c) {
      Circuit twice = build_highpass_circuit(n, c);
      twice.append(build_highpass_circuit(n, c));
      REQUIRE(identity_error(unitary_of(twice)) < 1e-12);
    }
}

TEST_CASE("filter gate count equals popcount(c) <= n") {
  for (unsigned n = 1; n <= 10; ++n)
    for (std::uint64_t c = 1; c < (std::uint64_t{1} << n); ++c) {
      const auto g = gate_count(build_highpass_circuit(n, c));
      REQUIRE(g == static_cast<std::size_t>(std::popcount(c)));
      REQUIRE(g <= n);
    }
}

TEST_CASE("postselect_ancilla") {
  std::mt19937_64 rng(6);
  const auto u = oracle::random_unit_vector(4, rng);
  const auto w = oracle::random_unit_vector(4, rng);
  std::vector<double> joint(8);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < 4; ++i) {
    joint[i] = s * u[i];
    joint[4 + i] = s * w[i];
  }
  const StateVector state = StateVector::from_amplitudes(joint);
  const PostSelection one = postselect_ancilla(state, 2, true);
  CHECK(one.width == 2);
  CHECK(one.probability == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t i = 0; i < 4; ++i) CHECK(one.amplitudes[i] == doctest::Approx(s * w[i]));
  const PostSelection zero = postselect_ancilla(state, 2, false);
  CHECK(std::abs(one.probability + zero.probability - 1.0) < 1e-12);

  std::vector<double> product(8, 0.0);
  for (std::size_t i = 0; i < 4; ++i) product[4 + i] = u[i];
  const PostSelection all = postselect_ancilla(StateVector::from_amplitudes(product), 2, true);
  CHECK(all.probability == doctest::Approx(1.0));
  CHECK(oracle::max_abs_diff(all.amplitudes, u) < 1e-15);

  try {
    postselect_ancilla(StateVector::from_amplitudes(product), 2, false);
    FAIL("expected degenerate post-selection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegeneratePostselection);
  }
  CHECK_THROWS_AS(postselect_ancilla(StateVector(1), 0, true), Error);
}

TEST_CASE("postselect on a middle qubit compresses the index") {
  // |q2 q1 q0> with amplitude on index 0b110 -> select q1 = 1 -> 0b10
  const PostSelection sel = postselect_ancilla(StateVector::basis(3, 0b110), 1, true);
  CHECK(sel.amplitudes == std::vector<double>{0, 0, 1, 0});
}

TEST_CASE("postselect probabilities sum to one on random states") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const StateVector s = random_state(6, rng);
    const unsigned a = static_cast<unsigned>(t % 6);
    const double p1 = postselect_ancilla(s, a, true).probability;
    const double p0 = postselect_ancilla(s, a, false).probability;
    CHECK(std::abs(p0 + p1 - 1.0) < 1e-12);
    double direct = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if ((i >> a) & 1U) direct += s.amplitudes()[i] * s.amplitudes()[i];
    CHECK(std::abs(direct - p1) < 1e-15);
  }
}

TEST_CASE("depth and gate count") {
  const Circuit w12 = build_sequency_wht_circuit(12);
  CHECK(circuit_depth(w12) == 12);
  CHECK(gate_count(w12) == 23);
  CHECK(circuit_depth(Circuit(3)) == 0);
  Circuit layer(5);
  for (unsigned q = 0; q < 5; ++q) layer.add(Gate::h(q));
  CHECK(circuit_depth(layer) == 1);
  for (unsigned n = 2; n <= 12; ++n) {
    CHECK(circuit_depth(build_sequency_wht_circuit(n)) == n);
    CHECK(gate_count(build_sequency_wht_circuit(n)) == 2 * n - 1);
  }
}

TEST_CASE("unitary_of") {
  Circuit empty(2);
  CHECK(identity_error(unitary_of(empty)) == 0.0);
  Circuit h(1);
  h.add(Gate::h(0));
  CHECK(oracle::max_abs_diff(unitary_of(h), wht::sequency_wht_matrix(1)) < 1e-15);
  CHECK_THROWS_AS(unitary_of(Circuit(11)), Error);
}

TEST_CASE("edge circuit gate budget") {
  for (unsigned n = 2; n <= 12; ++n)
    for (std::uint64_t c : {std::uint64_t{1} << (n - 1), std::uint64_t{1} << (n - 2), std::uint64_t{3}}) {
      if (c == 0 || c >= (std::uint64_t{1} << n)) continue;
      CHECK(gate_count(build_edge_circuit(n, c)) <= 4 * n + static_cast<std::size_t>(std::popcount(c)));
    }
}
