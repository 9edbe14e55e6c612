#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <string>

#include "error.hpp"
#include "qsim.hpp"

namespace seqedge::qsim {
namespace {

std::string q(unsigned i) { return "q[" + std::to_string(i) + "]"; }
std::string anc(unsigned i) { return "anc[" + std::to_string(i) + "]"; }

std::size_t work_qubits_needed(const Circuit& circuit) {
  std::size_t need = 0;
  for (const Gate& g : circuit.gates())
    if (g.controls().size() >= 3) need = std::max(need, g.controls().size() - 2);
  return need;
}

void emit_mcx(std::ostream& out, const Gate& g) {
  const auto& controls = g.controls();
  for (const Control& c : controls)
    if (!c.polarity) out << "x " << q(c.qubit) << ";\n";

  const std::size_t k = controls.size();
  if (k == 1) {
    out << "cx " << q(controls[0].qubit) << "," << q(g.target()) << ";\n";
  } else if (k == 2) {
    out << "ccx " << q(controls[0].qubit) << "," << q(controls[1].qubit) << "," << q(g.target())
        << ";\n";
  } else {
    // V-chain: anc[0] = c0 & c1, anc[j] = c_{j+1} & anc[j-1], target ^= c_{k-1} & anc[k-3].
    std::vector<std::string> chain;
    chain.push_back("ccx " + q(controls[0].qubit) + "," + q(controls[1].qubit) + "," + anc(0) + ";\n");
    for (unsigned j = 1; j + 2 < k; ++j)
      chain.push_back("ccx " + q(controls[j + 1].qubit) + "," + anc(j - 1) + "," + anc(j) + ";\n");
    for (const auto& line : chain) out << line;
    out << "ccx " << q(controls[k - 1].qubit) << "," << anc(static_cast<unsigned>(k - 3)) << ","
        << q(g.target()) << ";\n";
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) out << *it;
  }

  for (const Control& c : controls)
    if (!c.polarity) out << "x " << q(c.qubit) << ";\n";
}

}  // namespace

std::string export_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.width() << "];\n";
  if (const std::size_t work = work_qubits_needed(circuit); work > 0)
    out << "// anc: Toffoli V-chain work register, |0> in and out\n"
        << "qreg anc[" << work << "];\n";
  for (const Gate& g : circuit.gates()) {
    switch (g.kind()) {
      case GateKind::H:
        out << "h " << q(g.target()) << ";\n";
        break;
      case GateKind::X:
        out << "x " << q(g.target()) << ";\n";
        break;
      case GateKind::CNOT:
        out << "cx " << q(g.controls()[0].qubit) << "," << q(g.target()) << ";\n";
        break;
      case GateKind::MCX:
        emit_mcx(out, g);
        break;
      case GateKind::Reverse: {
        const auto& qs = g.reversed();
        for (std::size_t i = 0; i < qs.size() / 2; ++i)
          out << "swap " << q(qs[i]) << "," << q(qs[qs.size() - 1 - i]) << ";\n";
        break;
      }
    }
  }
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw_invalid("qasm line " + std::to_string(line) + ": " + what);
}

unsigned parse_uint(std::string_view s, std::size_t line) {
  unsigned v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) parse_error(line, "bad integer '" + std::string(s) + "'");
  return v;
}

// "name[idx]" -> (name, idx)
std::pair<std::string, unsigned> parse_ref(std::string_view s, std::size_t line) {
  s = trim(s);
  const auto open = s.find('[');
  const auto close = s.find(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
      close + 1 != s.size())
    parse_error(line, "bad qubit reference '" + std::string(s) + "'");
  return {std::string(trim(s.substr(0, open))), parse_uint(s.substr(open + 1, close - open - 1), line)};
}

}  // namespace

ParsedQasm import_qasm(std::string_view text) {
  struct Pending {
    std::string op;
    std::vector<std::pair<std::string, unsigned>> args;
    std::size_t line;
  };
  std::vector<Pending> ops;
  unsigned data_width = 0;
  unsigned work_width = 0;
  bool saw_header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto c = line.find("//"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.back() != ';') parse_error(line_no, "missing ';'");
    line = trim(line.substr(0, line.size() - 1));

    if (line.starts_with("OPENQASM")) {
      if (trim(line.substr(8)) != "2.0") parse_error(line_no, "only OpenQASM 2.0 is supported");
      saw_header = true;
      continue;
    }
    if (line.starts_with("include")) continue;
    if (line.starts_with("barrier")) continue;
    const auto space = line.find(' ');
    if (space == std::string_view::npos) parse_error(line_no, "expected an operand");
    const std::string op(line.substr(0, space));
    std::string_view rest = trim(line.substr(space + 1));
    if (op == "qreg") {
      auto [name, size] = parse_ref(rest, line_no);
      if (name == "q") data_width = size;
      else if (name == "anc") work_width = size;
      else parse_error(line_no, "unknown register '" + name + "'");
      continue;
    }
    Pending p{op, {}, line_no};
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      p.args.push_back(parse_ref(rest.substr(0, comma), line_no));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    ops.push_back(std::move(p));
  }
  if (!saw_header) throw_invalid("qasm: missing OPENQASM header");
  if (data_width == 0) throw_invalid("qasm: missing qreg q");

  ParsedQasm parsed;
  parsed.data_width = data_width;
  parsed.work_width = work_width;
  parsed.circuit = Circuit(data_width + work_width);
  auto index = [&](const std::pair<std::string, unsigned>& ref, std::size_t line) -> unsigned {
    if (ref.first == "q" && ref.second < data_width) return ref.second;
    if (ref.first == "anc" && ref.second < work_width) return data_width + ref.second;
    parse_error(line, "qubit " + ref.first + "[" + std::to_string(ref.second) + "] out of range");
  };
  for (const Pending& p : ops) {
    std::vector<unsigned> qs;
    for (const auto& a : p.args) qs.push_back(index(a, p.line));
    auto arity = [&](std::size_t n) {
      if (qs.size() != n) parse_error(p.line, p.op + " expects " + std::to_string(n) + " operands");
    };
    if (p.op == "h") {
      arity(1);
      parsed.circuit.add(Gate::h(qs[0]));
    } else if (p.op == "x") {
      arity(1);
      parsed.circuit.add(Gate::x(qs[0]));
    } else if (p.op == "cx") {
      arity(2);
      parsed.circuit.add(Gate::cnot(qs[0], qs[1]));
    } else if (p.op == "ccx") {
      arity(3);
      parsed.circuit.add(Gate::mcx({{qs[0], true}, {qs[1], true}}, qs[2]));
    } else if (p.op == "swap") {
      arity(2);
      parsed.circuit.add(Gate::reverse({qs[0], qs[1]}));
    } else {
      parse_error(p.line, "unsupported gate '" + p.op + "'");
    }
  }
  return parsed;
}

}  // namespace seqedge::qsim
