#include <map>
#include <sstream>

#include <json.hpp>

#include "robust_synth/scltl/dfa.hpp"

namespace robust_synth::scltl {

namespace {

std::string json_text(const Dfa& dfa) {
  nlohmann::ordered_json j;
  j["ap"] = dfa.ap();
  j["n"] = dfa.num_locations();
  j["q0"] = dfa.initial();
  std::vector<std::size_t> accepting;
  for (std::size_t q = 0; q < dfa.num_locations(); ++q) {
    if (dfa.is_accepting(q)) accepting.push_back(q);
  }
  j["accepting"] = accepting;
  j["delta"] = dfa.delta();
  return j.dump(2) + "\n";
}

std::string dot_text(const Dfa& dfa) {
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n";
  for (std::size_t q = 0; q < dfa.num_locations(); ++q) {
    out << "  q" << q << " [shape=" << (dfa.is_accepting(q) ? "doublecircle" : "circle");
    if (q == dfa.initial()) out << ", style=bold, xlabel=\"start\"";
    out << "];\n";
  }
  for (std::size_t q = 0; q < dfa.num_locations(); ++q) {
    std::map<std::size_t, std::string> labels;
    for (std::size_t a = 0; a < dfa.alphabet_size(); ++a) {
      const Letter letter{static_cast<std::uint32_t>(a)};
      auto& label = labels[dfa.next(q, letter)];
      if (!label.empty()) label += ", ";
      label += to_string(letter, dfa.ap());
    }
    for (const auto& [target, label] : labels) {
      out << "  q" << q << " -> q" << target << " [label=\"" << label << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_dfa(const Dfa& dfa, DfaFormat format) {
  return format == DfaFormat::Json ? json_text(dfa) : dot_text(dfa);
}

Dfa import_dfa_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const auto ap = j.at("ap").get<std::vector<std::string>>();
    const auto n = j.at("n").get<std::size_t>();
    const auto q0 = j.at("q0").get<std::size_t>();
    std::vector<bool> accepting(n, false);
    for (auto q : j.at("accepting").get<std::vector<std::size_t>>()) {
      if (q >= n) throw InputError("accepting location out of range");
      accepting[q] = true;
    }
    auto delta = j.at("delta").get<std::vector<std::uint32_t>>();
    return Dfa(ap, q0, std::move(accepting), std::move(delta));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid DFA JSON: ") + e.what());
  }
}

}  // namespace robust_synth::scltl
