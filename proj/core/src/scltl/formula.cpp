#include "robust_synth/scltl/formula.hpp"

#include <algorithm>

#include "robust_synth/scltl/letter.hpp"

namespace robust_synth::scltl {

struct Formula::Node {
  Op op;
  std::size_t prop = 0;
  std::vector<Formula> operands;
  std::size_t size = 1;
  std::size_t depth = 0;
};

std::string to_string(Letter letter, const std::vector<std::string>& ap) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < ap.size(); ++i) {
    if (!letter.has(i)) continue;
    if (!first) out += ",";
    out += ap[i];
    first = false;
  }
  return out + "}";
}

Formula Formula::make(Op op, std::size_t prop, std::vector<Formula> operands) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->prop = prop;
  for (const auto& f : operands) {
    node->size += f.size();
    node->depth = std::max(node->depth, f.depth() + 1);
  }
  node->operands = std::move(operands);
  return Formula(std::move(node));
}

Formula Formula::truth() {
  static const Formula t = make(Op::True, 0, {});
  return t;
}

Formula Formula::falsity() {
  static const Formula f = make(Op::False, 0, {});
  return f;
}

Formula Formula::atom(std::size_t prop) { return make(Op::Atom, prop, {}); }
Formula Formula::not_atom(std::size_t prop) { return make(Op::NotAtom, prop, {}); }

namespace {

// Shared by conj/disj: `absorbing` short-circuits, `neutral` is dropped.
std::vector<Formula> flatten(std::vector<Formula> in, Op self, Op neutral, Op absorbing, bool& absorbed) {
  std::vector<Formula> out;
  absorbed = false;
  for (auto& f : in) {
    if (f.op() == absorbing) {
      absorbed = true;
      return {};
    }
    if (f.op() == neutral) continue;
    if (f.op() == self) {
      for (const auto& g : f.operands()) out.push_back(g);
    } else {
      out.push_back(std::move(f));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Formula Formula::conj(std::vector<Formula> operands) {
  bool absorbed = false;
  auto flat = flatten(std::move(operands), Op::And, Op::True, Op::False, absorbed);
  if (absorbed) return falsity();
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat.front();
  return make(Op::And, 0, std::move(flat));
}

Formula Formula::disj(std::vector<Formula> operands) {
  bool absorbed = false;
  auto flat = flatten(std::move(operands), Op::Or, Op::False, Op::True, absorbed);
  if (absorbed) return truth();
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return flat.front();
  return make(Op::Or, 0, std::move(flat));
}

Formula Formula::until(Formula lhs, Formula rhs) {
  if (rhs.op() == Op::True || rhs.op() == Op::False) return rhs;
  if (lhs.op() == Op::False) return rhs;
  return make(Op::Until, 0, {std::move(lhs), std::move(rhs)});
}

Formula Formula::next(Formula operand) {
  if (operand.op() == Op::True || operand.op() == Op::False) return operand;
  return make(Op::Next, 0, {std::move(operand)});
}

Formula Formula::eventually(Formula operand) { return until(truth(), std::move(operand)); }

Op Formula::op() const { return node_->op; }
std::size_t Formula::prop() const { return node_->prop; }
std::span<const Formula> Formula::operands() const { return node_->operands; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }

std::size_t Formula::props_used() const {
  std::size_t n = 0;
  if (op() == Op::Atom || op() == Op::NotAtom) n = prop() + 1;
  for (const auto& f : operands()) n = std::max(n, f.props_used());
  return n;
}

std::string Formula::to_string(const std::vector<std::string>& ap) const {
  auto name = [&](std::size_t p) { return p < ap.size() ? ap[p] : "p" + std::to_string(p + 1); };
  switch (op()) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return name(prop());
    case Op::NotAtom: return "!" + name(prop());
    case Op::Next: return "X " + lhs().to_string(ap);
    case Op::Until: return "(" + lhs().to_string(ap) + " U " + rhs().to_string(ap) + ")";
    case Op::And:
    case Op::Or: {
      const char* sep = op() == Op::And ? " & " : " | ";
      std::string out = "(";
      for (std::size_t i = 0; i < operands().size(); ++i) {
        if (i) out += sep;
        out += operands()[i].to_string(ap);
      }
      return out + ")";
    }
  }
  return {};
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  if (a.prop() != b.prop()) return a.prop() < b.prop() ? -1 : 1;
  const auto ka = a.operands();
  const auto kb = b.operands();
  if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (const int c = compare(ka[i], kb[i]); c != 0) return c;
  }
  return 0;
}

}  // namespace robust_synth::scltl
