#include "robust_synth/scltl/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>

namespace robust_synth::scltl {

Dfa::Dfa(std::vector<std::string> ap, std::size_t initial, std::vector<bool> accepting,
         std::vector<std::uint32_t> delta)
    : ap_(std::move(ap)), initial_(initial), accepting_(std::move(accepting)), delta_(std::move(delta)) {
  if (ap_.size() > kMaxPropositions) throw InputError("too many atomic propositions");
  if (accepting_.empty()) throw InputError("a DFA needs at least one location");
  if (initial_ >= accepting_.size()) throw InputError("initial location out of range");
  if (delta_.size() != accepting_.size() * alphabet_size()) {
    throw InputError("transition table must have n * 2^|AP| entries");
  }
  for (auto t : delta_) {
    if (t >= accepting_.size()) throw InputError("transition target out of range");
  }
}

std::size_t Dfa::run(const Word& word) const {
  std::size_t q = initial_;
  for (Letter a : word) q = next(q, a);
  return q;
}

bool Dfa::is_absorbing(std::size_t q) const {
  for (std::size_t a = 0; a < alphabet_size(); ++a) {
    if (delta_[q * alphabet_size() + a] != q) return false;
  }
  return true;
}

namespace {

// Positive boolean combination of elementary subformulas as a minimal DNF:
// sorted terms, each a sorted set of element ids, no term a superset of
// another. {} is false, {{}} is true. Minimal DNFs of monotone functions are
// unique, which makes them usable as derivative-state keys.
using Term = std::vector<int>;
using Dnf = std::vector<Term>;

void normalize(Dnf& d) {
  for (auto& t : d) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  std::sort(d.begin(), d.end(), [](const Term& a, const Term& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  d.erase(std::unique(d.begin(), d.end()), d.end());
  Dnf kept;
  for (auto& t : d) {
    const bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const Term& k) {
      return std::includes(t.begin(), t.end(), k.begin(), k.end());
    });
    if (!subsumed) kept.push_back(std::move(t));
  }
  std::sort(kept.begin(), kept.end());
  d = std::move(kept);
}

Dnf dnf_or(const Dnf& a, const Dnf& b) {
  Dnf out = a;
  out.insert(out.end(), b.begin(), b.end());
  normalize(out);
  return out;
}

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      Term t = x;
      t.insert(t.end(), y.begin(), y.end());
      out.push_back(std::move(t));
    }
  }
  normalize(out);
  return out;
}

const Dnf kTrue{Term{}};
const Dnf kFalse{};

class DerivativeBuilder {
public:
  DerivativeBuilder(const Formula& root, std::size_t num_props) : alphabet_(alphabet_size(num_props)) {
    root_ = to_dnf(root);
    progress_.resize(alphabet_);
  }

  const Dnf& root() const { return root_; }
  std::size_t alphabet() const { return alphabet_; }

  bool accepts(const Dnf& d) {
    return std::any_of(d.begin(), d.end(), [&](const Term& t) {
      return std::all_of(t.begin(), t.end(), [&](int e) { return element_accepts(e); });
    });
  }

  Dnf progress(const Dnf& d, std::size_t letter) {
    Dnf out = kFalse;
    for (const auto& t : d) {
      Dnf term = kTrue;
      for (int e : t) {
        term = dnf_and(term, progress_element(e, letter));
        if (term.empty()) break;
      }
      out = dnf_or(out, term);
      if (out == kTrue) break;
    }
    return out;
  }

private:
  int intern(const Formula& f) {
    auto it = ids_.find(f);
    if (it != ids_.end()) return it->second;
    // Operands first; progression and acceptance read their DNFs.
    std::vector<Dnf> operands;
    for (const auto& g : f.operands()) operands.push_back(to_dnf(g));
    const int id = static_cast<int>(elements_.size());
    ids_.emplace(f, id);
    elements_.push_back(f);
    operand_dnfs_.push_back(std::move(operands));
    accepts_.push_back(std::nullopt);
    return id;
  }

  Dnf to_dnf(const Formula& f) {
    switch (f.op()) {
      case Op::True: return kTrue;
      case Op::False: return kFalse;
      case Op::And: {
        Dnf out = kTrue;
        for (const auto& g : f.operands()) out = dnf_and(out, to_dnf(g));
        return out;
      }
      case Op::Or: {
        Dnf out = kFalse;
        for (const auto& g : f.operands()) out = dnf_or(out, to_dnf(g));
        return out;
      }
      default: return Dnf{Term{intern(f)}};
    }
  }

  bool element_accepts(int e) {
    auto& cached = accepts_[static_cast<std::size_t>(e)];
    if (cached) return *cached;
    const Formula& f = elements_[static_cast<std::size_t>(e)];
    bool value = false;
    if (f.op() == Op::Next) value = accepts(operand_dnfs_[static_cast<std::size_t>(e)][0]);
    if (f.op() == Op::Until) value = accepts(operand_dnfs_[static_cast<std::size_t>(e)][1]);
    cached = value;
    return value;
  }

  const Dnf& progress_element(int e, std::size_t letter) {
    const auto idx = static_cast<std::size_t>(e);
    if (progress_[letter].empty()) progress_[letter].resize(elements_.size());
    if (progress_[letter][idx]) return *progress_[letter][idx];
    const Formula& f = elements_[idx];
    const Letter a{static_cast<std::uint32_t>(letter)};
    Dnf value;
    switch (f.op()) {
      case Op::Atom: value = a.has(f.prop()) ? kTrue : kFalse; break;
      case Op::NotAtom: value = a.has(f.prop()) ? kFalse : kTrue; break;
      case Op::Next: value = operand_dnfs_[idx][0]; break;
      case Op::Until:
        // after(l U r) = after(r) | (after(l) & (l U r))
        value = dnf_or(progress(operand_dnfs_[idx][1], letter),
                       dnf_and(progress(operand_dnfs_[idx][0], letter), Dnf{Term{e}}));
        break;
      default: break;
    }
    progress_[letter][idx] = std::move(value);
    return *progress_[letter][idx];
  }

  std::size_t alphabet_;
  Dnf root_;
  std::map<Formula, int> ids_;
  std::vector<Formula> elements_;
  std::vector<std::vector<Dnf>> operand_dnfs_;
  std::vector<std::optional<bool>> accepts_;
  std::vector<std::vector<std::optional<Dnf>>> progress_;
};

struct RawAutomaton {
  std::vector<bool> accepting;
  std::vector<std::uint32_t> delta;
};

RawAutomaton explore(DerivativeBuilder& builder, std::size_t max_states) {
  RawAutomaton raw;
  std::map<Dnf, std::uint32_t> ids;
  std::vector<Dnf> states;
  auto id_of = [&](Dnf d) {
    auto it = ids.find(d);
    if (it != ids.end()) return it->second;
    if (states.size() >= max_states) {
      throw NumericError("DFA construction exceeded the state budget of " + std::to_string(max_states));
    }
    const auto id = static_cast<std::uint32_t>(states.size());
    raw.accepting.push_back(builder.accepts(d));
    ids.emplace(d, id);
    states.push_back(std::move(d));
    return id;
  };
  id_of(builder.root());
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t a = 0; a < builder.alphabet(); ++a) {
      Dnf succ = builder.progress(states[s], a);
      raw.delta.push_back(id_of(std::move(succ)));
    }
  }
  return raw;
}

// Moore partition refinement, then breadth-first renumbering from state 0.
Dfa minimize(const RawAutomaton& raw, std::vector<std::string> ap) {
  const std::size_t n = raw.accepting.size();
  const std::size_t k = alphabet_size(ap.size());
  std::vector<std::uint32_t> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = raw.accepting[s] ? 1 : 0;
  std::size_t num_classes = 0;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> signatures;
    std::vector<std::uint32_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::uint32_t> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[s]);
      for (std::size_t a = 0; a < k; ++a) sig.push_back(cls[raw.delta[s * k + a]]);
      auto [it, inserted] = signatures.emplace(std::move(sig), static_cast<std::uint32_t>(signatures.size()));
      next[s] = it->second;
    }
    const std::size_t count = signatures.size();
    cls = std::move(next);
    if (count == num_classes) break;
    num_classes = count;
  }

  std::vector<std::uint32_t> rep(num_classes, 0);
  std::vector<bool> seen_rep(num_classes, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (!seen_rep[cls[s]]) {
      seen_rep[cls[s]] = true;
      rep[cls[s]] = static_cast<std::uint32_t>(s);
    }
  }
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> order(num_classes, kUnset);
  std::vector<std::uint32_t> queue{cls[0]};
  order[cls[0]] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::uint32_t c = queue[i];
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint32_t t = cls[raw.delta[rep[c] * k + a]];
      if (order[t] == kUnset) {
        order[t] = static_cast<std::uint32_t>(queue.size());
        queue.push_back(t);
      }
    }
  }
  std::vector<bool> accepting(queue.size());
  std::vector<std::uint32_t> delta(queue.size() * k);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::uint32_t s = rep[queue[i]];
    accepting[i] = raw.accepting[s];
    for (std::size_t a = 0; a < k; ++a) delta[i * k + a] = order[cls[raw.delta[s * k + a]]];
  }
  return Dfa(std::move(ap), 0, std::move(accepting), std::move(delta));
}

}  // namespace

Dfa compile_to_dfa(const Formula& formula, const std::vector<std::string>& ap, const CompileOptions& options) {
  if (ap.size() > kMaxPropositions) {
    throw InputError("at most " + std::to_string(kMaxPropositions) + " atomic propositions are supported");
  }
  if (formula.props_used() > ap.size()) throw InputError("formula references a proposition outside AP");
  DerivativeBuilder builder(formula, ap.size());
  const RawAutomaton raw = explore(builder, options.max_states);
  return minimize(raw, ap);
}

}  // namespace robust_synth::scltl
