#include <cctype>
#include <string>

#include "robust_synth/scltl/formula.hpp"
#include "robust_synth/scltl/letter.hpp"

namespace robust_synth::scltl {

ParseError::ParseError(const std::string& what, std::size_t position)
    : InputError(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Until, Next, Eventually, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Parser {
public:
  Parser(std::string_view text, const std::vector<std::string>& ap) : text_(text), ap_(ap) { advance(); }

  Formula parse() {
    Formula f = parse_or();
    if (tok_.kind != Tok::End) throw ParseError("unexpected '" + tok_.text + "'", tok_.pos);
    return f;
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, "<end>", start};
      return;
    }
    const char c = text_[pos_];
    auto single = [&](Tok k, std::size_t len) {
      tok_ = {k, std::string(text_.substr(start, len)), start};
      pos_ += len;
    };
    switch (c) {
      case '!': return single(Tok::Not, 1);
      case '(': return single(Tok::LParen, 1);
      case ')': return single(Tok::RParen, 1);
      case '&': return single(Tok::And, pos_ + 1 < text_.size() && text_[pos_ + 1] == '&' ? 2 : 1);
      case '|': return single(Tok::Or, pos_ + 1 < text_.size() && text_[pos_ + 1] == '|' ? 2 : 1);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string word(text_.substr(start, pos_ - start));
      Tok kind = Tok::Ident;
      if (word == "U") kind = Tok::Until;
      else if (word == "X") kind = Tok::Next;
      else if (word == "F") kind = Tok::Eventually;
      else if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      tok_ = {kind, std::move(word), start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (tok_.kind == Tok::Or) {
      advance();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts.front() : Formula::disj(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_until()};
    while (tok_.kind == Tok::And) {
      advance();
      parts.push_back(parse_until());
    }
    return parts.size() == 1 ? parts.front() : Formula::conj(std::move(parts));
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (tok_.kind != Tok::Until) return lhs;
    advance();
    return Formula::until(std::move(lhs), parse_until());
  }

  Formula parse_unary() {
    const Token t = tok_;
    switch (t.kind) {
      case Tok::Not: {
        advance();
        if (tok_.kind == Tok::LParen) {
          // "!(p)" is fine, "!(p & q)" is not.
          advance();
          if (tok_.kind != Tok::Ident) throw ParseError("negation applies only to atomic propositions", t.pos);
          const std::size_t p = lookup(tok_);
          advance();
          if (tok_.kind != Tok::RParen) throw ParseError("negation applies only to atomic propositions", t.pos);
          advance();
          return Formula::not_atom(p);
        }
        if (tok_.kind != Tok::Ident) throw ParseError("negation applies only to atomic propositions", t.pos);
        const std::size_t p = lookup(tok_);
        advance();
        return Formula::not_atom(p);
      }
      case Tok::Next:
        advance();
        return Formula::next(parse_unary());
      case Tok::Eventually:
        advance();
        return Formula::eventually(parse_unary());
      case Tok::LParen: {
        advance();
        Formula inner = parse_or();
        if (tok_.kind != Tok::RParen) throw ParseError("expected ')'", tok_.pos);
        advance();
        return inner;
      }
      case Tok::True:
        advance();
        return Formula::truth();
      case Tok::False:
        advance();
        return Formula::falsity();
      case Tok::Ident: {
        const std::size_t p = lookup(t);
        advance();
        return Formula::atom(p);
      }
      default:
        throw ParseError("expected a proposition, constant, '(' or prefix operator but found '" + t.text + "'",
                         t.pos);
    }
  }

  std::size_t lookup(const Token& t) const {
    for (std::size_t i = 0; i < ap_.size(); ++i) {
      if (ap_[i] == t.text) return i;
    }
    throw ParseError("unknown proposition '" + t.text + "'", t.pos);
  }

  std::string_view text_;
  const std::vector<std::string>& ap_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, "", 0};
};

}  // namespace

Formula parse_formula(std::string_view text, const std::vector<std::string>& ap) {
  if (ap.size() > kMaxPropositions) {
    throw InputError("at most " + std::to_string(kMaxPropositions) + " atomic propositions are supported");
  }
  for (const auto& name : ap) {
    if (name == "U" || name == "X" || name == "F" || name == "true" || name == "false") {
      throw InputError("proposition name '" + name + "' is reserved");
    }
  }
  return Parser(text, ap).parse();
}

}  // namespace robust_synth::scltl
