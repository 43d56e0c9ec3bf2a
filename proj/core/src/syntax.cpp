#include "nact/syntax.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

namespace nact {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset) {}

namespace {

enum class Tok {
  End,
  Word,    // keyword or variable
  Name,    // $name
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBar,    // {|
  RBar,    // |}
  Colon,
  Comma,
  Equals,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t offset = 0;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    Token t;
    t.offset = i;
    if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j])) != 0) ++j;
      t.kind = Tok::Word;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (c == '$') {
      std::size_t j = i + 1;
      while (j < s.size() && is_name_char(s[j])) ++j;
      if (j == i + 1) throw ParseError(i, "expected a name after '$'");
      t.kind = Tok::Name;
      t.text = std::string(s.substr(i + 1, j - i - 1));
      i = j;
    } else if (c == '{' && i + 1 < s.size() && s[i + 1] == '|') {
      t.kind = Tok::LBar;
      i += 2;
    } else if (c == '|' && i + 1 < s.size() && s[i + 1] == '}') {
      t.kind = Tok::RBar;
      i += 2;
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case ':': t.kind = Tok::Colon; break;
        case ',': t.kind = Tok::Comma; break;
        case '=': t.kind = Tok::Equals; break;
        default:
          throw ParseError(i, std::string("unexpected character '") + c + "'");
      }
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.offset = s.size();
  out.push_back(end);
  return out;
}

std::optional<VarName> as_variable(const std::string& w) {
  if (w.empty() || w[0] != 'x') return std::nullopt;
  if (w.size() == 1) return VarName{0};
  if (w[1] == '0') return std::nullopt;  // x0 is spelled x
  std::uint32_t idx = 0;
  auto [p, ec] = std::from_chars(w.data() + 1, w.data() + w.size(), idx);
  if (ec != std::errc() || p != w.data() + w.size()) return std::nullopt;
  return VarName{idx};
}

bool is_keyword(const std::string& w) {
  static const char* const kw[] = {"in",     "not",     "and",  "or",   "implies", "iff",
                                   "forall", "exists",  "set",  "slim", "fund",    "true",
                                   "false"};
  for (const char* k : kw) {
    if (w == k) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula formula() {
    const Token& t = peek();
    if (t.kind == Tok::Word && (t.text == "forall" || t.text == "exists")) return quantifier();
    return iff();
  }

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Word: {
        auto v = as_variable(t.text);
        if (!v || is_keyword(t.text)) throw ParseError(t.offset, "expected a term, found '" + t.text + "'");
        next();
        return Term::var(*v);
      }
      case Tok::LBrace:
      case Tok::LBar: {
        bool restricted = t.kind == Tok::LBar;
        next();
        VarName v = variable();
        expect(Tok::Colon, "':'");
        Formula body = formula();
        expect(restricted ? Tok::RBar : Tok::RBrace, restricted ? "'|}'" : "'}'");
        return Term::abstraction(v, std::move(body), restricted);
      }
      case Tok::Name: {
        std::string name = t.text;
        next();
        std::vector<Term> args;
        if (peek().kind == Tok::LParen) {
          next();
          args.push_back(term());
          while (peek().kind == Tok::Comma) {
            next();
            args.push_back(term());
          }
          expect(Tok::RParen, "')'");
        }
        return Term::named(std::move(name), std::move(args));
      }
      default:
        throw ParseError(t.offset, "expected a term");
    }
  }

  bool at_end() const { return peek().kind == Tok::End; }
  const Token& peek() const { return toks_[pos_]; }
  bool starts_term() const {
    const Token& t = peek();
    return t.kind == Tok::LBrace || t.kind == Tok::LBar || t.kind == Tok::Name ||
           (t.kind == Tok::Word && as_variable(t.text) && !is_keyword(t.text));
  }

  void expect_end() {
    if (!at_end()) throw ParseError(peek().offset, "unexpected trailing input");
  }

 private:
  void next() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  bool accept_word(const char* w) {
    if (peek().kind == Tok::Word && peek().text == w) {
      next();
      return true;
    }
    return false;
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(peek().offset, std::string("expected ") + what);
    next();
  }

  VarName variable() {
    const Token& t = peek();
    if (t.kind == Tok::Word) {
      if (auto v = as_variable(t.text)) {
        next();
        return *v;
      }
    }
    throw ParseError(t.offset, "expected a variable (x, x1, x2, ...)");
  }

  Formula quantifier() {
    bool universal = peek().text == "forall";
    next();
    VarName v = variable();
    expect(Tok::Colon, "':'");
    Formula body = formula();
    return universal ? Formula::forall(v, std::move(body)) : Formula::exists(v, std::move(body));
  }

  Formula iff() {
    Formula lhs = implies();
    if (accept_word("iff")) return Formula::iff(std::move(lhs), implies());
    return lhs;
  }

  Formula implies() {
    Formula lhs = disjunction();
    if (accept_word("implies")) return Formula::implies(std::move(lhs), implies());
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (accept_word("or")) acc = Formula::disj(std::move(acc), conjunction());
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (accept_word("and")) acc = Formula::conj(std::move(acc), unary());
    return acc;
  }

  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Word) {
      if (t.text == "not") {
        next();
        return Formula::negate(unary());
      }
      if (t.text == "forall" || t.text == "exists") return quantifier();
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Word) {
      if (t.text == "true") {
        next();
        return Formula::verum();
      }
      if (t.text == "false") {
        next();
        return Formula::falsum();
      }
      if (t.text == "set" || t.text == "slim" || t.text == "fund") {
        std::string w = t.text;
        next();
        expect(Tok::LParen, "'('");
        Term arg = term();
        expect(Tok::RParen, "')'");
        if (w == "set") return Formula::set(std::move(arg));
        if (w == "slim") return Formula::slim(std::move(arg));
        return Formula::fund(std::move(arg));
      }
    }
    if (!starts_term()) throw ParseError(t.offset, "expected a formula");
    Term lhs = term();
    if (accept_word("in")) return Formula::member(std::move(lhs), term());
    if (peek().kind == Tok::Equals) {
      next();
      return Formula::equal(std::move(lhs), term());
    }
    throw ParseError(peek().offset, "expected 'in' or '='");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

int level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    default: return 5;
  }
}

struct OperandRule {
  int left_min;
  int right_min;
};

OperandRule rule_for(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return {2, 2};
    case Formula::Kind::Implies: return {3, 2};
    case Formula::Kind::Or: return {3, 4};
    default: return {4, 5};  // And
  }
}

bool ends_open(const Formula& f);

bool right_wrapped(const Formula& parent) {
  return level(parent.right()) < rule_for(parent.kind()).right_min;
}

bool left_wrapped(const Formula& parent) {
  return level(parent.left()) < rule_for(parent.kind()).left_min || ends_open(parent.left());
}

bool ends_open(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      return true;
    case Formula::Kind::Not:
      return level(f.child()) == 5 && ends_open(f.child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return !right_wrapped(f) && ends_open(f.right());
    default:
      return false;
  }
}

void emit(const Formula& f, std::string& out);

void emit(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.var().display();
      return;
    case Term::Kind::Abstraction:
      out += t.restricted() ? "{|" : "{";
      out += t.var().display();
      out += ": ";
      emit(t.body(), out);
      out += t.restricted() ? "|}" : "}";
      return;
    case Term::Kind::Named:
      out += '$';
      out += t.name();
      if (!t.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          emit(t.args()[i], out);
        }
        out += ')';
      }
      return;
  }
}

void emit_wrapped(const Formula& f, bool wrap, std::string& out) {
  if (wrap) out += '(';
  emit(f, out);
  if (wrap) out += ')';
}

void emit(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Verum: out += "true"; return;
    case K::Falsum: out += "false"; return;
    case K::Member:
      emit(f.lhs(), out);
      out += " in ";
      emit(f.rhs(), out);
      return;
    case K::Equal:
      emit(f.lhs(), out);
      out += " = ";
      emit(f.rhs(), out);
      return;
    case K::Set:
    case K::Slim:
    case K::Fund:
      out += f.is(K::Set) ? "set(" : f.is(K::Slim) ? "slim(" : "fund(";
      emit(f.arg(), out);
      out += ')';
      return;
    case K::Not:
      out += "not ";
      emit_wrapped(f.child(), level(f.child()) < 5, out);
      return;
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: {
      const char* op = f.is(K::And) ? " and " : f.is(K::Or) ? " or " : f.is(K::Implies) ? " implies " : " iff ";
      emit_wrapped(f.left(), left_wrapped(f), out);
      out += op;
      emit_wrapped(f.right(), right_wrapped(f), out);
      return;
    }
    case K::ForAll:
    case K::Exists:
      out += f.is(K::ForAll) ? "forall " : "exists ";
      out += f.var().display();
      out += ": ";
      emit(f.body(), out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

std::variant<Formula, Term> parse(std::string_view text) {
  {
    Parser p(text);
    if (p.starts_term()) {
      try {
        Term t = p.term();
        if (p.at_end()) return t;
      } catch (const ParseError&) {
        // fall through to formula parsing for the authoritative error
      }
    }
  }
  return parse_formula(text);
}

std::string to_string(const Formula& f) {
  std::string out;
  emit(f, out);
  return out;
}

std::string to_string(const Term& t) {
  std::string out;
  emit(t, out);
  return out;
}

}  // namespace nact
