#include "wlp/tptp.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace wlp {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column, std::string source)
    : std::runtime_error((source.empty() ? std::string() : source + ":") + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      source_(std::move(source)) {}

std::vector<const Clause*> Problem::conjecture_clauses() const {
  std::vector<const Clause*> out;
  for (const Clause& c : clauses)
    if (c.origin == Origin::negated_conjecture) out.push_back(&c);
  return out;
}

namespace {

enum class Tok { lower, upper, dollar, number, quoted, lparen, rparen, lbrack, rbrack, comma, dot, bar, tilde, eq, neq, other, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      advance();
      return t;
    };
    if (std::islower(static_cast<unsigned char>(c))) return word(t, Tok::lower);
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') return word(t, Tok::upper);
    if (std::isdigit(static_cast<unsigned char>(c))) return word(t, Tok::number);
    if (c == '$') {
      advance();
      word(t, Tok::dollar);
      t.text.insert(t.text.begin(), '$');
      return t;
    }
    if (c == '\'' || c == '"') {
      char q = c;
      t.kind = Tok::quoted;
      t.text += c;
      advance();
      while (pos_ < text_.size() && text_[pos_] != q) {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
          t.text += text_[pos_];
          advance();
        }
        t.text += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted name", t.line, t.column, source_);
      t.text += q;
      advance();
      return t;
    }
    switch (c) {
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case '[': return single(Tok::lbrack);
      case ']': return single(Tok::rbrack);
      case ',': return single(Tok::comma);
      case '.': return single(Tok::dot);
      case '|': return single(Tok::bar);
      case '~': return single(Tok::tilde);
      case '=': return single(Tok::eq);
      case '!':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          advance();
          advance();
          t.kind = Tok::neq;
          t.text = "!=";
          return t;
        }
        break;
      default: break;
    }
    return single(Tok::other);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        advance();
        advance();
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= text_.size()) throw ParseError("unterminated comment", line_, col_, source_);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token& word(Token& t, Tok kind) {
    t.kind = kind;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      t.text += text_[pos_];
      advance();
    }
    return t;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, TermBank& bank, std::string source)
      : lex_(text, source), bank_(bank), source_(std::move(source)) {
    cur_ = lex_.next();
  }

  std::vector<Clause> parse_all() {
    std::vector<Clause> out;
    std::unordered_set<std::string> names;
    while (cur_.kind != Tok::end) {
      Token start = cur_;
      Clause c = parse_annotated();
      if (!names.insert(c.name).second)
        throw ParseError("duplicate clause name '" + c.name + "'", start.line, start.column, source_);
      c.id = out.size() + 1;
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column, source_);
  }
  [[noreturn]] void unexpected(const std::string& wanted) const {
    fail("expected " + wanted + ", found " + (cur_.kind == Tok::end ? "end of input" : "'" + cur_.text + "'"),
         cur_);
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) unexpected(what);
    cur_ = lex_.next();
  }

  Clause parse_annotated() {
    if (cur_.kind != Tok::lower || cur_.text != "cnf") unexpected("'cnf'");
    cur_ = lex_.next();
    expect(Tok::lparen, "'('");
    Clause c;
    if (cur_.kind != Tok::lower && cur_.kind != Tok::number && cur_.kind != Tok::quoted && cur_.kind != Tok::upper)
      unexpected("clause name");
    c.name = cur_.text;
    cur_ = lex_.next();
    expect(Tok::comma, "','");
    if (cur_.kind != Tok::lower) unexpected("role");
    const std::string role = cur_.text;
    if (role == "negated_conjecture") {
      c.origin = Origin::negated_conjecture;
    } else if (role == "axiom" || role == "hypothesis" || role == "plain") {
      c.origin = Origin::axiom;
    } else {
      fail("unsupported role '" + role + "'", cur_);
    }
    cur_ = lex_.next();
    expect(Tok::comma, "','");
    vars_.clear();
    parse_clause(c.literals);
    if (cur_.kind == Tok::comma) {
      cur_ = lex_.next();
      skip_annotation();
    }
    expect(Tok::rparen, "')'");
    expect(Tok::dot, "'.'");
    return c;
  }

  // Annotations are accepted and dropped.
  void skip_annotation() {
    int depth = 0;
    while (cur_.kind != Tok::end) {
      if (cur_.kind == Tok::lparen || cur_.kind == Tok::lbrack) ++depth;
      if (cur_.kind == Tok::rparen || cur_.kind == Tok::rbrack) {
        if (depth == 0) return;
        --depth;
      }
      cur_ = lex_.next();
    }
    unexpected("')'");
  }

  void parse_clause(std::vector<Literal>& lits) {
    if (cur_.kind == Tok::lparen) {
      cur_ = lex_.next();
      parse_clause(lits);
      expect(Tok::rparen, "')'");
      return;
    }
    parse_literal(lits);
    while (cur_.kind == Tok::bar) {
      cur_ = lex_.next();
      parse_literal(lits);
    }
  }

  void parse_literal(std::vector<Literal>& lits) {
    bool positive = true;
    while (cur_.kind == Tok::tilde) {
      positive = !positive;
      cur_ = lex_.next();
    }
    if (cur_.kind == Tok::dollar) {
      if (cur_.text == "$false") {
        if (!positive) fail("'~$false' is not supported", cur_);
        cur_ = lex_.next();
        return;
      }
      fail("unsupported literal '" + cur_.text + "'", cur_);
    }
    if (cur_.kind == Tok::lparen && !positive) {
      cur_ = lex_.next();
      std::vector<Literal> inner;
      parse_literal(inner);
      expect(Tok::rparen, "')'");
      for (Literal& l : inner) {
        l.positive = !l.positive;
        lits.push_back(l);
      }
      return;
    }
    Token start = cur_;
    bool starts_with_var = cur_.kind == Tok::upper;
    const Term* lhs = parse_term(/*is_atom=*/true);
    if (cur_.kind == Tok::eq || cur_.kind == Tok::neq) {
      bool eq = cur_.kind == Tok::eq;
      cur_ = lex_.next();
      const Term* rhs = parse_term(false);
      const Term* args[] = {lhs, rhs};
      lits.push_back({eq == positive, bank_.app(bank_.signature().equality(), args)});
      return;
    }
    if (starts_with_var) fail("a variable cannot be used as an atom", start);
    lits.push_back({positive, lhs});
  }

  const Term* parse_term(bool is_atom) {
    Token start = cur_;
    if (cur_.kind == Tok::upper) {
      std::string name = cur_.text;
      cur_ = lex_.next();
      auto [it, inserted] = vars_.try_emplace(name, static_cast<std::uint32_t>(vars_.size()));
      return bank_.var(it->second);
    }
    if (cur_.kind != Tok::lower && cur_.kind != Tok::number && cur_.kind != Tok::quoted)
      unexpected(is_atom ? "literal" : "term");
    std::string name = cur_.text;
    cur_ = lex_.next();
    std::vector<const Term*> args;
    if (cur_.kind == Tok::lparen) {
      cur_ = lex_.next();
      args.push_back(parse_term(false));
      while (cur_.kind == Tok::comma) {
        cur_ = lex_.next();
        args.push_back(parse_term(false));
      }
      expect(Tok::rparen, "')' or ','");
    }
    if (name == "=") fail("'=' is reserved", start);
    check_arity(name, args.size(), start);
    return bank_.app(name, args);
  }

  void check_arity(const std::string& name, std::size_t arity, const Token& at) {
    auto [it, inserted] = arities_.try_emplace(name, arity);
    if (!inserted && it->second != arity)
      fail("arity clash for symbol '" + name + "': used with arity " + std::to_string(it->second) + " and " +
               std::to_string(arity),
           at);
  }

  Lexer lex_;
  TermBank& bank_;
  std::string source_;
  Token cur_;
  std::unordered_map<std::string, std::uint32_t> vars_;
  std::unordered_map<std::string, std::size_t> arities_;
};

}  // namespace

Problem parse_cnf(std::string_view text, TermBankPtr bank, std::string name, std::string source) {
  Parser parser(text, *bank, std::move(source));
  Problem p;
  p.name = std::move(name);
  p.clauses = parser.parse_all();
  p.bank = std::move(bank);
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem parse_cnf_file(const std::filesystem::path& path, TermBankPtr bank) {
  std::string name = path.stem().string();
  if (name == "problem" || name == "proof") name = path.parent_path().filename().string();
  return parse_cnf(read_file(path), std::move(bank), name, path.string());
}

std::string role_name(Origin o) {
  switch (o) {
    case Origin::axiom: return "axiom";
    case Origin::negated_conjecture: return "negated_conjecture";
    case Origin::derived: return "plain";
  }
  return "plain";
}

std::string print_clause(const Clause& c, TermBank& bank, std::string_view annotation) {
  std::string name = c.name.empty() ? "c" + std::to_string(c.id) : c.name;
  std::string out = "cnf(" + name + ", " + role_name(c.origin) + ", " + canonical_text(c, bank);
  if (!annotation.empty()) {
    out += ", ";
    out += annotation;
  }
  out += ").";
  return out;
}

}  // namespace wlp
