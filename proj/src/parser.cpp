#include "shtrim/parser.hpp"

#include <cctype>
#include <map>

namespace shtrim {

namespace {

struct Token {
  enum class Kind {
    atom, variable, integer,
    lparen, rparen, lbracket, rbracket,
    comma, bar, dot, eq, neck,  // ':-'
    end
  };
  Kind kind;
  std::string text;
  int64_t value = 0;
  SourcePos pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_layout();
    Token t;
    t.pos = pos();
    if (i_ >= src_.size()) {
      t.kind = Token::Kind::end;
      return t;
    }
    char c = src_[i_];
    if (c == '(') { advance(); t.kind = Token::Kind::lparen; return t; }
    if (c == ')') { advance(); t.kind = Token::Kind::rparen; return t; }
    if (c == '[') { advance(); t.kind = Token::Kind::lbracket; return t; }
    if (c == ']') { advance(); t.kind = Token::Kind::rbracket; return t; }
    if (c == ',') { advance(); t.kind = Token::Kind::comma; return t; }
    if (c == '|') { advance(); t.kind = Token::Kind::bar; return t; }
    if (c == '=') { advance(); t.kind = Token::Kind::eq; return t; }
    if (c == ':') {
      advance();
      if (i_ < src_.size() && src_[i_] == '-') {
        advance();
        t.kind = Token::Kind::neck;
        return t;
      }
      throw parse_error(t.pos, "expected ':-'");
    }
    if (c == '.') {
      // A '.' only ends a clause; the list constructor is written with
      // bracket sugar in this subset.
      advance();
      t.kind = Token::Kind::dot;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
      size_t start = i_;
      if (c == '-') advance();
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
      t.kind = Token::Kind::integer;
      t.text = src_.substr(start, i_ - start);
      t.value = std::stoll(t.text);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
        advance();
      t.text = src_.substr(start, i_ - start);
      t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_')
                   ? Token::Kind::variable
                   : Token::Kind::atom;
      return t;
    }
    throw parse_error(t.pos, std::string("unexpected character '") + c + "'");
  }

private:
  void skip_layout() {
    for (;;) {
      while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) advance();
      if (i_ < src_.size() && src_[i_] == '%') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
        continue;
      }
      break;
    }
  }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  SourcePos pos() const { return SourcePos{line_, col_}; }

  const std::string& src_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) { shift(); }

  Program parse() {
    Program prog;
    while (cur_.kind != Token::Kind::end) {
      parse_sentence(prog);
    }
    return prog;
  }

private:
  void shift() { cur_ = lex_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) throw parse_error(cur_.pos, std::string("expected ") + what);
    shift();
  }

  void parse_sentence(Program& prog) {
    if (cur_.kind == Token::Kind::neck) {
      shift();
      parse_directive(prog);
      return;
    }
    vars_.clear();
    names_.clear();
    Clause c;
    Term head = parse_term();
    if (!head.is_callable())
      throw parse_error(cur_.pos, "clause head must be an atom or structure");
    c.head = std::move(head);
    if (cur_.kind == Token::Kind::neck) {
      shift();
      int pos = 1;
      c.body.push_back(parse_literal(pos++));
      while (cur_.kind == Token::Kind::comma) {
        shift();
        c.body.push_back(parse_literal(pos++));
      }
    }
    expect(Token::Kind::dot, "'.'");
    c.var_names = names_;
    PredKey key = pred_key_of(c.head);
    if (prog.predicates.find(key) == prog.predicates.end()) prog.order.push_back(key);
    prog.predicates[key].push_back(std::move(c));
  }

  void parse_directive(Program& prog) {
    SourcePos at = cur_.pos;
    if (cur_.kind != Token::Kind::atom || cur_.text != "entry")
      throw parse_error(at, "only ':- entry Goal.' directives are supported");
    shift();
    vars_.clear();
    names_.clear();
    Entry e;
    Term goal = parse_term();
    if (!goal.is_callable()) throw parse_error(at, "entry goal must be an atom or structure");
    e.goal = std::move(goal);
    if (cur_.kind == Token::Kind::atom && cur_.text == "sharing") {
      shift();
      e.sharing = parse_sharing_spec();
    }
    expect(Token::Kind::dot, "'.'");
    e.var_names = names_;
    prog.entries.push_back(std::move(e));
  }

  std::vector<std::vector<std::string>> parse_sharing_spec() {
    std::vector<std::vector<std::string>> groups;
    expect(Token::Kind::lbracket, "'['");
    if (cur_.kind != Token::Kind::rbracket) {
      groups.push_back(parse_name_group());
      while (cur_.kind == Token::Kind::comma) {
        shift();
        groups.push_back(parse_name_group());
      }
    }
    expect(Token::Kind::rbracket, "']'");
    return groups;
  }

  std::vector<std::string> parse_name_group() {
    std::vector<std::string> names;
    expect(Token::Kind::lbracket, "'['");
    if (cur_.kind != Token::Kind::rbracket) {
      names.push_back(parse_var_name());
      while (cur_.kind == Token::Kind::comma) {
        shift();
        names.push_back(parse_var_name());
      }
    }
    expect(Token::Kind::rbracket, "']'");
    return names;
  }

  std::string parse_var_name() {
    if (cur_.kind != Token::Kind::variable)
      throw parse_error(cur_.pos, "expected a variable name");
    std::string n = cur_.text;
    shift();
    return n;
  }

  Literal parse_literal(int pos) {
    Term lhs = parse_term();
    if (cur_.kind == Token::Kind::eq) {
      shift();
      Term rhs = parse_term();
      return Literal::make_unify(std::move(lhs), std::move(rhs), pos);
    }
    if (!lhs.is_callable())
      throw parse_error(cur_.pos, "body literal must be a call or a unification");
    return Literal::make_call(std::move(lhs), pos);
  }

  Term parse_term() {
    switch (cur_.kind) {
      case Token::Kind::variable: {
        Term t = Term::make_var(var_id(cur_.text));
        shift();
        return t;
      }
      case Token::Kind::integer: {
        Term t = Term::make_int(cur_.value);
        shift();
        return t;
      }
      case Token::Kind::atom: {
        std::string name = cur_.text;
        shift();
        if (cur_.kind == Token::Kind::lparen) {
          shift();
          std::vector<Term> args;
          args.push_back(parse_term());
          while (cur_.kind == Token::Kind::comma) {
            shift();
            args.push_back(parse_term());
          }
          expect(Token::Kind::rparen, "')'");
          return Term::make_struct(std::move(name), std::move(args));
        }
        return Term::make_atom(std::move(name));
      }
      case Token::Kind::lbracket: return parse_list();
      default:
        throw parse_error(cur_.pos, "expected a term");
    }
  }

  Term parse_list() {
    expect(Token::Kind::lbracket, "'['");
    if (cur_.kind == Token::Kind::rbracket) {
      shift();
      return Term::make_atom("[]");
    }
    std::vector<Term> items;
    items.push_back(parse_term());
    while (cur_.kind == Token::Kind::comma) {
      shift();
      items.push_back(parse_term());
    }
    Term tail = Term::make_atom("[]");
    if (cur_.kind == Token::Kind::bar) {
      shift();
      tail = parse_term();
    }
    expect(Token::Kind::rbracket, "']'");
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
      std::vector<Term> cell;
      cell.push_back(std::move(*it));
      cell.push_back(std::move(tail));
      tail = Term::make_struct(".", std::move(cell));
    }
    return tail;
  }

  VarId var_id(const std::string& name) {
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    VarId id = static_cast<VarId>(names_.size());
    vars_.emplace(name, id);
    names_.push_back(name);
    return id;
  }

  Lexer lex_;
  Token cur_;
  std::map<std::string, VarId> vars_;
  std::vector<std::string> names_;
};

}  // namespace

Program parse_program(const std::string& source) {
  Parser p(source);
  return p.parse();
}

}  // namespace shtrim
