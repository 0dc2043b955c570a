// Line-oriented input language: declarations build up fields, rings, maps
// and finite-dimensional data; commands query them. `#` starts a comment.
// The expression sub-grammar has precedence ^ > unary - > * and / > + and -.

#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace relsmooth::dsl {

struct SrcLoc {
  int line = 0;
  int col = 0;
};

struct ParseError : std::runtime_error {
  SrcLoc loc;
  ParseError(const std::string& msg, SrcLoc l)
      : std::runtime_error(msg + " (line " + std::to_string(l.line) +
                           ", column " + std::to_string(l.col) + ")"),
        loc(l) {}
};

// ---------------------------------------------------------------------------
// Expressions.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { num, var, neg, add, sub, mul, div, pow };
  Kind kind;
  std::string text;  // digits for num, name for var
  ExprPtr a, b;
  unsigned long exp = 0;  // pow exponent
};

inline ExprPtr mk_num(std::string digits) {
  return std::make_shared<Expr>(Expr{Expr::Kind::num, std::move(digits),
                                     nullptr, nullptr, 0});
}
inline ExprPtr mk_var(std::string name) {
  return std::make_shared<Expr>(Expr{Expr::Kind::var, std::move(name),
                                     nullptr, nullptr, 0});
}
inline ExprPtr mk_neg(ExprPtr a) {
  return std::make_shared<Expr>(Expr{Expr::Kind::neg, {}, std::move(a),
                                     nullptr, 0});
}
inline ExprPtr mk_bin(Expr::Kind k, ExprPtr a, ExprPtr b) {
  return std::make_shared<Expr>(Expr{k, {}, std::move(a), std::move(b), 0});
}
inline ExprPtr mk_pow(ExprPtr a, unsigned long e) {
  return std::make_shared<Expr>(Expr{Expr::Kind::pow, {}, std::move(a),
                                     nullptr, e});
}

inline bool expr_eq(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind || x->text != y->text || x->exp != y->exp)
    return false;
  return expr_eq(x->a, y->a) && expr_eq(x->b, y->b);
}

inline int expr_level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::num:
    case Expr::Kind::var:
      return 5;
    case Expr::Kind::pow:
      return 4;
    case Expr::Kind::neg:
      return 3;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    default:
      return 1;
  }
}

inline std::string expr_str(const ExprPtr& e);

namespace detail {
inline std::string paren(const ExprPtr& e, int min_level) {
  std::string s = expr_str(e);
  if (expr_level(*e) < min_level) return "(" + s + ")";
  return s;
}
}  // namespace detail

inline std::string expr_str(const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::num:
    case K::var:
      return e->text;
    case K::neg:
      return "-" + detail::paren(e->a, 3);
    case K::pow:
      return detail::paren(e->a, 5) + "^" + std::to_string(e->exp);
    case K::mul:
      return detail::paren(e->a, 2) + "*" + detail::paren(e->b, 3);
    case K::div:
      return detail::paren(e->a, 2) + "/" + detail::paren(e->b, 3);
    case K::add:
      return detail::paren(e->a, 1) + " + " + detail::paren(e->b, 2);
    default:
      return detail::paren(e->a, 1) + " - " + detail::paren(e->b, 2);
  }
}

// ---------------------------------------------------------------------------
// Statements.

enum class StmtKind {
  field_decl,
  ring_decl,
  product_decl,
  map_decl,
  fd_decl,
  subalgebra_decl,
  module_decl,
  assume_flat,
  reldim,
  check_smooth,
  relgldim,
  fibergldim,
  tensorcheck,
  relpd,
  cdim,
  relhh,
  gb,
  nf,
  dim
};

struct MapImage {
  std::string var;
  std::vector<ExprPtr> rhs;
  bool bracketed = false;  // `t -> [t, x]` vs `t -> t`

  bool operator==(const MapImage& o) const {
    if (var != o.var || bracketed != o.bracketed ||
        rhs.size() != o.rhs.size())
      return false;
    for (size_t i = 0; i < rhs.size(); ++i)
      if (!expr_eq(rhs[i], o.rhs[i])) return false;
    return true;
  }
};

struct Statement {
  StmtKind kind;
  SrcLoc loc;
  std::string name;  // declared name, or the primary target of a command
  std::string a, b;  // auxiliary references (field / source / destination)
  std::vector<std::string> vars;  // ring variables or product factors
  std::vector<ExprPtr> exprs;     // relations / generators / point / operand
  std::vector<MapImage> images;
  long num = 0;          // reldim value, relhh degree
  size_t comp = 0;       // reldim component
  unsigned long prime = 0;  // GF(p)

  // source locations are not part of the AST identity
  bool operator==(const Statement& o) const {
    if (kind != o.kind || name != o.name || a != o.a || b != o.b ||
        vars != o.vars || num != o.num || comp != o.comp || prime != o.prime)
      return false;
    if (exprs.size() != o.exprs.size() || images.size() != o.images.size())
      return false;
    for (size_t i = 0; i < exprs.size(); ++i)
      if (!expr_eq(exprs[i], o.exprs[i])) return false;
    for (size_t i = 0; i < images.size(); ++i)
      if (!(images[i] == o.images[i])) return false;
    return true;
  }
};

struct Script {
  std::vector<Statement> stmts;
  bool operator==(const Script& o) const { return stmts == o.stmts; }
};

// ---------------------------------------------------------------------------
// Lexer (per line).

namespace detail {

inline unsigned long to_ulong(const std::string& s, SrcLoc at) {
  try {
    return std::stoul(s);
  } catch (...) {
    throw ParseError("number out of range", at);
  }
}

struct Token {
  enum class Kind { ident, integer, sym, end };
  Kind kind = Kind::end;
  std::string text;
  int col = 0;
};

inline std::vector<Token> lex_line(const std::string& line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) ||
              line[j] == '_' || line[j] == '\''))
        ++j;
      out.push_back({Token::Kind::ident, line.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < line.size() &&
             std::isdigit(static_cast<unsigned char>(line[j])))
        ++j;
      out.push_back({Token::Kind::integer, line.substr(i, j - i), col});
      i = j;
    } else if (ch == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Token::Kind::sym, "->", col});
      i += 2;
    } else if (std::string("=[](){},/*+-^:").find(ch) != std::string::npos) {
      out.push_back({Token::Kind::sym, std::string(1, ch), col});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, ch) + "'",
                       {lineno, col});
    }
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int lineno)
      : toks_(std::move(toks)), line_(lineno) {}

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    static Token end{Token::Kind::end, "", 0};
    return at_end() ? end : toks_[pos_];
  }
  SrcLoc loc() const {
    return {line_, at_end() ? (toks_.empty() ? 1 : toks_.back().col + 1)
                            : toks_[pos_].col};
  }

  bool accept_sym(const std::string& s) {
    if (peek().kind == Token::Kind::sym && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_sym(const std::string& s) {
    if (!accept_sym(s)) throw ParseError("expected '" + s + "'", loc());
  }
  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::ident)
      throw ParseError("expected " + what, loc());
    return toks_[pos_++].text;
  }
  std::string expect_int(const std::string& what) {
    if (peek().kind != Token::Kind::integer)
      throw ParseError("expected " + what, loc());
    return toks_[pos_++].text;
  }
  bool accept_keyword(const std::string& kw) {
    if (peek().kind == Token::Kind::ident && peek().text == kw) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_keyword(const std::string& kw) {
    if (!accept_keyword(kw))
      throw ParseError("expected '" + kw + "'", loc());
  }
  void expect_end() {
    if (!at_end())
      throw ParseError("unexpected token '" + peek().text + "'", loc());
  }

  // expression grammar
  ExprPtr parse_expr() { return parse_sum(); }

 private:
  ExprPtr parse_sum() {
    ExprPtr e = parse_prod();
    while (true) {
      if (accept_sym("+"))
        e = mk_bin(Expr::Kind::add, e, parse_prod());
      else if (accept_sym("-"))
        e = mk_bin(Expr::Kind::sub, e, parse_prod());
      else
        return e;
    }
  }
  ExprPtr parse_prod() {
    ExprPtr e = parse_unary();
    while (true) {
      if (accept_sym("*"))
        e = mk_bin(Expr::Kind::mul, e, parse_unary());
      else if (accept_sym("/"))
        e = mk_bin(Expr::Kind::div, e, parse_unary());
      else
        return e;
    }
  }
  ExprPtr parse_unary() {
    if (accept_sym("-")) return mk_neg(parse_unary());
    return parse_pow();
  }
  ExprPtr parse_pow() {
    ExprPtr e = parse_atom();
    if (accept_sym("^")) {
      SrcLoc at = loc();
      std::string n = expect_int("nonnegative integer exponent");
      return mk_pow(e, to_ulong(n, at));
    }
    return e;
  }
  ExprPtr parse_atom() {
    if (peek().kind == Token::Kind::integer) return mk_num(toks_[pos_++].text);
    if (peek().kind == Token::Kind::ident) return mk_var(toks_[pos_++].text);
    if (accept_sym("(")) {
      ExprPtr e = parse_sum();
      expect_sym(")");
      return e;
    }
    throw ParseError("expected a number, variable, or '('", loc());
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  int line_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Parser.

class Parser {
 public:
  Script parse(const std::string& text) {
    Script script;
    int lineno = 0;
    size_t start = 0;
    while (start <= text.size()) {
      size_t nl = text.find('\n', start);
      std::string line = text.substr(
          start, nl == std::string::npos ? std::string::npos : nl - start);
      ++lineno;
      parse_line(line, lineno, script);
      if (nl == std::string::npos) break;
      start = nl + 1;
    }
    return script;
  }

 private:
  using LP = detail::LineParser;

  void parse_line(const std::string& line, int lineno, Script& script) {
    LP p(detail::lex_line(line, lineno), lineno);
    if (p.at_end()) return;
    SrcLoc at = p.loc();
    std::string kw = p.expect_ident("a statement keyword");

    Statement st;
    st.loc = at;
    if (kw == "field")
      parse_field(p, st);
    else if (kw == "ring")
      parse_ring(p, st);
    else if (kw == "product")
      parse_product(p, st);
    else if (kw == "map")
      parse_map(p, st);
    else if (kw == "fd")
      parse_fd(p, st);
    else if (kw == "subalgebra")
      parse_subalgebra(p, st);
    else if (kw == "module")
      parse_module(p, st);
    else if (kw == "assume")
      parse_assume(p, st);
    else if (kw == "reldim")
      parse_reldim(p, st);
    else if (kw == "check")
      parse_check(p, st);
    else if (kw == "compute")
      parse_compute(p, st);
    else
      throw ParseError("unknown statement '" + kw + "'", at);
    p.expect_end();
    script.stmts.push_back(std::move(st));
  }

  void declare(std::set<std::string>& names, const std::string& n,
               const std::string& kind, SrcLoc at) {
    if (!names.insert(n).second)
      throw ParseError("duplicate " + kind + " name '" + n + "'", at);
  }
  void resolve(const std::set<std::string>& names, const std::string& n,
               const std::string& kind, SrcLoc at) {
    if (!names.count(n))
      throw ParseError("undefined " + kind + " '" + n + "'", at);
  }

  void parse_field(LP& p, Statement& st) {
    st.kind = StmtKind::field_decl;
    st.name = p.expect_ident("a field name");
    declare(fields_, st.name, "field", st.loc);
    p.expect_sym("=");
    std::string which = p.expect_ident("'Q' or 'GF'");
    if (which == "Q") {
      st.prime = 0;
    } else if (which == "GF") {
      p.expect_sym("(");
      st.prime = detail::to_ulong(p.expect_int("a prime"), st.loc);
      p.expect_sym(")");
    } else {
      throw ParseError("expected 'Q' or 'GF'", st.loc);
    }
  }

  void parse_ring(LP& p, Statement& st) {
    st.kind = StmtKind::ring_decl;
    st.name = p.expect_ident("a ring name");
    declare(rings_, st.name, "ring", st.loc);
    p.expect_sym("=");
    st.a = p.expect_ident("a field name");
    if (st.a != "Q") resolve(fields_, st.a, "field", st.loc);
    p.expect_sym("[");
    if (!p.accept_sym("]")) {
      while (true) {
        st.vars.push_back(p.expect_ident("a variable name"));
        if (p.accept_sym("]")) break;
        p.expect_sym(",");
      }
    }
    if (p.accept_sym("/")) {
      p.expect_sym("(");
      if (!p.accept_sym(")")) {
        while (true) {
          st.exprs.push_back(p.parse_expr());
          if (p.accept_sym(")")) break;
          p.expect_sym(",");
        }
      }
    }
  }

  void parse_product(LP& p, Statement& st) {
    st.kind = StmtKind::product_decl;
    st.name = p.expect_ident("a product name");
    p.expect_sym("=");
    st.vars.push_back(p.expect_ident("a ring name"));
    resolve(rings_, st.vars.back(), "ring", st.loc);
    p.expect_sym("*");
    while (true) {
      st.vars.push_back(p.expect_ident("a ring name"));
      resolve(rings_, st.vars.back(), "ring", st.loc);
      if (!p.accept_sym("*")) break;
    }
    declare(rings_, st.name, "ring", st.loc);
  }

  void parse_map(LP& p, Statement& st) {
    st.kind = StmtKind::map_decl;
    st.name = p.expect_ident("a map name");
    declare(maps_, st.name, "map", st.loc);
    p.expect_sym(":");
    st.a = p.expect_ident("the source ring");
    resolve(rings_, st.a, "ring", st.loc);
    p.expect_sym("->");
    st.b = p.expect_ident("the destination ring");
    resolve(rings_, st.b, "ring", st.loc);
    p.expect_sym("{");
    if (!p.accept_sym("}")) {
      while (true) {
        MapImage img;
        img.var = p.expect_ident("a source variable");
        p.expect_sym("->");
        if (p.accept_sym("[")) {
          img.bracketed = true;
          if (!p.accept_sym("]")) {
            while (true) {
              img.rhs.push_back(p.parse_expr());
              if (p.accept_sym("]")) break;
              p.expect_sym(",");
            }
          }
        } else {
          img.rhs.push_back(p.parse_expr());
        }
        st.images.push_back(std::move(img));
        if (p.accept_sym("}")) break;
        p.expect_sym(",");
      }
    }
  }

  void parse_fd(LP& p, Statement& st) {
    st.kind = StmtKind::fd_decl;
    st.name = p.expect_ident("an fd name");
    declare(fds_, st.name, "fd algebra", st.loc);
    p.expect_sym("=");
    st.a = p.expect_ident("a ring name");
    resolve(rings_, st.a, "ring", st.loc);
  }

  void parse_subalgebra(LP& p, Statement& st) {
    st.kind = StmtKind::subalgebra_decl;
    st.name = p.expect_ident("a subalgebra name");
    declare(subs_, st.name, "subalgebra", st.loc);
    p.expect_sym("=");
    st.a = p.expect_ident("an fd name");
    resolve(fds_, st.a, "fd algebra", st.loc);
    p.expect_sym("{");
    if (!p.accept_sym("}")) {
      while (true) {
        st.exprs.push_back(p.parse_expr());
        if (p.accept_sym("}")) break;
        p.expect_sym(",");
      }
    }
  }

  void parse_module(LP& p, Statement& st) {
    st.kind = StmtKind::module_decl;
    st.name = p.expect_ident("a module name");
    declare(mods_, st.name, "module", st.loc);
    p.expect_sym("=");
    st.a = p.expect_ident("an fd name");
    resolve(fds_, st.a, "fd algebra", st.loc);
    if (p.accept_sym("/")) {
      p.expect_sym("(");
      if (!p.accept_sym(")")) {
        while (true) {
          st.exprs.push_back(p.parse_expr());
          if (p.accept_sym(")")) break;
          p.expect_sym(",");
        }
      }
    }
  }

  void parse_assume(LP& p, Statement& st) {
    st.kind = StmtKind::assume_flat;
    p.expect_keyword("flat");
    st.name = p.expect_ident("a map name");
    resolve(maps_, st.name, "map", st.loc);
  }

  void parse_reldim(LP& p, Statement& st) {
    st.kind = StmtKind::reldim;
    st.name = p.expect_ident("a map name");
    resolve(maps_, st.name, "map", st.loc);
    st.comp = detail::to_ulong(p.expect_int("a component index"), st.loc);
    p.expect_sym("=");
    bool negative = p.accept_sym("-");
    st.num = static_cast<long>(detail::to_ulong(p.expect_int("an integer"), st.loc));
    if (negative) st.num = -st.num;
  }

  void parse_check(LP& p, Statement& st) {
    st.kind = StmtKind::check_smooth;
    p.expect_keyword("smooth");
    st.name = p.expect_ident("a map name");
    resolve(maps_, st.name, "map", st.loc);
  }

  void parse_compute(LP& p, Statement& st) {
    std::string what = p.expect_ident("a command");
    if (what == "relgldim") {
      st.kind = StmtKind::relgldim;
      st.name = p.expect_ident("a map name");
      resolve(maps_, st.name, "map", st.loc);
    } else if (what == "fibergldim") {
      st.kind = StmtKind::fibergldim;
      st.name = p.expect_ident("a map name");
      resolve(maps_, st.name, "map", st.loc);
      p.expect_keyword("at");
      p.expect_sym("(");
      if (!p.accept_sym(")")) {
        while (true) {
          st.exprs.push_back(p.parse_expr());
          if (p.accept_sym(")")) break;
          p.expect_sym(",");
        }
      }
    } else if (what == "tensorcheck") {
      st.kind = StmtKind::tensorcheck;
      st.name = p.expect_ident("a map name");
      resolve(maps_, st.name, "map", st.loc);
      st.a = p.expect_ident("a map name");
      resolve(maps_, st.a, "map", st.loc);
    } else if (what == "relpd") {
      st.kind = StmtKind::relpd;
      st.name = p.expect_ident("a module name");
      resolve(mods_, st.name, "module", st.loc);
      st.a = p.expect_ident("a subalgebra name");
      resolve(subs_, st.a, "subalgebra", st.loc);
    } else if (what == "cdim") {
      st.kind = StmtKind::cdim;
      st.name = p.expect_ident("an fd name");
      resolve(fds_, st.name, "fd algebra", st.loc);
      st.a = p.expect_ident("a subalgebra name");
      resolve(subs_, st.a, "subalgebra", st.loc);
    } else if (what == "relhh") {
      st.kind = StmtKind::relhh;
      st.name = p.expect_ident("an fd name");
      resolve(fds_, st.name, "fd algebra", st.loc);
      st.a = p.expect_ident("a subalgebra name");
      resolve(subs_, st.a, "subalgebra", st.loc);
      st.num = static_cast<long>(detail::to_ulong(p.expect_int("a maximum degree"), st.loc));
    } else if (what == "gb") {
      st.kind = StmtKind::gb;
      st.name = p.expect_ident("a ring name");
      resolve(rings_, st.name, "ring", st.loc);
    } else if (what == "nf") {
      st.kind = StmtKind::nf;
      st.name = p.expect_ident("a ring name");
      resolve(rings_, st.name, "ring", st.loc);
      st.exprs.push_back(p.parse_expr());
    } else if (what == "dim") {
      st.kind = StmtKind::dim;
      st.name = p.expect_ident("a ring name");
      resolve(rings_, st.name, "ring", st.loc);
    } else {
      throw ParseError("unknown command '" + what + "'", st.loc);
    }
  }

  std::set<std::string> fields_, rings_, maps_, fds_, subs_, mods_;
};

inline Script parse(const std::string& text) { return Parser().parse(text); }

// ---------------------------------------------------------------------------
// Pretty-printer. parse(pretty(parse(text))) == parse(text).

inline std::string pretty(const Statement& st) {
  auto join_exprs = [](const std::vector<ExprPtr>& es) {
    std::string s;
    for (size_t i = 0; i < es.size(); ++i) {
      if (i) s += ", ";
      s += expr_str(es[i]);
    }
    return s;
  };

  switch (st.kind) {
    case StmtKind::field_decl:
      return "field " + st.name + " = " +
             (st.prime == 0 ? "Q" : "GF(" + std::to_string(st.prime) + ")");
    case StmtKind::ring_decl: {
      std::string s = "ring " + st.name + " = " + st.a + "[";
      for (size_t i = 0; i < st.vars.size(); ++i) {
        if (i) s += ",";
        s += st.vars[i];
      }
      s += "]";
      if (!st.exprs.empty()) s += " / (" + join_exprs(st.exprs) + ")";
      return s;
    }
    case StmtKind::product_decl: {
      std::string s = "product " + st.name + " = ";
      for (size_t i = 0; i < st.vars.size(); ++i) {
        if (i) s += " * ";
        s += st.vars[i];
      }
      return s;
    }
    case StmtKind::map_decl: {
      std::string s = "map " + st.name + " : " + st.a + " -> " + st.b + " { ";
      for (size_t i = 0; i < st.images.size(); ++i) {
        if (i) s += ", ";
        const MapImage& img = st.images[i];
        s += img.var + " -> ";
        if (img.bracketed) {
          s += "[" + join_exprs(img.rhs) + "]";
        } else {
          s += expr_str(img.rhs[0]);
        }
      }
      s += st.images.empty() ? "}" : " }";
      return s;
    }
    case StmtKind::fd_decl:
      return "fd " + st.name + " = " + st.a;
    case StmtKind::subalgebra_decl:
      return "subalgebra " + st.name + " = " + st.a +
             (st.exprs.empty() ? " { }" : " { " + join_exprs(st.exprs) + " }");
    case StmtKind::module_decl:
      return "module " + st.name + " = " + st.a +
             (st.exprs.empty() ? "" : " / (" + join_exprs(st.exprs) + ")");
    case StmtKind::assume_flat:
      return "assume flat " + st.name;
    case StmtKind::reldim:
      return "reldim " + st.name + " " + std::to_string(st.comp) + " = " +
             std::to_string(st.num);
    case StmtKind::check_smooth:
      return "check smooth " + st.name;
    case StmtKind::relgldim:
      return "compute relgldim " + st.name;
    case StmtKind::fibergldim:
      return "compute fibergldim " + st.name + " at (" +
             join_exprs(st.exprs) + ")";
    case StmtKind::tensorcheck:
      return "compute tensorcheck " + st.name + " " + st.a;
    case StmtKind::relpd:
      return "compute relpd " + st.name + " " + st.a;
    case StmtKind::cdim:
      return "compute cdim " + st.name + " " + st.a;
    case StmtKind::relhh:
      return "compute relhh " + st.name + " " + st.a + " " +
             std::to_string(st.num);
    case StmtKind::gb:
      return "compute gb " + st.name;
    case StmtKind::nf:
      return "compute nf " + st.name + " " + expr_str(st.exprs[0]);
    default:
      return "compute dim " + st.name;
  }
}

inline std::string pretty(const Script& s) {
  std::string out;
  for (const auto& st : s.stmts) out += pretty(st) + "\n";
  return out;
}

}  // namespace relsmooth::dsl
