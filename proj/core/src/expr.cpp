#include "kontact/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace kontact {

namespace {

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End, Bad };
  Kind kind = Kind::End;
  std::size_t offset = 0;
  std::string text;
  double value = 0.0;
  bool looks_integer = false; // digits only, no '.' or exponent
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : m_src(src) { advance(); }

  const Token& peek() const { return m_tok; }

  Token take() {
    Token t = m_tok;
    advance();
    return t;
  }

private:
  void advance() {
    while (m_pos < m_src.size() && std::isspace(static_cast<unsigned char>(m_src[m_pos]))) ++m_pos;
    m_tok = Token{};
    m_tok.offset = m_pos;
    if (m_pos >= m_src.size()) {
      m_tok.kind = Token::Kind::End;
      return;
    }
    const char c = m_src[m_pos];
    switch (c) {
      case '+': m_tok.kind = Token::Kind::Plus; ++m_pos; return;
      case '-': m_tok.kind = Token::Kind::Minus; ++m_pos; return;
      case '*': m_tok.kind = Token::Kind::Star; ++m_pos; return;
      case '/': m_tok.kind = Token::Kind::Slash; ++m_pos; return;
      case '^': m_tok.kind = Token::Kind::Caret; ++m_pos; return;
      case '(': m_tok.kind = Token::Kind::LParen; ++m_pos; return;
      case ')': m_tok.kind = Token::Kind::RParen; ++m_pos; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = m_pos;
      while (end < m_src.size() &&
             (std::isalnum(static_cast<unsigned char>(m_src[end]))))
        ++end;
      m_tok.kind = Token::Kind::Ident;
      m_tok.text = std::string(m_src.substr(m_pos, end - m_pos));
      m_pos = end;
      return;
    }
    m_tok.kind = Token::Kind::Bad;
    m_tok.text = std::string(1, c);
  }

  void lex_number() {
    const std::size_t start = m_pos;
    bool integral = true;
    while (m_pos < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[m_pos]))) ++m_pos;
    if (m_pos < m_src.size() && m_src[m_pos] == '.') {
      integral = false;
      ++m_pos;
      while (m_pos < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[m_pos]))) ++m_pos;
    }
    if (m_pos == start || (m_pos == start + 1 && m_src[start] == '.'))
      throw ParseError(start, "malformed number");
    if (m_pos < m_src.size() && (m_src[m_pos] == 'e' || m_src[m_pos] == 'E')) {
      std::size_t e = m_pos + 1;
      if (e < m_src.size() && (m_src[e] == '+' || m_src[e] == '-')) ++e;
      if (e < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[e]))) {
        integral = false;
        m_pos = e;
        while (m_pos < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[m_pos]))) ++m_pos;
      }
    }
    m_tok.kind = Token::Kind::Number;
    m_tok.text = std::string(m_src.substr(start, m_pos - start));
    m_tok.value = std::strtod(m_tok.text.c_str(), nullptr);
    m_tok.looks_integer = integral;
    m_tok.offset = start;
  }

  std::string_view m_src;
  std::size_t m_pos = 0;
  Token m_tok;
};

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
  explicit Parser(std::string_view src) : m_lex(src) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    const Token& t = m_lex.peek();
    if (t.kind != Token::Kind::End)
      throw ParseError(t.offset, "unexpected trailing input");
    return e;
  }

private:
  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      const Token& t = m_lex.peek();
      if (t.kind == Token::Kind::Plus || t.kind == Token::Kind::Minus) {
        const Token op = m_lex.take();
        ExprPtr rhs = parse_term();
        Expr e;
        e.kind = op.kind == Token::Kind::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
        e.a = lhs;
        e.b = rhs;
        e.src_offset = op.offset;
        lhs = make(std::move(e));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      const Token& t = m_lex.peek();
      if (t.kind == Token::Kind::Star || t.kind == Token::Kind::Slash) {
        const Token op = m_lex.take();
        ExprPtr rhs = parse_factor();
        Expr e;
        e.kind = op.kind == Token::Kind::Star ? Expr::Kind::Mul : Expr::Kind::Div;
        e.a = lhs;
        e.b = rhs;
        e.src_offset = op.offset;
        lhs = make(std::move(e));
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_base();
    if (m_lex.peek().kind != Token::Kind::Caret) return base;
    const Token caret = m_lex.take();
    bool negate = false;
    if (m_lex.peek().kind == Token::Kind::Minus) {
      m_lex.take();
      negate = true;
    }
    const Token& t = m_lex.peek();
    if (t.kind != Token::Kind::Number)
      throw ParseError(t.offset, "expected numeric exponent after '^'");
    const Token numtok = m_lex.take();
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.a = base;
    e.exp_value = negate ? -numtok.value : numtok.value;
    e.exp_integer = numtok.looks_integer &&
                    std::abs(numtok.value) < 9.0e15; // exactly representable range
    if (e.exp_integer) e.exp_int = static_cast<long long>(e.exp_value);
    e.src_offset = caret.offset;
    return make(std::move(e));
  }

  ExprPtr parse_base() {
    const Token& t = m_lex.peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        const Token tok = m_lex.take();
        Expr e;
        e.kind = Expr::Kind::Num;
        e.num = tok.value;
        e.src_offset = tok.offset;
        return make(std::move(e));
      }
      case Token::Kind::Minus: {
        const Token tok = m_lex.take();
        ExprPtr child = parse_base();
        Expr e;
        e.kind = Expr::Kind::Neg;
        e.a = child;
        e.src_offset = tok.offset;
        return make(std::move(e));
      }
      case Token::Kind::LParen: {
        m_lex.take();
        ExprPtr inner = parse_expr();
        const Token& close = m_lex.peek();
        if (close.kind != Token::Kind::RParen)
          throw ParseError(close.offset, "expected ')'");
        m_lex.take();
        return inner;
      }
      case Token::Kind::Ident: {
        const Token tok = m_lex.take();
        if (tok.text == "sin" || tok.text == "cos" || tok.text == "exp" || tok.text == "sqrt") {
          const Token& open = m_lex.peek();
          if (open.kind != Token::Kind::LParen)
            throw ParseError(open.offset, "expected '(' after function name");
          m_lex.take();
          ExprPtr arg = parse_expr();
          const Token& close = m_lex.peek();
          if (close.kind != Token::Kind::RParen)
            throw ParseError(close.offset, "expected ')'");
          m_lex.take();
          Expr e;
          e.kind = Expr::Kind::Fun;
          e.fn = tok.text == "sin"   ? Expr::Fn::Sin
                 : tok.text == "cos" ? Expr::Fn::Cos
                 : tok.text == "exp" ? Expr::Fn::Exp
                                     : Expr::Fn::Sqrt;
          e.a = arg;
          e.src_offset = tok.offset;
          return make(std::move(e));
        }
        if (tok.text.size() >= 2 && tok.text[0] == 'x') {
          bool digits = true;
          for (std::size_t i = 1; i < tok.text.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(tok.text[i]))) digits = false;
          if (digits) {
            const long idx = std::strtol(tok.text.c_str() + 1, nullptr, 10);
            if (idx < 1)
              throw ParseError(tok.offset, "variable indices start at x1");
            if (idx > 10000)
              throw ParseError(tok.offset, "variable index out of range");
            Expr e;
            e.kind = Expr::Kind::Var;
            e.var = static_cast<int>(idx - 1);
            e.src_offset = tok.offset;
            return make(std::move(e));
          }
        }
        throw ParseError(tok.offset, "unknown identifier '" + tok.text + "'");
      }
      case Token::Kind::End:
        throw ParseError(t.offset, "expected expression");
      case Token::Kind::Bad:
        throw ParseError(t.offset, "unexpected character '" + t.text + "'");
      default:
        throw ParseError(t.offset, "expected expression");
    }
  }

  Lexer m_lex;
};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Printing precedence levels; a child is parenthesized when its level is
// below what its position requires.
int level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

void print(const ExprPtr& e, std::ostream& os, int min_level) {
  const bool parens = level(*e) < min_level;
  if (parens) os << '(';
  switch (e->kind) {
    case Expr::Kind::Num:
      if (e->num < 0.0 || std::signbit(e->num)) {
        // negative literal: print as parenthesized unless already inside parens
        os << '(' << format_double(e->num) << ')';
      } else {
        os << format_double(e->num);
      }
      break;
    case Expr::Kind::Var:
      os << 'x' << (e->var + 1);
      break;
    case Expr::Kind::Add:
      print(e->a, os, 1);
      os << " + ";
      print(e->b, os, 2);
      break;
    case Expr::Kind::Sub:
      print(e->a, os, 1);
      os << " - ";
      print(e->b, os, 2);
      break;
    case Expr::Kind::Mul:
      print(e->a, os, 2);
      os << '*';
      print(e->b, os, 3);
      break;
    case Expr::Kind::Div:
      print(e->a, os, 2);
      os << '/';
      print(e->b, os, 3);
      break;
    case Expr::Kind::Neg:
      os << '-';
      // '-' base: the operand must itself be a base production; Pow binds
      // tighter in the grammar, so -x^2 would reparse as (-x)^2.
      print(e->a, os, 5);
      break;
    case Expr::Kind::Pow:
      print(e->a, os, 5);
      os << '^';
      if (e->exp_integer) {
        os << e->exp_int;
      } else {
        os << format_double(e->exp_value);
      }
      break;
    case Expr::Kind::Fun:
      switch (e->fn) {
        case Expr::Fn::Sin: os << "sin("; break;
        case Expr::Fn::Cos: os << "cos("; break;
        case Expr::Fn::Exp: os << "exp("; break;
        case Expr::Fn::Sqrt: os << "sqrt("; break;
      }
      print(e->a, os, 0);
      os << ')';
      break;
  }
  if (parens) os << ')';
}

} // namespace

ExprPtr parse_expression(std::string_view src) { return Parser(src).parse(); }

std::string to_string(const ExprPtr& e) {
  std::ostringstream os;
  print(e, os, 0);
  return os.str();
}

ExprPtr normalize(const ExprPtr& e) { return parse_expression(to_string(e)); }

bool structurally_equal(const ExprPtr& x, const ExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::Num:
      return x->num == y->num;
    case Expr::Kind::Var:
      return x->var == y->var;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b);
    case Expr::Kind::Neg:
      return structurally_equal(x->a, y->a);
    case Expr::Kind::Pow:
      return x->exp_integer == y->exp_integer && x->exp_value == y->exp_value &&
             structurally_equal(x->a, y->a);
    case Expr::Kind::Fun:
      return x->fn == y->fn && structurally_equal(x->a, y->a);
  }
  return false;
}

int min_dimension(const ExprPtr& e) {
  if (!e) return 0;
  int m = 0;
  if (e->kind == Expr::Kind::Var) m = e->var + 1;
  if (e->a) m = std::max(m, min_dimension(e->a));
  if (e->b) m = std::max(m, min_dimension(e->b));
  return m;
}

namespace {

[[noreturn]] void domain_fail(const ExprPtr& e, const std::string& msg) {
  throw DomainError(e->src_offset, to_string(e), msg);
}

Jet eval_node(const ExprPtr& e, const Vec& x, int order) {
  const int dim = static_cast<int>(x.size());
  switch (e->kind) {
    case Expr::Kind::Num:
      return Jet::constant(dim, order, e->num);
    case Expr::Kind::Var:
      if (e->var >= dim)
        throw Error("variable x" + std::to_string(e->var + 1) +
                    " outside chart dimension " + std::to_string(dim));
      return Jet::variable(dim, order, e->var, x[e->var]);
    case Expr::Kind::Add:
      return eval_node(e->a, x, order) + eval_node(e->b, x, order);
    case Expr::Kind::Sub:
      return eval_node(e->a, x, order) - eval_node(e->b, x, order);
    case Expr::Kind::Mul:
      return eval_node(e->a, x, order) * eval_node(e->b, x, order);
    case Expr::Kind::Div: {
      const Jet num = eval_node(e->a, x, order);
      const Jet den = eval_node(e->b, x, order);
      if (den.v == 0.0) domain_fail(e, "division by zero");
      return num / den;
    }
    case Expr::Kind::Neg:
      return -eval_node(e->a, x, order);
    case Expr::Kind::Pow: {
      const Jet base = eval_node(e->a, x, order);
      if (e->exp_integer) {
        if (e->exp_int < 0 && base.v == 0.0) domain_fail(e, "negative power of zero");
        return pow_int(base, e->exp_int);
      }
      if (base.v <= 0.0) domain_fail(e, "real power of a non-positive base");
      return pow_real(base, e->exp_value);
    }
    case Expr::Kind::Fun: {
      const Jet arg = eval_node(e->a, x, order);
      switch (e->fn) {
        case Expr::Fn::Sin: return sin(arg);
        case Expr::Fn::Cos: return cos(arg);
        case Expr::Fn::Exp: {
          const Jet r = exp(arg);
          if (!std::isfinite(r.v)) domain_fail(e, "non-finite result");
          return r;
        }
        case Expr::Fn::Sqrt:
          if (arg.v < 0.0) domain_fail(e, "sqrt of a negative value");
          if (arg.v == 0.0 && order > 0) domain_fail(e, "sqrt derivative at zero");
          return sqrt(arg);
      }
      break;
    }
  }
  throw Error("eval_jet: corrupt expression node");
}

} // namespace

Jet eval_jet(const ExprPtr& e, const Vec& x, int order) {
  if (order < 0 || order > 2) throw Error("eval_jet: order must be 0, 1 or 2");
  Jet r = eval_node(e, x, order);
  if (!std::isfinite(r.v)) throw DomainError(e->src_offset, to_string(e), "non-finite result");
  return r;
}

ExprPtr expr_num(double v) {
  Expr e;
  e.kind = Expr::Kind::Num;
  e.num = v;
  return make(std::move(e));
}

ExprPtr expr_var(int index_zero_based) {
  if (index_zero_based < 0) throw Error("expr_var: negative index");
  Expr e;
  e.kind = Expr::Kind::Var;
  e.var = index_zero_based;
  return make(std::move(e));
}

static ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(std::move(e));
}

ExprPtr expr_add(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Add, std::move(a), std::move(b)); }
ExprPtr expr_sub(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Sub, std::move(a), std::move(b)); }
ExprPtr expr_mul(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Mul, std::move(a), std::move(b)); }
ExprPtr expr_div(ExprPtr a, ExprPtr b) { return binary(Expr::Kind::Div, std::move(a), std::move(b)); }

ExprPtr expr_neg(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Neg;
  e.a = std::move(a);
  return make(std::move(e));
}

ExprPtr expr_pow_int(ExprPtr a, long long n) {
  Expr e;
  e.kind = Expr::Kind::Pow;
  e.a = std::move(a);
  e.exp_integer = true;
  e.exp_int = n;
  e.exp_value = static_cast<double>(n);
  return make(std::move(e));
}

ExprPtr expr_pow_real(ExprPtr a, double r) {
  Expr e;
  e.kind = Expr::Kind::Pow;
  e.a = std::move(a);
  e.exp_integer = false;
  e.exp_value = r;
  return make(std::move(e));
}

ExprPtr expr_fun(Expr::Fn fn, ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Fun;
  e.fn = fn;
  e.a = std::move(a);
  return make(std::move(e));
}

} // namespace kontact
