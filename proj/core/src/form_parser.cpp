#include "rumin/form_parser.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <regex>

#include "rumin/errors.hpp"

namespace rumin {

namespace {

struct Token {
  enum class Type { Number, Name, Op, End };
  Type type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t j = 0; j < count; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int tl = line, tc = col;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      out.push_back({Token::Type::Number, std::string(s.substr(i, j - i)), tl, tc});
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Type::Name, std::string(s.substr(i, j - i)), tl, tc});
      advance(j - i);
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::Op, std::string(1, c), tl, tc});
      advance(1);
    } else {
      throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Type::End, "", line, col});
  return out;
}

Rational decimal(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(mpz_class(text, 10));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty()) digits = "0";
  mpz_class den = 1;
  for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
  Rational r(mpz_class(digits, 10), den);
  r.canonicalize();
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  FormExpr parse() {
    FormExpr e = sum();
    if (peek().type != Token::Type::End) fail(peek(), "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool is_op(const char* op) const { return peek().type == Token::Type::Op && peek().text == op; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

  static FormExpr node(FormExpr::Kind kind, const Token& at, std::vector<FormExpr> args) {
    FormExpr e;
    e.kind = kind;
    e.args = std::move(args);
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  FormExpr sum() {
    FormExpr lhs = wedge();
    while (is_op("+") || is_op("-")) {
      const Token& op = take();
      FormExpr rhs = wedge();
      lhs = node(op.text == "+" ? FormExpr::Kind::Add : FormExpr::Kind::Sub, op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  FormExpr wedge() {
    FormExpr lhs = product();
    while (is_op("^")) {
      const Token& op = take();
      FormExpr rhs = product();
      lhs = node(FormExpr::Kind::Wedge, op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  FormExpr product() {
    FormExpr lhs = unary();
    while (is_op("*") || is_op("/")) {
      const Token& op = take();
      FormExpr rhs = unary();
      lhs = node(op.text == "*" ? FormExpr::Kind::Mul : FormExpr::Kind::Div, op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  FormExpr unary() {
    if (is_op("-")) {
      const Token& op = take();
      return node(FormExpr::Kind::Negate, op, {unary()});
    }
    if (is_op("+")) {
      take();
      return unary();
    }
    return primary();
  }

  FormExpr primary() {
    const Token& t = take();
    switch (t.type) {
      case Token::Type::Number: {
        FormExpr e = node(FormExpr::Kind::Number, t, {});
        e.value = decimal(t.text);
        return e;
      }
      case Token::Type::Name: {
        if (t.text == "sqrt") {
          expect("(");
          FormExpr arg = sum();
          expect(")");
          return node(FormExpr::Kind::Sqrt, t, {std::move(arg)});
        }
        FormExpr e = node(FormExpr::Kind::Name, t, {});
        e.name = t.text;
        return e;
      }
      case Token::Type::Op:
        if (t.text == "(") {
          FormExpr e = sum();
          expect(")");
          return e;
        }
        fail(t, "unexpected '" + t.text + "'");
      case Token::Type::End:
        fail(t, "unexpected end of input");
    }
    fail(t, "unexpected token");
  }

  void expect(const char* op) {
    if (!is_op(op)) fail(peek(), std::string("expected '") + op + "'" +
                                     (peek().type == Token::Type::End ? " before end of input" : " near '" + peek().text + "'"));
    take();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail_at(const FormExpr& e, const std::string& msg) { throw ParseError(e.line, e.column, msg); }

PolyForm name_value(const FormExpr& e, const HeisParams& h) {
  const int n = h.n(), dim = h.dim();
  if (e.name == "t") return PolyForm::function(h, Poly::variable(dim, 2 * n));
  if (e.name == "theta") return PolyForm::theta(h);
  static const std::regex indexed("(dx|dy|x|y)([1-9][0-9]*)");
  std::smatch m;
  if (std::regex_match(e.name, m, indexed)) {
    const int j = std::stoi(m[2].str());
    if (j <= n) {
      const std::string head = m[1].str();
      if (head == "x") return PolyForm::function(h, Poly::variable(dim, j - 1));
      if (head == "y") return PolyForm::function(h, Poly::variable(dim, n + j - 1));
      if (head == "dx") return PolyForm::coframe(h, j);
      return PolyForm::coframe(h, n + j);
    }
  }
  fail_at(e, "unknown identifier '" + e.name + "' (n = " + std::to_string(n) + ")");
}

std::optional<Rational> constant_of(const PolyForm& w) {
  if (w.grade() != 0) return std::nullopt;
  const Poly& c = w.coefficient(Blade());
  if (!c.is_constant()) return std::nullopt;
  return c.constant();
}

Rational exact_sqrt_or_binary(const Rational& q) {
  mpz_class a, b;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    Rational r(a, b);
    r.canonicalize();
    return r;
  }
  return exact_from_double(std::sqrt(to_double(q)));
}

}  // namespace

FormExpr parse_form_expr(std::string_view text) { return Parser(text).parse(); }

PolyForm elaborate(const FormExpr& e, const HeisParams& h) {
  using K = FormExpr::Kind;
  switch (e.kind) {
    case K::Number:
      return PolyForm::function(h, Poly(h.dim(), e.value));
    case K::Name:
      return name_value(e, h);
    case K::Negate:
      return -elaborate(e.args[0], h);
    case K::Add:
    case K::Sub: {
      PolyForm a = elaborate(e.args[0], h), b = elaborate(e.args[1], h);
      if (a.grade() != b.grade())
        fail_at(e, std::string("grade mismatch in '") + (e.kind == K::Add ? "+" : "-") + "': " +
                       std::to_string(a.grade()) + "-form vs " + std::to_string(b.grade()) + "-form");
      return e.kind == K::Add ? a + b : a - b;
    }
    case K::Mul: {
      PolyForm a = elaborate(e.args[0], h), b = elaborate(e.args[1], h);
      if (a.grade() > 0 && b.grade() > 0)
        fail_at(e, "'*' needs a function on one side (" + std::to_string(a.grade()) + "-form * " +
                       std::to_string(b.grade()) + "-form); use '^' for the wedge product");
      return wedge_forms(a, b);
    }
    case K::Div: {
      PolyForm a = elaborate(e.args[0], h), b = elaborate(e.args[1], h);
      auto c = constant_of(b);
      if (!c) fail_at(e, "division by a non-constant expression");
      if (sgn(*c) == 0) fail_at(e, "division by zero");
      return Rational(1 / *c) * a;
    }
    case K::Wedge:
      return wedge_forms(elaborate(e.args[0], h), elaborate(e.args[1], h));
    case K::Sqrt: {
      auto c = constant_of(elaborate(e.args[0], h));
      if (!c) fail_at(e, "sqrt of a non-constant expression");
      if (sgn(*c) < 0) fail_at(e, "sqrt of a negative constant");
      return PolyForm::function(h, Poly(h.dim(), exact_sqrt_or_binary(*c)));
    }
  }
  fail_at(e, "unsupported expression");
}

Rational parse_constant(std::string_view text) {
  FormExpr e = parse_form_expr(text);
  auto c = constant_of(elaborate(e, HeisParams(1)));
  if (!c) throw ParseError(e.line, e.column, "expected a constant, got '" + std::string(text) + "'");
  return *c;
}

std::string print_form(const PolyForm& w) { return to_string(w); }

}  // namespace rumin
