#include "noether/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace noether {

Rational parse_decimal(std::string_view s) {
  std::string mantissa;
  long exponent10 = 0;
  std::size_t i = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      if (seen_point) --exponent10;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (mantissa.empty()) throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed number '" + std::string(s) + "'");
    ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw std::invalid_argument("malformed exponent in '" + std::string(s) + "'");
    long e = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("malformed exponent in '" + std::string(s) + "'");
      e = e * 10 + (s[i] - '0');
      if (e > 10000) throw std::invalid_argument("exponent out of range in '" + std::string(s) + "'");
    }
    exponent10 += neg ? -e : e;
  }
  mpz_class m(mantissa, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent10 < 0 ? -exponent10 : exponent10));
  Rational r = exponent10 < 0 ? Rational(m, scale) : Rational(m * scale);
  r.canonicalize();
  return r;
}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          i = j;
          while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      out.push_back({Tok::number, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::end, "", src.size()});
  return out;
}

// Binding powers.
constexpr int kAdditive = 10;
constexpr int kMultiplicative = 20;
constexpr int kUnary = 25;
constexpr int kPower = 30;

class Parser {
 public:
  Parser(std::string_view src, const SymbolTable& ctx) : tokens_(lex(src)), ctx_(ctx) {}

  Expr run() {
    Expr e = expression(0);
    if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) {
      throw ParseError(std::string("expected ") + what +
                           (peek().kind == Tok::end ? std::string(", found end of input") : ", found '" + peek().text + "'"),
                       peek().pos);
    }
    ++pos_;
  }

  Expr expression(int min_bp) {
    Expr lhs = prefix();
    for (;;) {
      const Token& op = peek();
      int lbp;
      switch (op.kind) {
        case Tok::plus:
        case Tok::minus: lbp = kAdditive; break;
        case Tok::star:
        case Tok::slash: lbp = kMultiplicative; break;
        case Tok::caret: lbp = kPower; break;
        default: return lhs;
      }
      if (lbp <= min_bp) return lhs;
      next();
      if (op.kind == Tok::caret) {
        std::size_t at = peek().pos;
        Expr rhs = expression(kPower - 1);  // right associative
        if (!rhs.is_number()) throw ParseError("exponent must be a rational constant", at);
        lhs = pow(lhs, rhs.number());
        continue;
      }
      Expr rhs = expression(lbp);
      switch (op.kind) {
        case Tok::plus: lhs = lhs + rhs; break;
        case Tok::minus: lhs = lhs - rhs; break;
        case Tok::star: lhs = lhs * rhs; break;
        case Tok::slash:
          if (rhs.is_zero_literal()) throw ParseError("division by zero", op.pos);
          lhs = lhs / rhs;
          break;
        default: break;
      }
    }
  }

  Expr prefix() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::number:
        try {
          return Expr(parse_decimal(t.text));
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), t.pos);
        }
      case Tok::minus: return -expression(kUnary);
      case Tok::plus: return expression(kUnary);
      case Tok::lparen: {
        Expr e = expression(0);
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident: {
        if (peek().kind == Tok::lparen) return call(t);
        auto sym = ctx_.lookup(t.text);
        if (!sym) throw ParseError("undeclared identifier '" + t.text + "'", t.pos);
        return Expr(*sym);
      }
      case Tok::end: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  Expr call(const Token& name) {
    next();  // '('
    std::vector<Expr> args;
    if (peek().kind != Tok::rparen) {
      args.push_back(expression(0));
      while (peek().kind == Tok::comma) {
        next();
        args.push_back(expression(0));
      }
    }
    expect(Tok::rparen, "')'");
    static const char* const kUnaryFunctions[] = {"exp", "log", "sin", "cos", "sqrt"};
    bool known = false;
    for (const char* f : kUnaryFunctions) known = known || name.text == f;
    if (!known) throw ParseError("unknown function '" + name.text + "'", name.pos);
    if (args.size() != 1)
      throw ParseError("function '" + name.text + "' expects 1 argument, got " + std::to_string(args.size()),
                       name.pos);
    try {
      if (name.text == "exp") return exp(args[0]);
      if (name.text == "log") return log(args[0]);
      if (name.text == "sin") return sin(args[0]);
      if (name.text == "cos") return cos(args[0]);
      return sqrt(args[0]);
    } catch (const std::domain_error& e) {
      throw ParseError(e.what(), name.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const SymbolTable& ctx_;
};

}  // namespace

Expr parse(std::string_view src, const SymbolTable& ctx) {
  try {
    return Parser(src, ctx).run();
  } catch (const std::domain_error& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace noether
