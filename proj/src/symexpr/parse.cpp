#include <cctype>

#include "grg/error.hpp"
#include "grg/symexpr.hpp"

namespace grg {

namespace {

enum class Tok { Int, Ident, Op, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E')) {
        throw ParseError(j, "floating-point literals are not supported");
      }
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::string_view("+-*/^()[],").find(c) != std::string_view::npos) {
      out.push_back({Tok::Op, std::string(1, c), i});
      ++i;
      continue;
    }
    throw ParseError(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool is_op(const Token& t, char c) const { return t.type == Tok::Op && t.text[0] == c; }
  bool accept(char c) {
    if (is_op(peek(), c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (true) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{unary()};
    while (true) {
      if (accept('*')) {
        factors.push_back(unary());
      } else if (is_op(peek(), '/')) {
        const std::size_t at = peek().pos;
        ++pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        factors.push_back(pow(d, Expr(-1)));
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr b = primary();
    if (accept('^')) {
      const std::size_t at = peek().pos;
      Expr e = unary();
      try {
        return pow(b, e);
      } catch (const DomainError& err) {
        throw ParseError(at, err.what());
      }
    }
    return b;
  }

  std::vector<Expr> args(char close) {
    std::vector<Expr> out;
    if (accept(close)) return out;
    out.push_back(expr());
    while (accept(',')) out.push_back(expr());
    expect(close);
    return out;
  }

  // f^(i,j,...)[ lookahead: '^' '(' Int (',' Int)* ')' '['
  bool partial_orders_ahead() const {
    if (!is_op(peek(), '^') || !is_op(peek(1), '(')) return false;
    std::size_t k = 2;
    while (true) {
      if (peek(k).type != Tok::Int) return false;
      ++k;
      if (is_op(peek(k), ',')) {
        ++k;
        continue;
      }
      return is_op(peek(k), ')') && is_op(peek(k + 1), '[');
    }
  }

  Expr opaque_call(const Token& name, std::vector<int> orders) {
    const std::size_t at = peek().pos;
    const char close = is_op(peek(), '[') ? ']' : ')';
    ++pos_;
    auto a = args(close);
    for (const auto& x : a) {
      if (!x.is(ExprKind::Symbol)) {
        throw ParseError(at, "arguments of opaque function '" + name.text + "' must be symbols");
      }
    }
    if (!orders.empty() && orders.size() != a.size()) {
      throw ParseError(at, "derivative orders do not match the number of arguments");
    }
    return Expr::opaque(name.text, std::move(a), std::move(orders));
  }

  Expr primary() {
    const Token t = peek();
    if (t.type == Tok::Int) {
      ++pos_;
      return Expr::rational(mpq_class(mpz_class(t.text)));
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (t.type != Tok::Ident) fail(t.type == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    ++pos_;

    if (partial_orders_ahead()) {
      pos_ += 2;  // '^' '('
      std::vector<int> orders;
      do {
        orders.push_back(std::stoi(peek().text));
        ++pos_;
      } while (accept(','));
      expect(')');
      if (fn_from_name(t.text) || !std::islower(static_cast<unsigned char>(t.text[0]))) {
        throw ParseError(t.pos, "'" + t.text + "' is not an opaque function name");
      }
      return opaque_call(t, std::move(orders));
    }

    const bool call = is_op(peek(), '[') || is_op(peek(), '(');
    if (!call) {
      if (t.text == "I") return Expr::imaginary_unit();
      return Expr::symbol(t.text);
    }
    if (auto fn = fn_from_name(t.text)) {
      const char close = is_op(peek(), '[') ? ']' : ')';
      ++pos_;
      auto a = args(close);
      if (a.size() != 1) throw ParseError(t.pos, "'" + t.text + "' takes exactly one argument");
      return Expr::function(*fn, a.front());
    }
    if (t.text == "Dt") {
      Expr d = opaque_call(t, {});
      if (d.operands().size() != 1) throw ParseError(t.pos, "Dt takes exactly one argument");
      return d;
    }
    if (std::islower(static_cast<unsigned char>(t.text[0]))) return opaque_call(t, {});
    throw ParseError(t.pos, "unknown function '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace grg
