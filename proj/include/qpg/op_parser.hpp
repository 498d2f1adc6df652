#pragma once

// ============================================================================
// op_parser.hpp -- a small expression language for Fock-space operators
//
// Grammar (standard precedence: ^ binds tighter than *, which binds tighter
// than + and -; all binary operators associate to the left):
//
//     expr    := term (('+' | '-') term)*
//     term    := factor ('*' factor)*
//     factor  := atom ('^' uint)?
//     atom    := complex | 'a(' uint ')' | 'ad(' uint ')' | 'N(' uint ')'
//              | '(' expr ')'
//     complex := float | float ('+' | '-') float 'i'
//
// A float directly followed by 'i' is an imaginary part; "1.5+0.5i" lexes as
// one complex literal (maximal munch), while a bare imaginary like "2i" must
// be written "0+2i".  There is no unary minus: negative coefficients are
// spelled "(0-2)" or folded into a subtraction.  Errors carry 1-based
// line/column positions, including semantic ones (a mode index past m).
// ============================================================================

#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpg/fock.hpp"
#include "qpg/qnum.hpp"

namespace qpg {

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& what)
      : std::runtime_error("line " + std::to_string(pos.line) + ", col " +
                           std::to_string(pos.col) + ": " + what),
        pos_(pos) {}
  [[nodiscard]] SourcePos pos() const noexcept { return pos_; }

 private:
  SourcePos pos_;
};

/// Which ladder/number generator a leaf refers to.
enum class OpKind { annihilate, create, number };

/// Expression tree.  Interior nodes keep their operands in `kids` (always
/// two for the binary forms, one for pow).
struct OpExpr {
  enum class Node { literal, generator, add, sub, mul, pow };

  Node node = Node::literal;
  SourcePos pos{};
  Complex value{};          // literal
  OpKind gen{};             // generator
  int mode = 0;             // generator (1-based)
  unsigned exponent = 0;    // pow
  std::vector<OpExpr> kids;
};

// ---------------------------------------------------------------------------
// lexing and parsing
// ---------------------------------------------------------------------------

namespace detail {

enum class TokKind {
  number,       // float
  imag_number,  // float immediately followed by 'i'
  ident,        // a | ad | N
  plus,
  minus,
  star,
  caret,
  lparen,
  rparen,
  end
};

struct Token {
  TokKind kind = TokKind::end;
  double number = 0.0;
  std::string text;    // raw lexeme (used for uint checks and messages)
  SourcePos pos{};
};

inline std::vector<Token> lex_op(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  const auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i + j] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else {
        ++pos.col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    Token tok;
    tok.pos = pos;
    if ((c >= '0' && c <= '9') || c == '.') {
      double value = 0.0;
      const char* begin = src.data() + i;
      const char* end = src.data() + src.size();
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc{} || ptr == begin)
        throw ParseError(pos, "malformed number");
      std::size_t len = static_cast<std::size_t>(ptr - begin);
      tok.number = value;
      tok.text.assign(begin, len);
      if (i + len < src.size() && src[i + len] == 'i') {
        tok.kind = TokKind::imag_number;
        ++len;
      } else {
        tok.kind = TokKind::number;
      }
      advance(len);
      out.push_back(std::move(tok));
      continue;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      std::size_t len = 1;
      while (i + len < src.size() &&
             ((src[i + len] >= 'a' && src[i + len] <= 'z') ||
              (src[i + len] >= 'A' && src[i + len] <= 'Z')))
        ++len;
      tok.kind = TokKind::ident;
      tok.text.assign(src.substr(i, len));
      if (tok.text != "a" && tok.text != "ad" && tok.text != "N")
        throw ParseError(pos, "unknown identifier '" + tok.text +
                                  "' (expected a, ad or N)");
      advance(len);
      out.push_back(std::move(tok));
      continue;
    }
    switch (c) {
      case '+': tok.kind = TokKind::plus; break;
      case '-': tok.kind = TokKind::minus; break;
      case '*': tok.kind = TokKind::star; break;
      case '^': tok.kind = TokKind::caret; break;
      case '(': tok.kind = TokKind::lparen; break;
      case ')': tok.kind = TokKind::rparen; break;
      default:
        throw ParseError(pos, std::string("unexpected character '") + c +
                                  "'");
    }
    tok.text = c;
    advance(1);
    out.push_back(std::move(tok));
  }
  Token fin;
  fin.pos = pos;
  out.push_back(std::move(fin));
  return out;
}

class OpParser {
 public:
  explicit OpParser(std::string_view src) : toks_(lex_op(src)) {}

  OpExpr parse() {
    OpExpr e = expr();
    if (peek().kind != TokKind::end)
      throw ParseError(peek().pos, "unexpected trailing input");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t idx = pos_ + ahead;
    return idx < toks_.size() ? toks_[idx] : toks_.back();
  }
  const Token& take() { return toks_[pos_++]; }

  OpExpr expr() {
    OpExpr lhs = term();
    while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
      const Token& op = take();
      OpExpr node;
      node.node = op.kind == TokKind::plus ? OpExpr::Node::add
                                           : OpExpr::Node::sub;
      node.pos = op.pos;
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(term());
      lhs = std::move(node);
    }
    return lhs;
  }

  OpExpr term() {
    OpExpr lhs = factor();
    while (peek().kind == TokKind::star) {
      const Token& op = take();
      OpExpr node;
      node.node = OpExpr::Node::mul;
      node.pos = op.pos;
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(factor());
      lhs = std::move(node);
    }
    return lhs;
  }

  OpExpr factor() {
    OpExpr base = atom();
    if (peek().kind != TokKind::caret) return base;
    const Token& caret = take();
    OpExpr node;
    node.node = OpExpr::Node::pow;
    node.pos = caret.pos;
    node.exponent = take_uint("exponent");
    node.kids.push_back(std::move(base));
    return node;
  }

  OpExpr atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokKind::number: {
        OpExpr node;
        node.node = OpExpr::Node::literal;
        node.pos = tok.pos;
        const double re = take().number;
        // maximal munch: float ('+'|'-') float 'i' is one complex literal
        if ((peek().kind == TokKind::plus ||
             peek().kind == TokKind::minus) &&
            peek(1).kind == TokKind::imag_number) {
          const double sign = take().kind == TokKind::plus ? 1.0 : -1.0;
          node.value = Complex{re, sign * take().number};
        } else {
          node.value = Complex{re, 0.0};
        }
        return node;
      }
      case TokKind::imag_number:
        throw ParseError(tok.pos,
                         "imaginary part must follow a real part (write 0+" +
                             tok.text + "i)");
      case TokKind::ident: {
        OpExpr node;
        node.node = OpExpr::Node::generator;
        node.pos = tok.pos;
        const std::string name = take().text;
        node.gen = name == "a"    ? OpKind::annihilate
                   : name == "ad" ? OpKind::create
                                  : OpKind::number;
        expect(TokKind::lparen, "'(' after generator name");
        node.mode = static_cast<int>(take_uint("mode index"));
        expect(TokKind::rparen, "')' closing generator argument");
        return node;
      }
      case TokKind::lparen: {
        take();
        OpExpr inner = expr();
        expect(TokKind::rparen, "')'");
        return inner;
      }
      default:
        throw ParseError(tok.pos, "expected a literal, generator or '('");
    }
  }

  unsigned take_uint(const char* what) {
    const Token& tok = peek();
    if (tok.kind != TokKind::number)
      throw ParseError(tok.pos,
                       std::string("expected an unsigned integer ") + what);
    for (char c : tok.text)
      if (c < '0' || c > '9')
        throw ParseError(tok.pos,
                         std::string(what) + " must be an unsigned integer");
    take();
    return static_cast<unsigned>(tok.number);
  }

  void expect(TokKind kind, const char* what) {
    if (peek().kind != kind)
      throw ParseError(peek().pos, std::string("expected ") + what);
    take();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the operator language; throws ParseError with a 1-based position.
inline OpExpr parse_op(std::string_view src) {
  return detail::OpParser(src).parse();
}

// ---------------------------------------------------------------------------
// rendering (round-trips through parse_op)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string render_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Literals render so that re-lexing gives the same value: non-negative
/// real parts keep the munched "re+imi" form, negative ones are written as
/// a parenthesised subtraction from zero (the grammar has no unary minus).
inline std::string render_literal(Complex c) {
  if (c.real() < 0.0) {
    return "(0-" + render_literal(-c) + ")";
  }
  // quash negative zero: "-0" would need the unary minus we don't have
  std::string out = render_double(c.real() == 0.0 ? 0.0 : c.real());
  if (c.imag() != 0.0) {
    out += c.imag() < 0.0 ? "-" : "+";
    out += render_double(std::abs(c.imag()));
    out += "i";
  }
  return out;
}

inline int precedence(const OpExpr& e) {
  switch (e.node) {
    case OpExpr::Node::add:
    case OpExpr::Node::sub: return 1;
    case OpExpr::Node::mul: return 2;
    case OpExpr::Node::pow: return 3;
    default: return 4;
  }
}

inline std::string render_node(const OpExpr& e) {
  const auto wrap = [](const OpExpr& kid, int min_prec) {
    std::string s = render_node(kid);
    if (precedence(kid) < min_prec) return "(" + s + ")";
    return s;
  };
  switch (e.node) {
    case OpExpr::Node::literal:
      return render_literal(e.value);
    case OpExpr::Node::generator: {
      const char* name = e.gen == OpKind::annihilate ? "a"
                         : e.gen == OpKind::create   ? "ad"
                                                     : "N";
      return std::string(name) + "(" + std::to_string(e.mode) + ")";
    }
    case OpExpr::Node::add:
      return render_node(e.kids[0]) + " + " + wrap(e.kids[1], 2);
    case OpExpr::Node::sub:
      // the right operand of '-' must bind at least like a term
      return render_node(e.kids[0]) + " - " + wrap(e.kids[1], 2);
    case OpExpr::Node::mul:
      return wrap(e.kids[0], 2) + "*" + wrap(e.kids[1], 3);
    case OpExpr::Node::pow:
      return wrap(e.kids[0], 4) + "^" + std::to_string(e.exponent);
  }
  return {};
}

}  // namespace detail

inline std::string render_op(const OpExpr& e) { return detail::render_node(e); }

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

/// Evaluates the tree to a dense operator; literals scale the identity and
/// mode indices are validated against the context.
inline FockOp eval_op(const OpExpr& e, const QContext& ctx) {
  switch (e.node) {
    case OpExpr::Node::literal:
      return scale(identity_op(ctx), e.value);
    case OpExpr::Node::generator: {
      if (e.mode < 1 || e.mode > ctx.modes())
        throw ParseError(e.pos, "mode index " + std::to_string(e.mode) +
                                    " out of range (m = " +
                                    std::to_string(ctx.modes()) + ")");
      switch (e.gen) {
        case OpKind::annihilate: return annihilation(ctx, e.mode);
        case OpKind::create: return creation(ctx, e.mode);
        case OpKind::number: return number_op(ctx, e.mode);
      }
      break;
    }
    case OpExpr::Node::add:
      return add(eval_op(e.kids[0], ctx), eval_op(e.kids[1], ctx));
    case OpExpr::Node::sub:
      return sub(eval_op(e.kids[0], ctx), eval_op(e.kids[1], ctx));
    case OpExpr::Node::mul:
      return compose(eval_op(e.kids[0], ctx), eval_op(e.kids[1], ctx));
    case OpExpr::Node::pow: {
      FockOp result = identity_op(ctx);
      const FockOp base = eval_op(e.kids[0], ctx);
      for (unsigned j = 0; j < e.exponent; ++j) result = compose(result, base);
      return result;
    }
  }
  throw std::logic_error("eval_op: malformed expression tree");
}

// ---------------------------------------------------------------------------
// random polynomials for the stochastic verification loops
// ---------------------------------------------------------------------------

/// A random polynomial in the generators: 1-4 additive terms, each a complex
/// coefficient in the unit square times a word of at most 3 generators over
/// uniformly chosen modes.  Drawing only from the raw engine stream keeps
/// the sequence reproducible across standard library implementations.
inline OpExpr random_poly_op(const QContext& ctx, std::mt19937_64& rng) {
  const auto u01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const auto below = [&rng](int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  };
  const auto literal = [&]() {
    OpExpr lit;
    lit.node = OpExpr::Node::literal;
    lit.value = Complex{u01(), u01()};
    return lit;
  };
  const auto generator = [&]() {
    OpExpr g;
    g.node = OpExpr::Node::generator;
    g.gen = static_cast<OpKind>(below(3));
    g.mode = 1 + below(ctx.modes());
    return g;
  };

  OpExpr poly;
  const int terms = 1 + below(4);
  for (int t = 0; t < terms; ++t) {
    OpExpr word = literal();
    const int degree = below(4);
    for (int d = 0; d < degree; ++d) {
      OpExpr mul;
      mul.node = OpExpr::Node::mul;
      mul.kids.push_back(std::move(word));
      mul.kids.push_back(generator());
      word = std::move(mul);
    }
    if (t == 0) {
      poly = std::move(word);
    } else {
      OpExpr sum;
      sum.node = OpExpr::Node::add;
      sum.kids.push_back(std::move(poly));
      sum.kids.push_back(std::move(word));
      poly = std::move(sum);
    }
  }
  return poly;
}

}  // namespace qpg
