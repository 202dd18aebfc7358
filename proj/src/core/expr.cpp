#include "orthant/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>

#include "orthant/error.hpp"

namespace orthant {

namespace {

struct FunctionInfo {
  std::string_view name;
  Function fn;
  int arity;
};

constexpr std::array<FunctionInfo, 8> kFunctions{{
    {"sin", Function::sin, 1},
    {"cos", Function::cos, 1},
    {"exp", Function::exp, 1},
    {"log", Function::log, 1},
    {"sqrt", Function::sqrt, 1},
    {"abs", Function::abs, 1},
    {"min", Function::min, 2},
    {"max", Function::max, 2},
}};

std::optional<FunctionInfo> lookup_function(std::string_view name) {
  for (const auto& info : kFunctions) {
    if (info.name == name) return info;
  }
  return std::nullopt;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

enum class TokenKind { number, identifier, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  TokenKind kind;
  SourceSpan span;
  double number = 0.0;
};

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::number: return "number";
    case TokenKind::identifier: return "identifier";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::caret: return "'^'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::comma: return "','";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](TokenKind kind) {
      tokens.push_back({kind, {start, start + 1}});
      ++i;
    };
    switch (c) {
      case '+': single(TokenKind::plus); continue;
      case '-': single(TokenKind::minus); continue;
      case '*': single(TokenKind::star); continue;
      case '/': single(TokenKind::slash); continue;
      case '^': single(TokenKind::caret); continue;
      case '(': single(TokenKind::lparen); continue;
      case ')': single(TokenKind::rparen); continue;
      case ',': single(TokenKind::comma); continue;
      default: break;
    }
    if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      while (i < src.size() && is_digit(src[i])) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (i < src.size() && is_digit(src[i])) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && is_digit(src[j])) {
          i = j;
          while (i < src.size() && is_digit(src[i])) ++i;
        } else {
          throw ParseError(i, "malformed exponent in numeric literal");
        }
      }
      Token tok{TokenKind::number, {start, i}};
      const auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, tok.number);
      if (ec != std::errc{} || !std::isfinite(tok.number)) {
        throw ParseError(start, "numeric literal out of range");
      }
      tokens.push_back(tok);
      continue;
    }
    if (is_ident_start(c)) {
      while (i < src.size() && is_ident_char(src[i])) ++i;
      tokens.push_back({TokenKind::identifier, {start, i}});
      continue;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
  tokens.push_back({TokenKind::end, {src.size(), src.size()}});
  return tokens;
}

}  // namespace

// Recursive descent over the token stream:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> variables)
      : src_(src), variables_(variables), tokens_(tokenize(src)) {}

  Expression run() {
    out_.source_ = std::string(src_);
    out_.variables_.assign(variables_.begin(), variables_.end());
    parse_expr();
    expect(TokenKind::end, "expected operator or end of input");
    return std::move(out_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  void expect(TokenKind kind, const std::string& message) {
    if (peek().kind != kind) {
      throw ParseError(peek().span.begin, message + ", found " + std::string(describe(peek().kind)));
    }
  }

  std::int32_t push(Node node) {
    out_.nodes_.push_back(node);
    return static_cast<std::int32_t>(out_.nodes_.size() - 1);
  }

  std::int32_t binary(BinaryOp op, std::int32_t lhs, std::int32_t rhs) {
    Node n;
    n.kind = NodeKind::binary;
    n.op = op;
    n.lhs = lhs;
    n.rhs = rhs;
    n.span = {out_.nodes_[lhs].span.begin, out_.nodes_[rhs].span.end};
    return push(n);
  }

  std::int32_t parse_expr() {
    std::int32_t lhs = parse_term();
    while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
      const BinaryOp op = advance().kind == TokenKind::plus ? BinaryOp::add : BinaryOp::sub;
      lhs = binary(op, lhs, parse_term());
    }
    return lhs;
  }

  std::int32_t parse_term() {
    std::int32_t lhs = parse_unary();
    while (peek().kind == TokenKind::star || peek().kind == TokenKind::slash) {
      const BinaryOp op = advance().kind == TokenKind::star ? BinaryOp::mul : BinaryOp::div;
      lhs = binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  std::int32_t parse_unary() {
    if (peek().kind == TokenKind::minus) {
      const std::size_t begin = advance().span.begin;
      const std::int32_t operand = parse_unary();
      Node n;
      n.kind = NodeKind::negate;
      n.lhs = operand;
      n.span = {begin, out_.nodes_[operand].span.end};
      return push(n);
    }
    return parse_power();
  }

  std::int32_t parse_power() {
    const std::int32_t base = parse_primary();
    if (peek().kind == TokenKind::caret) {
      advance();
      return binary(BinaryOp::pow, base, parse_unary());
    }
    return base;
  }

  std::int32_t parse_primary() {
    const Token tok = peek();
    switch (tok.kind) {
      case TokenKind::number: {
        advance();
        Node n;
        n.kind = NodeKind::constant;
        n.value = tok.number;
        n.span = tok.span;
        return push(n);
      }
      case TokenKind::identifier:
        advance();
        return parse_name(tok);
      case TokenKind::lparen: {
        advance();
        const std::int32_t inner = parse_expr();
        expect(TokenKind::rparen, "expected ')'");
        advance();
        return inner;
      }
      default:
        throw ParseError(tok.span.begin, "expected expression, found " + std::string(describe(tok.kind)));
    }
  }

  std::int32_t parse_name(const Token& tok) {
    const std::string_view name = src_.substr(tok.span.begin, tok.span.end - tok.span.begin);
    if (peek().kind == TokenKind::lparen) {
      const auto info = lookup_function(name);
      if (!info) throw ParseError(tok.span.begin, "unknown function `" + std::string(name) + "`");
      advance();
      std::vector<std::int32_t> args;
      args.push_back(parse_expr());
      while (peek().kind == TokenKind::comma) {
        advance();
        args.push_back(parse_expr());
      }
      expect(TokenKind::rparen, "expected ')' or ',' in argument list");
      const std::size_t end = advance().span.end;
      if (static_cast<int>(args.size()) != info->arity) {
        throw ParseError(tok.span.begin, "function `" + std::string(name) + "` expects " +
                                             std::to_string(info->arity) + " argument(s), got " +
                                             std::to_string(args.size()));
      }
      Node n;
      n.kind = NodeKind::call;
      n.fn = info->fn;
      n.lhs = args[0];
      if (args.size() > 1) n.rhs = args[1];
      n.span = {tok.span.begin, end};
      return push(n);
    }
    Node n;
    n.span = tok.span;
    if (name == kTimeSymbol) {
      n.kind = NodeKind::time;
      out_.uses_time_ = true;
      return push(n);
    }
    const auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) {
      throw ParseError(tok.span.begin, "unknown identifier `" + std::string(name) + "`");
    }
    n.kind = NodeKind::variable;
    n.index = static_cast<std::uint32_t>(it - variables_.begin());
    return push(n);
  }

  std::string_view src_;
  std::span<const std::string> variables_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Expression out_;
};

bool is_valid_variable_name(std::string_view name) noexcept {
  if (name.empty() || !is_ident_start(name.front())) return false;
  if (!std::all_of(name.begin(), name.end(), is_ident_char)) return false;
  if (name == kTimeSymbol) return false;
  return !lookup_function(name).has_value();
}

Expression parse_expression(std::string_view source, std::span<const std::string> variables) {
  if (variables.empty()) throw Error(ErrorKind::invalid_argument, "variable list is empty");
  std::set<std::string_view> seen;
  for (const auto& v : variables) {
    if (!is_valid_variable_name(v)) {
      throw Error(ErrorKind::invalid_argument, "invalid variable name `" + v + "`");
    }
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::invalid_argument, "duplicate variable name `" + v + "`");
    }
  }
  return Parser(source, variables).run();
}

std::string_view function_name(Function fn) noexcept {
  for (const auto& info : kFunctions) {
    if (info.fn == fn) return info.name;
  }
  return "?";
}

double Expression::eval(std::span<const double> state, double time) const noexcept {
  if (nodes_.empty()) return 0.0;
  return eval_node(static_cast<std::int32_t>(nodes_.size() - 1), state, time);
}

double Expression::eval_node(std::int32_t id, std::span<const double> state, double time) const noexcept {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  switch (n.kind) {
    case NodeKind::constant: return n.value;
    case NodeKind::variable: return state[n.index];
    case NodeKind::time: return time;
    case NodeKind::negate: return -eval_node(n.lhs, state, time);
    case NodeKind::binary: {
      const double a = eval_node(n.lhs, state, time);
      const double b = eval_node(n.rhs, state, time);
      switch (n.op) {
        case BinaryOp::add: return a + b;
        case BinaryOp::sub: return a - b;
        case BinaryOp::mul: return a * b;
        case BinaryOp::div: return a / b;
        case BinaryOp::pow: return std::pow(a, b);  // pow(0, 0) == 1
      }
      return 0.0;
    }
    case NodeKind::call: {
      const double a = eval_node(n.lhs, state, time);
      switch (n.fn) {
        case Function::sin: return std::sin(a);
        case Function::cos: return std::cos(a);
        case Function::exp: return std::exp(a);
        case Function::log: return std::log(a);
        case Function::sqrt: return std::sqrt(a);
        case Function::abs: return std::fabs(a);
        case Function::min: return std::fmin(a, eval_node(n.rhs, state, time));
        case Function::max: return std::fmax(a, eval_node(n.rhs, state, time));
      }
      return 0.0;
    }
  }
  return 0.0;
}

std::string Expression::to_string() const {
  std::string out;
  if (!nodes_.empty()) render(static_cast<std::int32_t>(nodes_.size() - 1), out);
  return out;
}

void Expression::render(std::int32_t id, std::string& out) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  switch (n.kind) {
    case NodeKind::constant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case NodeKind::variable: out += variables_[n.index]; return;
    case NodeKind::time: out += kTimeSymbol; return;
    case NodeKind::negate:
      out += "(-";
      render(n.lhs, out);
      out += ')';
      return;
    case NodeKind::binary: {
      static constexpr std::array<char, 5> symbols{'+', '-', '*', '/', '^'};
      out += '(';
      render(n.lhs, out);
      out += ' ';
      out += symbols[static_cast<std::size_t>(n.op)];
      out += ' ';
      render(n.rhs, out);
      out += ')';
      return;
    }
    case NodeKind::call:
      out += function_name(n.fn);
      out += '(';
      render(n.lhs, out);
      if (n.rhs >= 0) {
        out += ", ";
        render(n.rhs, out);
      }
      out += ')';
      return;
  }
}

bool Expression::structurally_equal(const Expression& other) const noexcept {
  if (nodes_.empty() || other.nodes_.empty()) return nodes_.empty() && other.nodes_.empty();
  return equal_node(other, static_cast<std::int32_t>(nodes_.size() - 1),
                    static_cast<std::int32_t>(other.nodes_.size() - 1));
}

bool Expression::equal_node(const Expression& other, std::int32_t a, std::int32_t b) const noexcept {
  if ((a < 0) != (b < 0)) return false;
  if (a < 0) return true;
  const Node& x = nodes_[static_cast<std::size_t>(a)];
  const Node& y = other.nodes_[static_cast<std::size_t>(b)];
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case NodeKind::constant:
      if (x.value != y.value) return false;
      break;
    case NodeKind::variable:
      if (x.index != y.index) return false;
      break;
    case NodeKind::binary:
      if (x.op != y.op) return false;
      break;
    case NodeKind::call:
      if (x.fn != y.fn) return false;
      break;
    default:
      break;
  }
  return equal_node(other, x.lhs, y.lhs) && equal_node(other, x.rhs, y.rhs);
}

}  // namespace orthant
