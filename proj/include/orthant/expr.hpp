#pragma once

// Expression language for vector-field components; see docs/expression-grammar.md.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orthant {

enum class NodeKind : std::uint8_t { constant, variable, time, negate, binary, call };
enum class BinaryOp : std::uint8_t { add, sub, mul, div, pow };
enum class Function : std::uint8_t { sin, cos, exp, log, sqrt, abs, min, max };

/// Half-open byte range [begin, end) into the source text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Node {
  NodeKind kind = NodeKind::constant;
  BinaryOp op = BinaryOp::add;
  Function fn = Function::sin;
  double value = 0.0;       // constant
  std::uint32_t index = 0;  // variable
  std::int32_t lhs = -1;    // first child
  std::int32_t rhs = -1;    // second child
  SourceSpan span;
};

/// Reserved name of the time symbol.
inline constexpr std::string_view kTimeSymbol = "t";

/// Immutable parsed expression. Nodes are stored in an arena; children always
/// precede their parent, and the root is the last node.
class Expression {
 public:
  Expression() = default;

  double eval(std::span<const double> state, double time = 0.0) const noexcept;

  /// Fully parenthesised rendering that re-parses to a structurally equal tree.
  std::string to_string() const;

  bool references_time() const noexcept { return uses_time_; }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::string& source() const noexcept { return source_; }

  /// Compares tree shape, operators, constants and variable indices; spans are ignored.
  bool structurally_equal(const Expression& other) const noexcept;

 private:
  friend class Parser;

  double eval_node(std::int32_t id, std::span<const double> state, double time) const noexcept;
  void render(std::int32_t id, std::string& out) const;
  bool equal_node(const Expression& other, std::int32_t a, std::int32_t b) const noexcept;

  std::vector<Node> nodes_;
  std::vector<std::string> variables_;
  std::string source_;
  bool uses_time_ = false;
};

/// Names accepted for state variables: [A-Za-z_][A-Za-z0-9_]*, not `t`, not a
/// function name.
bool is_valid_variable_name(std::string_view name) noexcept;

/// Throws ParseError (syntax, unknown identifier, arity) or Error
/// (invalid variable list).
Expression parse_expression(std::string_view source, std::span<const std::string> variables);

std::string_view function_name(Function fn) noexcept;

}  // namespace orthant
