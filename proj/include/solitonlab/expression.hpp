#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solitonlab/jet.hpp"

namespace solitonlab {

enum class NodeKind { kNumber, kParameter, kCoordinate, kNegate, kBinary, kCall };
enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };
enum class Function { kExp, kLog, kSin, kCos, kSinh, kCosh, kTanh, kSqrt };

/// Immutable expression tree node.
struct ExprNode {
  NodeKind kind = NodeKind::kNumber;
  double number = 0.0;      // kNumber, kParameter (resolved value)
  int coordinate = -1;      // kCoordinate
  std::string name;         // kParameter, kCoordinate
  BinaryOp op = BinaryOp::kAdd;
  Function function = Function::kExp;
  std::vector<std::shared_ptr<const ExprNode>> children;
};

/// Names an expression may refer to: chart coordinates (in order) and named
/// constant parameters.
struct SymbolTable {
  std::vector<std::string> coordinates;
  std::map<std::string, double> parameters;
};

struct EvalOptions {
  double division_guard = kDefaultDivisionGuard;
};

/// A parsed scalar expression over chart coordinates.
///
/// Grammar (precedence high to low): `^` (right associative, constant right
/// operand), unary `-`/`+`, `*` `/`, `+` `-` (left associative). Calls:
/// exp log sin cos sinh cosh tanh sqrt. `pi` is predefined.
class Expression {
 public:
  Expression() = default;  // the constant 0
  explicit Expression(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

  static Expression parse(std::string_view text, const SymbolTable& symbols);
  static Expression constant(double v);

  /// Jet of the expression with coordinate i bound to vars[i].
  Jet3 evaluate(std::span<const Jet3> vars, const EvalOptions& opts = {}) const;
  /// Jet of the expression at p with respect to the chart coordinates.
  Jet3 evaluate(const Point& p, const EvalOptions& opts = {}) const;
  /// Plain value.
  double value(const Point& p, const EvalOptions& opts = {}) const;

  /// Text that reparses to an equivalent tree.
  std::string to_string() const;

  bool depends_on_coordinates() const;
  bool is_zero_constant() const;
  const ExprNode* root() const { return root_.get(); }

 private:
  std::shared_ptr<const ExprNode> root_;
};

std::string_view function_name(Function f);

}  // namespace solitonlab
