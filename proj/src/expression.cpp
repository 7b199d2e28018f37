#include "solitonlab/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "solitonlab/error.hpp"

namespace solitonlab {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

constexpr std::pair<std::string_view, Function> kFunctions[] = {
    {"exp", Function::kExp},   {"log", Function::kLog},   {"sin", Function::kSin},
    {"cos", Function::kCos},   {"sinh", Function::kSinh}, {"cosh", Function::kCosh},
    {"tanh", Function::kTanh}, {"sqrt", Function::kSqrt},
};

NodePtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::kNumber;
  n->number = v;
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::kBinary;
  n->op = op;
  n->children = {std::move(a), std::move(b)};
  return n;
}

bool has_coordinates(const ExprNode& n) {
  if (n.kind == NodeKind::kCoordinate) return true;
  for (const auto& c : n.children)
    if (has_coordinates(*c)) return true;
  return false;
}

double constant_value(const ExprNode& n);

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols) : text_(text), symbols_(symbols) {}

  NodePtr parse() {
    for (char c : text_) {
      if (static_cast<unsigned char>(c) > 127) throw ParseError("non-ASCII character", 0);
    }
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    NodePtr n = parse_sum();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    return n;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(BinaryOp::kAdd, lhs, parse_product());
      } else if (accept('-')) {
        lhs = make_binary(BinaryOp::kSub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(BinaryOp::kMul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make_binary(BinaryOp::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::kNegate;
      n->children = {parse_unary()};
      return n;
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) {
      NodePtr exponent = parse_unary();
      if (has_coordinates(*exponent)) throw ParseError("non-constant exponent", at);
      return make_binary(BinaryOp::kPow, base, exponent);
    }
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) {
      throw ParseError("malformed number", start);
    }
    return make_number(v);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      for (const auto& [fname, f] : kFunctions) {
        if (fname == name) {
          ++pos_;
          auto n = std::make_shared<ExprNode>();
          n->kind = NodeKind::kCall;
          n->function = f;
          n->children = {parse_sum()};
          if (!accept(')')) throw ParseError("expected ')' after function argument", pos_);
          return n;
        }
      }
      throw ParseError("unknown function '" + name + "'", start);
    }
    for (std::size_t i = 0; i < symbols_.coordinates.size(); ++i) {
      if (symbols_.coordinates[i] == name) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::kCoordinate;
        n->coordinate = static_cast<int>(i);
        n->name = name;
        return n;
      }
    }
    if (auto it = symbols_.parameters.find(name); it != symbols_.parameters.end()) {
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::kParameter;
      n->name = name;
      n->number = it->second;
      return n;
    }
    if (name == "pi") return make_number(std::numbers::pi);
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  std::string_view text_;
  const SymbolTable& symbols_;
  std::size_t pos_ = 0;
};

double apply(Function f, double x) {
  switch (f) {
    case Function::kExp: return std::exp(x);
    case Function::kLog: return std::log(x);
    case Function::kSin: return std::sin(x);
    case Function::kCos: return std::cos(x);
    case Function::kSinh: return std::sinh(x);
    case Function::kCosh: return std::cosh(x);
    case Function::kTanh: return std::tanh(x);
    case Function::kSqrt: return std::sqrt(x);
  }
  return 0.0;
}

double constant_value(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::kNumber:
    case NodeKind::kParameter: return n.number;
    case NodeKind::kCoordinate: throw Error("constant_value on coordinate");
    case NodeKind::kNegate: return -constant_value(*n.children[0]);
    case NodeKind::kCall: return apply(n.function, constant_value(*n.children[0]));
    case NodeKind::kBinary: {
      const double a = constant_value(*n.children[0]);
      const double b = constant_value(*n.children[1]);
      switch (n.op) {
        case BinaryOp::kAdd: return a + b;
        case BinaryOp::kSub: return a - b;
        case BinaryOp::kMul: return a * b;
        case BinaryOp::kDiv: return a / b;
        case BinaryOp::kPow: return std::pow(a, b);
      }
    }
  }
  return 0.0;
}

Jet3 eval(const ExprNode& n, std::span<const Jet3> vars, const EvalOptions& opts) {
  switch (n.kind) {
    case NodeKind::kNumber:
    case NodeKind::kParameter: return Jet3::constant(0, n.number);
    case NodeKind::kCoordinate:
      if (n.coordinate >= static_cast<int>(vars.size())) {
        throw Error("expression refers to coordinate '" + n.name + "' outside the point");
      }
      return vars[static_cast<std::size_t>(n.coordinate)];
    case NodeKind::kNegate: return -eval(*n.children[0], vars, opts);
    case NodeKind::kCall: {
      const Jet3 a = eval(*n.children[0], vars, opts);
      switch (n.function) {
        case Function::kExp: return exp(a);
        case Function::kLog: return log(a);
        case Function::kSin: return sin(a);
        case Function::kCos: return cos(a);
        case Function::kSinh: return sinh(a);
        case Function::kCosh: return cosh(a);
        case Function::kTanh: return tanh(a);
        case Function::kSqrt: return sqrt(a);
      }
      break;
    }
    case NodeKind::kBinary: {
      if (n.op == BinaryOp::kPow) {
        return pow(eval(*n.children[0], vars, opts), constant_value(*n.children[1]));
      }
      const Jet3 a = eval(*n.children[0], vars, opts);
      const Jet3 b = eval(*n.children[1], vars, opts);
      switch (n.op) {
        case BinaryOp::kAdd: return a + b;
        case BinaryOp::kSub: return a - b;
        case BinaryOp::kMul: return a * b;
        case BinaryOp::kDiv: return divide(a, b, opts.division_guard);
        case BinaryOp::kPow: break;
      }
      break;
    }
  }
  return Jet3{};
}

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::kBinary:
      switch (n.op) {
        case BinaryOp::kAdd:
        case BinaryOp::kSub: return 1;
        case BinaryOp::kMul:
        case BinaryOp::kDiv: return 2;
        case BinaryOp::kPow: return 4;
      }
      break;
    case NodeKind::kNegate: return 3;
    default: return 5;
  }
  return 5;
}

// Shortest text that round-trips exactly.
std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string print(const ExprNode& n) {
  const auto wrap = [](const ExprNode& child, bool parens) {
    std::string s = print(child);
    return parens ? "(" + s + ")" : s;
  };
  switch (n.kind) {
    case NodeKind::kNumber: {
      const std::string s = format_number(n.number);
      return n.number < 0 ? "(" + s + ")" : s;
    }
    case NodeKind::kParameter:
    case NodeKind::kCoordinate: return n.name;
    case NodeKind::kNegate: {
      const ExprNode& c = *n.children[0];
      return "-" + wrap(c, precedence(c) < 4);
    }
    case NodeKind::kCall:
      return std::string(function_name(n.function)) + "(" + print(*n.children[0]) + ")";
    case NodeKind::kBinary: {
      const ExprNode& a = *n.children[0];
      const ExprNode& b = *n.children[1];
      const int p = precedence(n);
      static constexpr const char* kOps[] = {" + ", " - ", "*", "/", "^"};
      const char* op = kOps[static_cast<int>(n.op)];
      if (n.op == BinaryOp::kPow) {
        return wrap(a, precedence(a) <= p) + op + wrap(b, precedence(b) < p);
      }
      return wrap(a, precedence(a) < p) + op + wrap(b, precedence(b) <= p);
    }
  }
  return "0";
}

}  // namespace

std::string_view function_name(Function f) {
  for (const auto& [name, fn] : kFunctions)
    if (fn == f) return name;
  return "?";
}

Expression Expression::parse(std::string_view text, const SymbolTable& symbols) {
  return Expression(Parser(text, symbols).parse());
}

Expression Expression::constant(double v) { return Expression(make_number(v)); }

Jet3 Expression::evaluate(std::span<const Jet3> vars, const EvalOptions& opts) const {
  if (!root_) return Jet3{};
  return eval(*root_, vars, opts);
}

Jet3 Expression::evaluate(const Point& p, const EvalOptions& opts) const {
  const std::vector<Jet3> vars = lift_coordinates(p);
  Jet3 j = evaluate(std::span<const Jet3>(vars), opts);
  if (j.dim() == 0) j = Jet3::constant(p.dim(), j.value());
  return j;
}

double Expression::value(const Point& p, const EvalOptions& opts) const {
  std::vector<Jet3> vars;
  vars.reserve(p.coords.size());
  for (double x : p.coords) vars.push_back(Jet3::constant(0, x));
  return evaluate(std::span<const Jet3>(vars), opts).value();
}

std::string Expression::to_string() const { return root_ ? print(*root_) : "0"; }

bool Expression::depends_on_coordinates() const { return root_ && has_coordinates(*root_); }

bool Expression::is_zero_constant() const {
  if (!root_) return true;
  if (has_coordinates(*root_)) return false;
  return constant_value(*root_) == 0.0;
}

}  // namespace solitonlab
