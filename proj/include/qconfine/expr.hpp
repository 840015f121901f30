#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace qconfine::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sqrt, Sin, Cos, Exp, Abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
    double value;
};
struct Identifier {
    std::string name;
};
struct Negate {
    NodePtr operand;
};
struct Binary {
    BinaryOp op;
    NodePtr lhs;
    NodePtr rhs;
};
struct Call {
    Function fn;
    NodePtr arg;
};

struct Node {
    std::variant<Number, Identifier, Negate, Binary, Call> v;
};

/// Immutable expression tree; cheap to copy and safe to share across threads.
class Expr {
public:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}

    const Node& root() const noexcept { return *root_; }
    const NodePtr& root_ptr() const noexcept { return root_; }

    std::set<std::string> identifiers() const;

    /// Structural equality; literals compare by value.
    friend bool operator==(const Expr& a, const Expr& b);

private:
    NodePtr root_;
};

using Bindings = std::map<std::string, double, std::less<>>;

inline constexpr std::size_t max_source_length = 64 * 1024;

/*!
 * Parses an arithmetic expression. Grammar, loosest binding first:
 *
 *   expr    := expr ('+' | '-') expr | expr ('*' | '/') expr
 *            | '-' expr | expr '^' expr | primary
 *   primary := number | identifier | function '(' expr ')' | '(' expr ')'
 *
 * with precedence ^ > unary - > * / > + -, and ^ right-associative.
 * Throws SyntaxError (with offset) or Error{UnknownFunction}.
 */
Expr parse(std::string_view text);

/// Shortest text that reparses to the same tree.
std::string to_string(const Expr& e);

/// Throws UnboundIdentifier or DomainError (no NaN/inf is ever returned).
double eval(const Expr& e, const Bindings& bindings);

/// Compiles e into a function of a single variable, with every other
/// identifier taken from constants. Throws UnboundIdentifier eagerly;
/// the returned function throws DomainError.
std::function<double(double)> compile(const Expr& e, std::string_view variable,
                                      const Bindings& constants);

std::string_view function_name(Function fn) noexcept;

}  // namespace qconfine::expr
