#include "qconfine/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <vector>

#include "qconfine/error.hpp"

namespace qconfine::expr {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

constexpr std::array<std::pair<std::string_view, Function>, 5> functions = {{
    {"sqrt", Function::Sqrt},
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"exp", Function::Exp},
    {"abs", Function::Abs},
}};

std::optional<Function> lookup_function(std::string_view name)
{
    for (const auto& [text, fn] : functions) {
        if (text == name) return fn;
    }
    return std::nullopt;
}

bool is_ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next()
    {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                src_[pos_] == '\r')) {
            ++pos_;
        }
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Tok::End, start, {}};

        const char c = src_[pos_];
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            return number(start);
        }
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && (is_ident_start(src_[pos_]) || is_digit(src_[pos_]))) {
                ++pos_;
            }
            return {Tok::Ident, start, src_.substr(start, pos_ - start)};
        }
        ++pos_;
        switch (c) {
        case '+': return {Tok::Plus, start, src_.substr(start, 1)};
        case '-': return {Tok::Minus, start, src_.substr(start, 1)};
        case '*': return {Tok::Star, start, src_.substr(start, 1)};
        case '/': return {Tok::Slash, start, src_.substr(start, 1)};
        case '^': return {Tok::Caret, start, src_.substr(start, 1)};
        case '(': return {Tok::LParen, start, src_.substr(start, 1)};
        case ')': return {Tok::RParen, start, src_.substr(start, 1)};
        default: break;
        }
        throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    }

private:
    Token number(std::size_t start)
    {
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && is_digit(src_[p])) {
                pos_ = p;
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            }
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
            throw SyntaxError(start, "malformed or out-of-range number '" + std::string(text) + "'");
        }
        return {Tok::Number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// Binding powers.
constexpr int bp_additive = 10;
constexpr int bp_multiplicative = 20;
constexpr int bp_unary = 30;
constexpr int bp_power = 40;
constexpr int max_depth = 256;

int infix_power(Tok t)
{
    switch (t) {
    case Tok::Plus:
    case Tok::Minus: return bp_additive;
    case Tok::Star:
    case Tok::Slash: return bp_multiplicative;
    case Tok::Caret: return bp_power;
    default: return 0;
    }
}

BinaryOp infix_op(Tok t)
{
    switch (t) {
    case Tok::Plus: return BinaryOp::Add;
    case Tok::Minus: return BinaryOp::Sub;
    case Tok::Star: return BinaryOp::Mul;
    case Tok::Slash: return BinaryOp::Div;
    default: return BinaryOp::Pow;
    }
}

NodePtr make(auto&& alt) { return std::make_shared<const Node>(Node{std::move(alt)}); }

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    Expr parse_all()
    {
        NodePtr root = expression(0);
        if (current_.kind != Tok::End) {
            throw SyntaxError(current_.offset, "expected an operator or end of input, found '" +
                                                   std::string(current_.text) + "'");
        }
        return Expr(std::move(root));
    }

private:
    void advance() { current_ = lexer_.next(); }

    NodePtr expression(int min_bp)
    {
        if (++depth_ > max_depth) {
            throw SyntaxError(current_.offset, "expression nested too deeply");
        }
        NodePtr lhs = prefix();
        for (;;) {
            const int lbp = infix_power(current_.kind);
            if (lbp == 0 || lbp <= min_bp) break;
            const Tok op = current_.kind;
            advance();
            // Right-associative ^ re-enters at one below its own power.
            NodePtr rhs = expression(op == Tok::Caret ? lbp - 1 : lbp);
            lhs = make(Binary{infix_op(op), std::move(lhs), std::move(rhs)});
        }
        --depth_;
        return lhs;
    }

    NodePtr prefix()
    {
        const Token tok = current_;
        switch (tok.kind) {
        case Tok::Number:
            advance();
            return make(Number{tok.number});
        case Tok::Minus:
            advance();
            return make(Negate{expression(bp_unary)});
        case Tok::LParen: {
            advance();
            NodePtr inner = expression(0);
            expect_rparen(tok.offset);
            return inner;
        }
        case Tok::Ident: {
            advance();
            if (current_.kind != Tok::LParen) return make(Identifier{std::string(tok.text)});
            const auto fn = lookup_function(tok.text);
            if (!fn) {
                throw Error(ErrorCode::UnknownFunction,
                            "unknown function '" + std::string(tok.text) + "' at offset " +
                                std::to_string(tok.offset));
            }
            const std::size_t open = current_.offset;
            advance();
            NodePtr arg = expression(0);
            expect_rparen(open);
            return make(Call{*fn, std::move(arg)});
        }
        case Tok::End:
            throw SyntaxError(tok.offset, "unexpected end of input; expected a number, "
                                          "identifier, '(' or '-'");
        default:
            throw SyntaxError(tok.offset, "unexpected '" + std::string(tok.text) +
                                              "'; expected a number, identifier, '(' or '-'");
        }
    }

    void expect_rparen(std::size_t open_offset)
    {
        if (current_.kind != Tok::RParen) {
            throw SyntaxError(current_.offset, "expected ')' to close '(' at offset " +
                                                   std::to_string(open_offset));
        }
        advance();
    }

    Lexer lexer_;
    Token current_{Tok::End, 0, {}};
    int depth_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

int precedence(const Node& n)
{
    if (const auto* b = std::get_if<Binary>(&n.v)) {
        switch (b->op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return bp_additive;
        case BinaryOp::Mul:
        case BinaryOp::Div: return bp_multiplicative;
        case BinaryOp::Pow: return bp_power;
        }
    }
    if (std::holds_alternative<Negate>(n.v)) return bp_unary;
    return 100;
}

char op_char(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
    }
    return '?';
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool parens, std::string& out)
{
    if (parens) out += '(';
    print(n, out);
    if (parens) out += ')';
}

void print(const Node& n, std::string& out)
{
    std::visit(
        [&out, &n](const auto& alt) {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, Number>) {
                std::array<char, 32> buf{};
                const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), alt.value);
                out.append(buf.data(), res.ptr);
            } else if constexpr (std::is_same_v<T, Identifier>) {
                out += alt.name;
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += '-';
                print_wrapped(*alt.operand, precedence(*alt.operand) < bp_unary, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const int p = precedence(n);
                const int pl = precedence(*alt.lhs);
                const int pr = precedence(*alt.rhs);
                const bool pow = alt.op == BinaryOp::Pow;
                print_wrapped(*alt.lhs, pow ? pl <= p : pl < p, out);
                out += op_char(alt.op);
                print_wrapped(*alt.rhs, pow ? pr < p : pr <= p, out);
            } else {
                out += function_name(alt.fn);
                out += '(';
                print(*alt.arg, out);
                out += ')';
            }
        },
        n.v);
}

bool equal(const Node& a, const Node& b)
{
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&b](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.v);
            if constexpr (std::is_same_v<T, Number>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, Identifier>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return equal(*x.operand, *y.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
            } else {
                return x.fn == y.fn && equal(*x.arg, *y.arg);
            }
        },
        a.v);
}

void collect(const Node& n, std::set<std::string>& out)
{
    std::visit(
        [&out](const auto& alt) {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, Identifier>) {
                out.insert(alt.name);
            } else if constexpr (std::is_same_v<T, Negate>) {
                collect(*alt.operand, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect(*alt.lhs, out);
                collect(*alt.rhs, out);
            } else if constexpr (std::is_same_v<T, Call>) {
                collect(*alt.arg, out);
            }
        },
        n.v);
}

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void domain_error(const std::string& what)
{
    throw Error(ErrorCode::DomainError, what);
}

double finite(double y, const char* what)
{
    if (!std::isfinite(y)) domain_error(std::string(what) + " produced a non-finite value");
    return y;
}

double apply(BinaryOp op, double a, double b)
{
    switch (op) {
    case BinaryOp::Add: return finite(a + b, "addition");
    case BinaryOp::Sub: return finite(a - b, "subtraction");
    case BinaryOp::Mul: return finite(a * b, "multiplication");
    case BinaryOp::Div:
        if (b == 0.0) domain_error("division by zero");
        return finite(a / b, "division");
    case BinaryOp::Pow: return finite(std::pow(a, b), "power");
    }
    return 0.0;
}

double apply(Function fn, double x)
{
    switch (fn) {
    case Function::Sqrt:
        if (x < 0.0) domain_error("sqrt of a negative number");
        return std::sqrt(x);
    case Function::Sin: return std::sin(x);
    case Function::Cos: return std::cos(x);
    case Function::Exp: return finite(std::exp(x), "exp");
    case Function::Abs: return std::abs(x);
    }
    return 0.0;
}

double eval_node(const Node& n, const Bindings& bindings)
{
    return std::visit(
        [&bindings](const auto& alt) -> double {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, Number>) {
                return alt.value;
            } else if constexpr (std::is_same_v<T, Identifier>) {
                const auto it = bindings.find(alt.name);
                if (it == bindings.end()) {
                    throw Error(ErrorCode::UnboundIdentifier,
                                "identifier '" + alt.name + "' has no value");
                }
                return finite(it->second, "binding");
            } else if constexpr (std::is_same_v<T, Negate>) {
                return -eval_node(*alt.operand, bindings);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const double a = eval_node(*alt.lhs, bindings);
                return apply(alt.op, a, eval_node(*alt.rhs, bindings));
            } else {
                return apply(alt.fn, eval_node(*alt.arg, bindings));
            }
        },
        n.v);
}

// Postfix program for repeated evaluation in one variable.
struct Instr {
    enum class Kind { Push, Var, Neg, Bin, Fn } kind;
    double value = 0.0;
    BinaryOp op = BinaryOp::Add;
    Function fn = Function::Sqrt;
};

void emit(const Node& n, std::string_view variable, const Bindings& constants,
          std::vector<Instr>& code)
{
    std::visit(
        [&](const auto& alt) {
            using T = std::decay_t<decltype(alt)>;
            if constexpr (std::is_same_v<T, Number>) {
                code.push_back({Instr::Kind::Push, alt.value});
            } else if constexpr (std::is_same_v<T, Identifier>) {
                if (alt.name == variable) {
                    code.push_back({Instr::Kind::Var});
                    return;
                }
                const auto it = constants.find(alt.name);
                if (it == constants.end()) {
                    throw Error(ErrorCode::UnboundIdentifier,
                                "identifier '" + alt.name + "' has no value");
                }
                code.push_back({Instr::Kind::Push, finite(it->second, "binding")});
            } else if constexpr (std::is_same_v<T, Negate>) {
                emit(*alt.operand, variable, constants, code);
                code.push_back({Instr::Kind::Neg});
            } else if constexpr (std::is_same_v<T, Binary>) {
                emit(*alt.lhs, variable, constants, code);
                emit(*alt.rhs, variable, constants, code);
                code.push_back({Instr::Kind::Bin, 0.0, alt.op});
            } else {
                emit(*alt.arg, variable, constants, code);
                code.push_back({Instr::Kind::Fn, 0.0, BinaryOp::Add, alt.fn});
            }
        },
        n.v);
}

double run(const std::vector<Instr>& code, double x, std::vector<double>& stack)
{
    stack.clear();
    for (const Instr& in : code) {
        switch (in.kind) {
        case Instr::Kind::Push: stack.push_back(in.value); break;
        case Instr::Kind::Var: stack.push_back(x); break;
        case Instr::Kind::Neg: stack.back() = -stack.back(); break;
        case Instr::Kind::Bin: {
            const double b = stack.back();
            stack.pop_back();
            stack.back() = apply(in.op, stack.back(), b);
            break;
        }
        case Instr::Kind::Fn: stack.back() = apply(in.fn, stack.back()); break;
        }
    }
    return stack.back();
}

}  // namespace

std::string_view function_name(Function fn) noexcept
{
    for (const auto& [text, f] : functions) {
        if (f == fn) return text;
    }
    return "?";
}

std::set<std::string> Expr::identifiers() const
{
    std::set<std::string> out;
    collect(*root_, out);
    return out;
}

bool operator==(const Expr& a, const Expr& b) { return equal(*a.root_, *b.root_); }

Expr parse(std::string_view text)
{
    if (text.empty()) throw SyntaxError(0, "empty expression");
    if (text.size() > max_source_length) {
        throw SyntaxError(max_source_length, "expression longer than 64 KiB");
    }
    return Parser(text).parse_all();
}

std::string to_string(const Expr& e)
{
    std::string out;
    print(e.root(), out);
    return out;
}

double eval(const Expr& e, const Bindings& bindings) { return eval_node(e.root(), bindings); }

std::function<double(double)> compile(const Expr& e, std::string_view variable,
                                      const Bindings& constants)
{
    auto code = std::make_shared<std::vector<Instr>>();
    emit(e.root(), variable, constants, *code);
    return [code](double x) {
        if (!std::isfinite(x)) domain_error("variable is not finite");
        thread_local std::vector<double> stack;
        return run(*code, x, stack);
    };
}

}  // namespace qconfine::expr
