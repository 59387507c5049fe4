#include "qsegre/ket.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

namespace qsegre {

// ---------------------------------------------------------------------------
// ExactScalar
// ---------------------------------------------------------------------------

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Error("exact coefficient overflow");
    }
    return out;
}

// Pulls perfect-square factors out of the radical: sqrt(12) -> 2*sqrt(3).
void extract_squares(std::int64_t& outside, std::int64_t& arg) {
    for (std::int64_t p = 2; p * p <= arg; ++p) {
        while (arg % (p * p) == 0) {
            arg /= p * p;
            outside = checked_mul(outside, p);
        }
    }
}

} // namespace

void ExactScalar::push_term(Term t) {
    if (t.num == 0) return;
    if (t.den < 0) {
        t.den = -t.den;
        t.num = -t.num;
    }
    t.root12 = ((t.root12 % 12) + 12) % 12;
    if (t.root12 >= 6) {
        t.root12 -= 6;
        t.num = -t.num;
    }
    extract_squares(t.num, t.sqrt_arg);
    const std::int64_t g = std::gcd(std::abs(t.num), t.den);
    t.num /= g;
    t.den /= g;
    for (auto& existing : terms_) {
        if (existing.sqrt_arg == t.sqrt_arg && existing.root12 == t.root12) {
            // a/b + c/d = (ad + cb) / bd
            const std::int64_t num =
                checked_mul(existing.num, t.den) + checked_mul(t.num, existing.den);
            const std::int64_t den = checked_mul(existing.den, t.den);
            if (num == 0) {
                existing = terms_.back();
                terms_.pop_back();
            } else {
                const std::int64_t g2 = std::gcd(std::abs(num), den);
                existing.num = num / g2;
                existing.den = den / g2;
            }
            return;
        }
    }
    terms_.push_back(t);
}

ExactScalar ExactScalar::integer(std::int64_t v) { return rational(v, 1); }

ExactScalar ExactScalar::rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error("division by zero in exact coefficient");
    ExactScalar s;
    s.push_term(Term{num, den, 1, 0});
    return s;
}

ExactScalar ExactScalar::sqrt_of(std::int64_t arg) {
    if (arg < 1) throw Error("sqrt argument must be a positive integer");
    ExactScalar s;
    s.push_term(Term{1, 1, arg, 0});
    return s;
}

ExactScalar ExactScalar::imaginary_unit() {
    ExactScalar s;
    s.push_term(Term{1, 1, 1, 3});
    return s;
}

ExactScalar ExactScalar::omega_power(int p) {
    ExactScalar s;
    s.push_term(Term{1, 1, 1, 4 * (((p % 3) + 3) % 3)});
    return s;
}

ExactScalar ExactScalar::operator+(const ExactScalar& other) const {
    ExactScalar out = *this;
    for (const Term& t : other.terms_) out.push_term(t);
    return out;
}

ExactScalar ExactScalar::operator-(const ExactScalar& other) const {
    return *this + other.negated();
}

ExactScalar ExactScalar::negated() const {
    ExactScalar out = *this;
    for (Term& t : out.terms_) t.num = -t.num;
    return out;
}

ExactScalar ExactScalar::operator*(const ExactScalar& other) const {
    ExactScalar out;
    for (const Term& a : terms_) {
        for (const Term& b : other.terms_) {
            out.push_term(Term{checked_mul(a.num, b.num), checked_mul(a.den, b.den),
                               checked_mul(a.sqrt_arg, b.sqrt_arg), a.root12 + b.root12});
        }
    }
    return out;
}

ExactScalar ExactScalar::operator/(const ExactScalar& other) const {
    if (other.terms_.empty()) throw Error("division by zero in exact coefficient");
    if (other.terms_.size() != 1) {
        throw Error("division by a composite coefficient is not supported");
    }
    const Term& d = other.terms_.front();
    // 1 / (n/m * sqrt(s) * zeta^r) = m/(n*s) * sqrt(s) * zeta^(-r)
    ExactScalar out;
    for (const Term& a : terms_) {
        out.push_term(Term{checked_mul(a.num, d.den),
                           checked_mul(a.den, checked_mul(d.num, d.sqrt_arg)),
                           checked_mul(a.sqrt_arg, d.sqrt_arg), a.root12 - d.root12});
    }
    return out;
}

Complex ExactScalar::to_complex() const {
    // zeta^r for r = 0..5 with exact zeros and ones; the other six fold into
    // the sign of num during normalization.
    const double h = 0.5;
    const double s = std::sqrt(3.0) / 2.0;
    static const Complex roots[6] = {{1, 0}, {s, h}, {h, s}, {0, 1}, {-h, s}, {-s, h}};
    Complex out{0.0, 0.0};
    for (const Term& t : terms_) {
        const double mag = static_cast<double>(t.num) / static_cast<double>(t.den) *
                           std::sqrt(static_cast<double>(t.sqrt_arg));
        out += mag * roots[t.root12];
    }
    return out;
}

namespace {

// The rendered form writes zeta^r as sign * (1|i) * (1|w|w^2); r in {1,2,5}
// carries a hidden minus that belongs to the displayed sign.
ExactScalar::Term display_form(ExactScalar::Term t) {
    if (t.root12 == 1 || t.root12 == 2 || t.root12 == 5) t.num = -t.num;
    return t;
}

} // namespace

bool ExactScalar::sign_extractable_negative() const {
    if (terms_.empty()) return false;
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return display_form(t).num < 0; });
}

namespace {

std::string render_term(const ExactScalar::Term& in, bool keep_sign) {
    ExactScalar::Term t = display_form(in);
    std::string suffix;
    switch (t.root12) {
    case 1: suffix = "*i*w"; break;
    case 2: suffix = "*w^2"; break;
    case 3: suffix = "*i"; break;
    case 4: suffix = "*w"; break;
    case 5: suffix = "*i*w^2"; break;
    default: break;
    }
    std::string out;
    if (keep_sign && t.num < 0) out += "-";
    const std::int64_t mag = std::abs(t.num);
    if (mag != 1 || (t.sqrt_arg == 1 && suffix.empty())) {
        out += std::to_string(mag);
        if (t.sqrt_arg != 1) out += "*sqrt(" + std::to_string(t.sqrt_arg) + ")";
    } else if (t.sqrt_arg != 1) {
        out += "sqrt(" + std::to_string(t.sqrt_arg) + ")";
    } else {
        suffix.erase(0, 1); // bare "i", "w", ...
    }
    out += suffix;
    if (t.den != 1) out += "/" + std::to_string(t.den);
    return out;
}

} // namespace

std::string ExactScalar::render() const {
    if (terms_.empty()) return "0";
    if (terms_.size() == 1) return render_term(terms_.front(), true);
    std::string out = "(" + render_term(terms_.front(), true);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        out += terms_[i].num < 0 ? "-" : "+";
        out += render_term(terms_[i], false);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
    Ket,
    Int,
    Sqrt,
    ImagUnit,
    Omega,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    TensorOp, // "(x)"
    End,
};

struct Token {
    Tok kind;
    std::string text;      // ket content or integer digits
    std::int64_t value = 0;
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::Ket: return "'|" + t.text + ">'";
    case Tok::Int: return "'" + t.text + "'";
    case Tok::Sqrt: return "'sqrt'";
    case Tok::ImagUnit: return "'i'";
    case Tok::Omega: return "'w'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::TensorOp: return "'(x)'";
    case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_space();
            Token t = make_token();
            if (pos_ >= text_.size()) {
                t.kind = Tok::End;
                tokens.push_back(t);
                return tokens;
            }
            const char c = text_[pos_];
            switch (c) {
            case '|': lex_ket(t); break;
            case ')': t.kind = Tok::RParen; advance(); break;
            case '+': t.kind = Tok::Plus; advance(); break;
            case '-': t.kind = Tok::Minus; advance(); break;
            case '*': t.kind = Tok::Star; advance(); break;
            case '/': t.kind = Tok::Slash; advance(); break;
            case '^': t.kind = Tok::Caret; advance(); break;
            case '(':
                if (tensor_op_ahead()) {
                    t.kind = Tok::TensorOp;
                } else {
                    t.kind = Tok::LParen;
                    advance();
                }
                break;
            default:
                if (std::isdigit(static_cast<unsigned char>(c))) {
                    lex_integer(t);
                } else if (std::isalpha(static_cast<unsigned char>(c))) {
                    lex_word(t);
                } else {
                    throw ParseError(pos_, line_, col_, "a token",
                                     "'" + std::string(1, c) + "'");
                }
            }
            tokens.push_back(std::move(t));
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
    }

    Token make_token() const {
        Token t;
        t.offset = pos_;
        t.line = line_;
        t.column = col_;
        return t;
    }

    // Consumes "( x )" (spaces allowed) and reports whether it matched.
    bool tensor_op_ahead() {
        std::size_t p = pos_ + 1;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        if (p >= text_.size() || text_[p] != 'x') return false;
        ++p;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
        if (p >= text_.size() || text_[p] != ')') return false;
        while (pos_ <= p) advance();
        return true;
    }

    void lex_ket(Token& t) {
        advance(); // '|'
        std::string content;
        while (pos_ < text_.size() && text_[pos_] != '>') {
            content += text_[pos_];
            advance();
        }
        if (pos_ >= text_.size()) {
            throw ParseError(t.offset, t.line, t.column, "'>' closing the ket",
                             "end of input");
        }
        advance(); // '>'
        const bool bitstring =
            !content.empty() &&
            std::all_of(content.begin(), content.end(), [](char c) { return c == '0' || c == '1'; });
        if (!bitstring && content != "+" && content != "-") {
            throw ParseError(t.offset, t.line, t.column, "bitstring, '+' or '-' inside ket",
                             "'" + content + "'");
        }
        t.kind = Tok::Ket;
        t.text = content;
    }

    void lex_integer(Token& t) {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            digits += text_[pos_];
            advance();
        }
        if (digits.size() > 18) {
            throw ParseError(t.offset, t.line, t.column, "an integer below 10^18",
                             "'" + digits + "'");
        }
        t.kind = Tok::Int;
        t.text = digits;
        t.value = std::stoll(digits);
    }

    void lex_word(Token& t) {
        std::string word;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            word += text_[pos_];
            advance();
        }
        if (word == "sqrt") {
            t.kind = Tok::Sqrt;
        } else if (word == "i") {
            t.kind = Tok::ImagUnit;
        } else if (word == "w") {
            t.kind = Tok::Omega;
        } else {
            throw ParseError(t.offset, t.line, t.column, "'sqrt', 'i' or 'w'",
                             "'" + word + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

using NodePtr = std::shared_ptr<const KetNode>;

NodePtr make_basis(std::string bits) {
    auto n = std::make_shared<KetNode>();
    n->kind = KetNode::Kind::BasisKet;
    n->bits = std::move(bits);
    return n;
}

NodePtr make_named(char sign) {
    auto n = std::make_shared<KetNode>();
    n->kind = KetNode::Kind::NamedKet;
    n->named = sign;
    return n;
}

NodePtr make_scale(ExactScalar coeff, NodePtr child) {
    auto n = std::make_shared<KetNode>();
    n->kind = KetNode::Kind::Scale;
    n->coefficient = std::move(coeff);
    n->child = std::move(child);
    return n;
}

NodePtr make_group(KetNode::Kind kind, std::vector<NodePtr> children) {
    if (children.size() == 1) return children.front();
    auto n = std::make_shared<KetNode>();
    n->kind = kind;
    n->children = std::move(children);
    return n;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    NodePtr run() {
        NodePtr node = parse_expr();
        expect_end();
        return node;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError(t.offset, t.line, t.column, expected, describe(t));
    }

    void expect_end() const {
        if (peek().kind != Tok::End) fail("'+', '-' or end of input");
    }

    NodePtr parse_expr() {
        std::vector<NodePtr> children;
        bool negate = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            negate = take().kind == Tok::Minus; // unary sign on the first term
        }
        NodePtr first = parse_term();
        children.push_back(negate ? make_scale(ExactScalar::integer(-1), first) : first);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool minus = take().kind == Tok::Minus;
            NodePtr term = parse_term();
            children.push_back(minus ? make_scale(ExactScalar::integer(-1), term) : term);
        }
        return make_group(KetNode::Kind::Sum, std::move(children));
    }

    NodePtr parse_term() {
        std::optional<ExactScalar> coeff = try_parse_coeff();
        std::vector<NodePtr> factors;
        while (true) {
            if (peek().kind == Tok::Ket) {
                const Token& t = take();
                factors.push_back(t.text == "+" || t.text == "-" ? make_named(t.text[0])
                                                                 : make_basis(t.text));
            } else if (peek().kind == Tok::LParen) {
                take();
                factors.push_back(parse_expr());
                if (peek().kind != Tok::RParen) fail("')'");
                take();
            } else if (!factors.empty() &&
                       (peek().kind == Tok::Star || peek().kind == Tok::TensorOp)) {
                take(); // explicit tensor operator between factors
                if (peek().kind != Tok::Ket && peek().kind != Tok::LParen) {
                    fail("a ket or '('");
                }
            } else {
                break;
            }
        }
        if (factors.empty()) fail("a ket or '('");
        NodePtr node = make_group(KetNode::Kind::Tensor, std::move(factors));
        return coeff ? make_scale(std::move(*coeff), std::move(node)) : node;
    }

    // Coefficient parsing backtracks: a '(' that turns out to contain kets is
    // left for the factor rule.
    std::optional<ExactScalar> try_parse_coeff() {
        const std::size_t save = pos_;
        std::optional<ExactScalar> first = try_parse_scalar();
        if (!first) {
            pos_ = save;
            return std::nullopt;
        }
        ExactScalar acc = std::move(*first);
        while (true) {
            if (peek().kind == Tok::Star) {
                const std::size_t before = pos_;
                take();
                std::optional<ExactScalar> next = try_parse_scalar();
                if (!next) {
                    pos_ = before; // the '*' was a tensor operator
                    break;
                }
                acc = acc * *next;
            } else if (peek().kind == Tok::Slash) {
                const Token& slash = take();
                std::optional<ExactScalar> next = try_parse_scalar();
                if (!next) fail("a scalar after '/'");
                try {
                    acc = acc / *next;
                } catch (const Error& e) {
                    throw ParseError(slash.offset, slash.line, slash.column,
                                     "an invertible scalar divisor", e.what());
                }
            } else {
                break;
            }
        }
        return acc;
    }

    std::optional<ExactScalar> try_parse_scalar() {
        switch (peek().kind) {
        case Tok::Int:
            return ExactScalar::integer(take().value);
        case Tok::Sqrt: {
            take();
            if (peek().kind != Tok::LParen) fail("'(' after sqrt");
            take();
            if (peek().kind != Tok::Int) fail("a positive integer inside sqrt");
            const std::int64_t arg = take().value;
            if (arg < 1) fail("a positive integer inside sqrt");
            if (peek().kind != Tok::RParen) fail("')'");
            take();
            return ExactScalar::sqrt_of(arg);
        }
        case Tok::ImagUnit:
            take();
            return ExactScalar::imaginary_unit();
        case Tok::Omega: {
            take();
            int power = 1;
            if (peek().kind == Tok::Caret) {
                take();
                if (peek().kind != Tok::Int) fail("an integer exponent");
                power = static_cast<int>(take().value % 3);
            }
            return ExactScalar::omega_power(power);
        }
        case Tok::LParen: {
            // "(" coeff { ("+"|"-") coeff } ")" -- or the start of a factor.
            const std::size_t save = pos_;
            take();
            std::optional<ExactScalar> acc = try_parse_coeff();
            if (!acc) {
                pos_ = save;
                return std::nullopt;
            }
            while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
                const bool minus = take().kind == Tok::Minus;
                std::optional<ExactScalar> next = try_parse_coeff();
                if (!next) {
                    pos_ = save;
                    return std::nullopt;
                }
                acc = minus ? *acc - *next : *acc + *next;
            }
            if (peek().kind != Tok::RParen) {
                pos_ = save;
                return std::nullopt;
            }
            take();
            return acc;
        }
        default:
            return std::nullopt;
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

KetExpression parse(std::string_view text) {
    return KetExpression(Parser(Lexer(text).run()).run());
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct Expansion {
    int arity = 0;
    std::map<std::uint64_t, ExactScalar> terms;
};

Expansion expand(const KetNode& node) {
    switch (node.kind) {
    case KetNode::Kind::BasisKet: {
        Expansion e;
        e.arity = static_cast<int>(node.bits.size());
        std::uint64_t index = 0;
        for (char c : node.bits) index = (index << 1) | static_cast<std::uint64_t>(c == '1');
        e.terms.emplace(index, ExactScalar::integer(1));
        return e;
    }
    case KetNode::Kind::NamedKet: {
        Expansion e;
        e.arity = 1;
        const ExactScalar half = ExactScalar::integer(1) / ExactScalar::sqrt_of(2);
        e.terms.emplace(0, half);
        e.terms.emplace(1, node.named == '+' ? half : half.negated());
        return e;
    }
    case KetNode::Kind::Scale: {
        Expansion e = expand(*node.child);
        for (auto& [index, coeff] : e.terms) coeff = node.coefficient * coeff;
        return e;
    }
    case KetNode::Kind::Tensor: {
        Expansion acc = expand(*node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) {
            Expansion rhs = expand(*node.children[i]);
            Expansion merged;
            merged.arity = acc.arity + rhs.arity;
            if (merged.arity > 26) {
                throw TooLargeError("expression spans more than 26 qubits");
            }
            if (acc.terms.size() * rhs.terms.size() > (std::size_t{1} << 20)) {
                throw TooLargeError("expression expands to more than 2^20 terms");
            }
            for (const auto& [ia, ca] : acc.terms) {
                for (const auto& [ib, cb] : rhs.terms) {
                    const std::uint64_t index = (ia << rhs.arity) | ib;
                    const ExactScalar product = ca * cb;
                    auto [it, inserted] = merged.terms.emplace(index, product);
                    if (!inserted) it->second = it->second + product;
                }
            }
            acc = std::move(merged);
        }
        return acc;
    }
    case KetNode::Kind::Sum: {
        Expansion acc = expand(*node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) {
            Expansion rhs = expand(*node.children[i]);
            if (rhs.arity != acc.arity) throw MixedArityError(acc.arity, rhs.arity);
            for (const auto& [index, coeff] : rhs.terms) {
                auto [it, inserted] = acc.terms.emplace(index, coeff);
                if (!inserted) it->second = it->second + coeff;
            }
        }
        return acc;
    }
    }
    throw Error("unreachable ket node kind");
}

} // namespace

StateVector evaluate(const KetExpression& expr, bool normalize) {
    const Expansion e = expand(expr.root());
    if (e.arity < 1) throw Error("expression has no qubits");
    if (e.arity > 26) throw TooLargeError("expression spans more than 26 qubits");
    Vector amps = Vector::Zero(Index{1} << e.arity);
    for (const auto& [index, coeff] : e.terms) {
        amps[static_cast<Index>(index)] = coeff.to_complex();
    }
    const double norm = amps.norm();
    if (norm < 1e-12) throw ZeroStateError();
    if (!normalize && std::abs(norm - 1.0) > 1e-9) throw NotNormalizedError(norm);
    return StateVector::from_amplitudes(amps, true);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string render_node(const KetNode& node);

std::string render_tensor_child(const KetNode& node) {
    if (node.kind == KetNode::Kind::BasisKet || node.kind == KetNode::Kind::NamedKet) {
        return render_node(node);
    }
    return "(" + render_node(node) + ")";
}

std::string render_node(const KetNode& node) {
    switch (node.kind) {
    case KetNode::Kind::BasisKet:
        return "|" + node.bits + ">";
    case KetNode::Kind::NamedKet:
        return std::string("|") + node.named + ">";
    case KetNode::Kind::Scale: {
        const std::string inner = node.child->kind == KetNode::Kind::Sum
                                      ? "(" + render_node(*node.child) + ")"
                                      : render_node(*node.child);
        return node.coefficient.render() + inner;
    }
    case KetNode::Kind::Tensor: {
        std::string out;
        for (const auto& child : node.children) out += render_tensor_child(*child);
        return out;
    }
    case KetNode::Kind::Sum: {
        std::string out = render_node(*node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) {
            const KetNode& child = *node.children[i];
            if (child.kind == KetNode::Kind::Scale &&
                child.coefficient.sign_extractable_negative()) {
                KetNode flipped = child;
                flipped.coefficient = child.coefficient.negated();
                out += " - " + render_node(flipped);
            } else {
                out += " + " + render_node(child);
            }
        }
        return out;
    }
    }
    throw Error("unreachable ket node kind");
}

} // namespace

std::string render(const KetExpression& expr) { return render_node(expr.root()); }

// ---------------------------------------------------------------------------
// Qubit permutation
// ---------------------------------------------------------------------------

StateVector permute_qubits(const StateVector& psi, const std::vector<int>& perm) {
    const int n = psi.qubits();
    if (static_cast<int>(perm.size()) != n) {
        throw BadPermutationError("permutation has " + std::to_string(perm.size()) +
                                  " entries for " + std::to_string(n) + " qubits");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 1 || p > n || seen[static_cast<std::size_t>(p - 1)]) {
            throw BadPermutationError("not a bijection on 1.." + std::to_string(n));
        }
        seen[static_cast<std::size_t>(p - 1)] = true;
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    Vector out(static_cast<Index>(dim));
    for (std::uint64_t index = 0; index < dim; ++index) {
        std::uint64_t target = 0;
        for (int k = 1; k <= n; ++k) {
            const std::uint64_t bit = (index >> (n - k)) & 1U; // qubit k of |index>
            target |= bit << (n - perm[static_cast<std::size_t>(k - 1)]);
        }
        out[static_cast<Index>(target)] = psi.amps()[static_cast<Index>(index)];
    }
    return StateVector::from_amplitudes(out, true);
}

} // namespace qsegre
