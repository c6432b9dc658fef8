#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cdpmine/model.hpp"

namespace cdpmine {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k) out += k + 1 == expected.size() ? " or " : ", ";
        out += expected[k];
    }
    return out;
}

}  // namespace

SyntaxError::SyntaxError(SourcePos pos, std::vector<std::string> expected, std::string found)
    : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": syntax error: expected " +
            join_expected(expected) + ", found " + found),
      pos_(pos),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Bar,
    Comma,
    Dot,
    Arrow,
    Neq,
    Le,
    Ge,
    Lt,
    Gt,
    Eq,
    And,
    Or,
    Bang,
    Plus,
    Minus,
    Star,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourcePos pos = pos_;
            if (at_ >= src_.size()) {
                out.push_back({Tok::End, "", pos});
                return out;
            }
            const char c = src_[at_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t end = at_;
                while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) ++end;
                out.push_back({Tok::Ident, std::string(src_.substr(at_, end - at_)), pos});
                advance(end - at_);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t end = at_;
                while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
                out.push_back({Tok::Int, std::string(src_.substr(at_, end - at_)), pos});
                advance(end - at_);
                continue;
            }
            static constexpr std::array<std::pair<std::string_view, Tok>, 22> kPunct{{
                {"->", Tok::Arrow}, {"!=", Tok::Neq}, {"<=", Tok::Le}, {">=", Tok::Ge}, {"/\\", Tok::And},
                {"\\/", Tok::Or},   {"(", Tok::LParen}, {")", Tok::RParen}, {"{", Tok::LBrace}, {"}", Tok::RBrace},
                {"[", Tok::LBracket}, {"]", Tok::RBracket}, {"|", Tok::Bar}, {",", Tok::Comma}, {".", Tok::Dot},
                {"<", Tok::Lt}, {">", Tok::Gt}, {"=", Tok::Eq}, {"!", Tok::Bang}, {"+", Tok::Plus}, {"-", Tok::Minus},
                {"*", Tok::Star},
            }};
            bool matched = false;
            for (const auto& [text, kind] : kPunct) {
                if (src_.substr(at_, text.size()) == text) {
                    out.push_back({kind, std::string(text), pos});
                    advance(text.size());
                    matched = true;
                    break;
                }
            }
            if (!matched) throw SyntaxError(pos, {"token"}, "'" + std::string(1, c) + "'");
        }
    }

private:
    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++at_) {
            if (src_[at_] == '\n') {
                ++pos_.line;
                pos_.column = 1;
            } else {
                ++pos_.column;
            }
        }
    }

    void skip_space() {
        while (at_ < src_.size()) {
            if (src_[at_] == '$') {
                while (at_ < src_.size() && src_[at_] != '\n') advance(1);
            } else if (std::isspace(static_cast<unsigned char>(src_[at_]))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t at_ = 0;
    SourcePos pos_;
};

constexpr std::array<std::string_view, 16> kReserved{
    "such", "that", "dominance_relation", "incomparability_function", "ascending", "descending", "sum", "in",
    "subsetEq", "subset", "fromSolution", "itemset", "support", "true", "false", "language",
};

bool is_reserved(std::string_view s) { return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end(); }

bool is_statement_start(const Token& t) {
    return t.kind == Tok::Ident && (t.text == "such" || t.text == "dominance_relation" || t.text == "incomparability_function");
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ModelSpec model() {
        ModelSpec spec;
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (t.kind == Tok::Ident && t.text == "such") {
                next();
                expect_ident("that");
                spec.side_constraints.push_back(expr());
                while (peek().kind == Tok::Comma) {
                    next();
                    spec.side_constraints.push_back(expr());
                }
            } else if (t.kind == Tok::Ident && t.text == "dominance_relation") {
                if (spec.dominance) throw TypeError(t.pos, "duplicate dominance_relation statement");
                next();
                spec.dominance = DominanceRelation{expr()};
            } else if (t.kind == Tok::Ident && t.text == "incomparability_function") {
                if (spec.incomparability) throw TypeError(t.pos, "duplicate incomparability_function statement");
                next();
                const Token& d = peek();
                Direction dir;
                if (d.kind == Tok::Ident && d.text == "ascending") {
                    dir = Direction::Ascending;
                } else if (d.kind == Tok::Ident && d.text == "descending") {
                    dir = Direction::Descending;
                } else {
                    throw SyntaxError(d.pos, {"'ascending'", "'descending'"}, describe(d));
                }
                next();
                spec.incomparability = IncomparabilityFn{dir, expr()};
                incomparability_pos_ = t.pos;
            } else {
                throw SyntaxError(t.pos, {"'such that'", "'dominance_relation'", "'incomparability_function'"}, describe(t));
            }
            const Token& after = peek();
            if (after.kind != Tok::End && !is_statement_start(after))
                throw SyntaxError(after.pos, {"operator", "','", "statement", "end of input"}, describe(after));
        }
        return spec;
    }

    ExprPtr standalone_expr() {
        ExprPtr e = expr();
        if (peek().kind != Tok::End) throw SyntaxError(peek().pos, {"operator", "end of input"}, describe(peek()));
        return e;
    }

    SourcePos incomparability_pos() const { return incomparability_pos_; }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(at_ + ahead, toks_.size() - 1)]; }
    const Token& next() { return toks_[std::min(at_++, toks_.size() - 1)]; }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) throw SyntaxError(peek().pos, {what}, describe(peek()));
        return next();
    }

    void expect_ident(std::string_view word) {
        if (peek().kind != Tok::Ident || peek().text != word)
            throw SyntaxError(peek().pos, {"'" + std::string(word) + "'"}, describe(peek()));
        next();
    }

    std::string plain_ident(const char* what) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || is_reserved(t.text)) throw SyntaxError(t.pos, {what}, describe(t));
        next();
        return t.text;
    }

    ExprPtr expr() { return implication(); }

    ExprPtr implication() {
        ExprPtr lhs = disjunction();
        if (peek().kind == Tok::Arrow) {
            SourcePos pos = next().pos;
            return ast::binary(BinaryOp::Implies, lhs, implication(), pos);
        }
        return lhs;
    }

    ExprPtr disjunction() {
        ExprPtr lhs = conjunction();
        while (peek().kind == Tok::Or) {
            SourcePos pos = next().pos;
            lhs = ast::binary(BinaryOp::Or, lhs, conjunction(), pos);
        }
        return lhs;
    }

    ExprPtr conjunction() {
        ExprPtr lhs = negation();
        while (peek().kind == Tok::And) {
            SourcePos pos = next().pos;
            lhs = ast::binary(BinaryOp::And, lhs, negation(), pos);
        }
        return lhs;
    }

    ExprPtr negation() {
        if (peek().kind == Tok::Bang) {
            SourcePos pos = next().pos;
            return ast::unary(UnaryOp::Not, negation(), pos);
        }
        return comparison();
    }

    std::optional<BinaryOp> comparison_op() const {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Eq: return BinaryOp::Eq;
            case Tok::Neq: return BinaryOp::Neq;
            case Tok::Lt: return BinaryOp::Lt;
            case Tok::Le: return BinaryOp::Le;
            case Tok::Gt: return BinaryOp::Gt;
            case Tok::Ge: return BinaryOp::Ge;
            case Tok::Ident:
                if (t.text == "subsetEq") return BinaryOp::SubsetEq;
                if (t.text == "subset") return BinaryOp::Subset;
                return std::nullopt;
            default: return std::nullopt;
        }
    }

    ExprPtr comparison() {
        ExprPtr lhs = additive();
        if (auto op = comparison_op()) {
            SourcePos pos = next().pos;
            return ast::binary(*op, lhs, additive(), pos);
        }
        return lhs;
    }

    ExprPtr additive() {
        ExprPtr lhs = multiplicative();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& t = next();
            lhs = ast::binary(t.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub, lhs, multiplicative(), t.pos);
        }
        return lhs;
    }

    ExprPtr multiplicative() {
        ExprPtr lhs = prefix();
        while (peek().kind == Tok::Star) {
            SourcePos pos = next().pos;
            lhs = ast::binary(BinaryOp::Mul, lhs, prefix(), pos);
        }
        return lhs;
    }

    ExprPtr prefix() {
        if (peek().kind == Tok::Minus) {
            SourcePos pos = next().pos;
            if (peek().kind == Tok::Int) return ast::int_lit(-integer(), pos);
            return ast::unary(UnaryOp::Negate, prefix(), pos);
        }
        return atom();
    }

    std::int64_t integer() {
        const Token& t = expect(Tok::Int, "integer");
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc()) throw SyntaxError(t.pos, {"integer within 64-bit range"}, describe(t));
        return v;
    }

    ExprPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: return ast::int_lit(integer(), t.pos);
            case Tok::Bar: {
                next();
                ExprPtr inner = additive();
                expect(Tok::Bar, "'|'");
                return ast::card(inner, t.pos);
            }
            case Tok::LBrace: {
                next();
                Itemset items;
                if (peek().kind != Tok::RBrace) {
                    items.push_back(static_cast<ItemId>(integer()));
                    while (peek().kind == Tok::Comma) {
                        next();
                        items.push_back(static_cast<ItemId>(integer()));
                    }
                }
                expect(Tok::RBrace, "'}'");
                return ast::set_lit(std::move(items), t.pos);
            }
            case Tok::LParen: {
                next();
                if (peek().kind == Tok::Ident && peek().text == "sum") return sum_body(t.pos);
                ExprPtr inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: {
                if (t.text == "itemset") {
                    next();
                    return ast::var(DecisionVar::Itemset, t.pos);
                }
                if (t.text == "support") {
                    next();
                    return ast::var(DecisionVar::Support, t.pos);
                }
                if (t.text == "true" || t.text == "false") {
                    next();
                    return ast::bool_lit(t.text == "true", t.pos);
                }
                if (t.text == "fromSolution") {
                    next();
                    expect(Tok::LParen, "'('");
                    const Token& name = peek();
                    if (name.kind != Tok::Ident) throw SyntaxError(name.pos, {"variable name"}, describe(name));
                    next();
                    expect(Tok::RParen, "')'");
                    return ast::from_solution(name.text, t.pos);
                }
                if (!is_reserved(t.text)) {
                    next();
                    return ast::param(t.text, t.pos);
                }
                break;
            }
            default: break;
        }
        throw SyntaxError(t.pos, {"expression"}, describe(t));
    }

    // After "(" with "sum" next: sum <ident> in <set> . <array>[<ident>] ")"
    ExprPtr sum_body(SourcePos pos) {
        next();
        std::string index = plain_ident("index variable");
        expect_ident("in");
        ExprPtr domain = prefix();
        expect(Tok::Dot, "'.'");
        std::string array = plain_ident("array name");
        expect(Tok::LBracket, "'['");
        std::string subscript = plain_ident("index variable");
        expect(Tok::RBracket, "']'");
        expect(Tok::RParen, "')'");
        return std::make_shared<Expr>(Expr{WeightedSum{std::move(index), std::move(domain), std::move(array), std::move(subscript)}, pos});
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
    SourcePos incomparability_pos_;
};

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};

const char* type_name(ValueType t) {
    switch (t) {
        case ValueType::Int: return "int";
        case ValueType::Bool: return "bool";
        case ValueType::Set: return "set";
    }
    return "?";
}

void require(ValueType got, ValueType want, const Expr& at, const char* context) {
    if (got != want)
        throw TypeError(at.pos, std::string(context) + " expects " + type_name(want) + ", got " + type_name(got));
}

}  // namespace

ValueType check_expr(const Expr& e, bool allow_from_solution) {
    return std::visit(
        overloaded{
            [](const IntLit&) { return ValueType::Int; },
            [](const BoolLit&) { return ValueType::Bool; },
            [](const SetLit&) { return ValueType::Set; },
            [](const VarRef& v) { return v.var == DecisionVar::Itemset ? ValueType::Set : ValueType::Int; },
            [&](const FromSolution& f) {
                if (!allow_from_solution) throw TypeError(e.pos, "fromSolution is only allowed inside dominance_relation");
                if (f.name == "itemset") return ValueType::Set;
                if (f.name == "support") return ValueType::Int;
                throw TypeError(e.pos, "unknown decision variable '" + f.name + "'");
            },
            [&](const ParamRef& p) {
                if (p.name == "values" || p.name == "costs")
                    throw TypeError(e.pos, "array '" + p.name + "' can only be used inside a sum");
                if (std::find(std::begin(kParamNames), std::end(kParamNames), p.name) == std::end(kParamNames))
                    throw TypeError(e.pos, "unknown identifier '" + p.name + "'");
                return ValueType::Int;
            },
            [&](const Cardinality& c) {
                require(check_expr(*c.operand, allow_from_solution), ValueType::Set, *c.operand, "|.|");
                return ValueType::Int;
            },
            [&](const WeightedSum& s) {
                require(check_expr(*s.domain, allow_from_solution), ValueType::Set, *s.domain, "sum domain");
                if (s.array != "values" && s.array != "costs") throw TypeError(e.pos, "unknown array '" + s.array + "'");
                if (s.subscript != s.index)
                    throw TypeError(e.pos, "sum must index '" + s.array + "' by its bound variable '" + s.index + "'");
                return ValueType::Int;
            },
            [&](const Unary& u) {
                const ValueType want = u.op == UnaryOp::Not ? ValueType::Bool : ValueType::Int;
                require(check_expr(*u.operand, allow_from_solution), want, *u.operand, u.op == UnaryOp::Not ? "'!'" : "unary '-'");
                return want;
            },
            [&](const Binary& b) {
                const ValueType lt = check_expr(*b.lhs, allow_from_solution);
                const ValueType rt = check_expr(*b.rhs, allow_from_solution);
                switch (b.op) {
                    case BinaryOp::Implies:
                    case BinaryOp::Or:
                    case BinaryOp::And:
                        require(lt, ValueType::Bool, *b.lhs, "boolean connective");
                        require(rt, ValueType::Bool, *b.rhs, "boolean connective");
                        return ValueType::Bool;
                    case BinaryOp::Eq:
                    case BinaryOp::Neq:
                        if (lt != rt)
                            throw TypeError(e.pos, std::string("cannot compare ") + type_name(lt) + " with " + type_name(rt));
                        return ValueType::Bool;
                    case BinaryOp::Lt:
                    case BinaryOp::Le:
                    case BinaryOp::Gt:
                    case BinaryOp::Ge:
                        require(lt, ValueType::Int, *b.lhs, "ordering comparison");
                        require(rt, ValueType::Int, *b.rhs, "ordering comparison");
                        return ValueType::Bool;
                    case BinaryOp::SubsetEq:
                    case BinaryOp::Subset:
                        require(lt, ValueType::Set, *b.lhs, "subset comparison");
                        require(rt, ValueType::Set, *b.rhs, "subset comparison");
                        return ValueType::Bool;
                    case BinaryOp::Add:
                    case BinaryOp::Sub:
                    case BinaryOp::Mul:
                        require(lt, ValueType::Int, *b.lhs, "arithmetic");
                        require(rt, ValueType::Int, *b.rhs, "arithmetic");
                        return ValueType::Int;
                }
                return ValueType::Bool;
            },
        },
        e.node);
}

namespace {

void check_model(const ModelSpec& spec, SourcePos incomparability_pos) {
    for (const auto& c : spec.side_constraints) require(check_expr(*c, false), ValueType::Bool, *c, "side constraint");
    if (spec.dominance) {
        const Expr& body = *spec.dominance->body;
        require(check_expr(body, true), ValueType::Bool, body, "dominance_relation");
        if (!contains_from_solution(body)) throw TypeError(body.pos, "dominance_relation must reference fromSolution(...)");
        if (!contains_free_variable(body))
            throw TypeError(body.pos, "dominance_relation must reference the candidate's itemset or support");
    }
    if (spec.incomparability) {
        if (!spec.dominance) throw TypeError(incomparability_pos, "incomparability_function requires a dominance_relation");
        const Expr& body = *spec.incomparability->body;
        require(check_expr(body, false), ValueType::Int, body, "incomparability_function");
    }
}

constexpr std::string_view kFrequentText =
    "such that\n"
    "  (sum item in itemset . values[item]) >= min_value,\n"
    "  (sum item in itemset . costs[item]) <= max_cost\n";

constexpr std::string_view kGeneratorText =
    "such that\n"
    "  (sum item in itemset . values[item]) >= min_value,\n"
    "  (sum item in itemset . costs[item]) <= max_cost\n"
    "dominance_relation (fromSolution(itemset) subsetEq itemset)\n"
    "                    -> (support != fromSolution(support))\n"
    "incomparability_function ascending |itemset|\n";

constexpr std::string_view kClosedText =
    "such that\n"
    "  (sum item in itemset . values[item]) >= min_value,\n"
    "  (sum item in itemset . costs[item]) <= max_cost\n"
    "dominance_relation (itemset subsetEq fromSolution(itemset))\n"
    "                    -> (support != fromSolution(support))\n"
    "incomparability_function descending |itemset|\n";

ModelSpec parse_tokens(std::vector<Token> tokens) {
    Parser p(std::move(tokens));
    ModelSpec spec = p.model();
    check_model(spec, p.incomparability_pos());
    return spec;
}

}  // namespace

std::optional<Task> parse_task(std::string_view name) {
    if (name == "frequent") return Task::Frequent;
    if (name == "generator") return Task::Generator;
    if (name == "closed") return Task::Closed;
    return std::nullopt;
}

std::string_view task_name(Task task) {
    switch (task) {
        case Task::Frequent: return "frequent";
        case Task::Generator: return "generator";
        case Task::Closed: return "closed";
    }
    return "?";
}

std::string_view builtin_model_text(Task task) {
    switch (task) {
        case Task::Frequent: return kFrequentText;
        case Task::Generator: return kGeneratorText;
        case Task::Closed: return kClosedText;
    }
    return {};
}

ModelSpec builtin_model(Task task) { return parse_tokens(Lexer(builtin_model_text(task)).run()); }

ModelSpec parse_model(std::string_view text) {
    std::vector<Token> tokens = Lexer(text).run();
    if (tokens.size() == 2 && tokens[0].kind == Tok::Ident) {
        if (auto task = parse_task(tokens[0].text)) return builtin_model(*task);
    }
    return parse_tokens(std::move(tokens));
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

ExprPtr parse_expr(std::string_view text, bool allow_from_solution) {
    Parser p(Lexer(text).run());
    ExprPtr e = p.standalone_expr();
    check_expr(*e, allow_from_solution);
    return e;
}

}  // namespace cdpmine
