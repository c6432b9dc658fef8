#include <algorithm>

#include "cdpmine/model.hpp"

namespace cdpmine {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};

}  // namespace

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    return *a == *b;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const IntLit& x) { return x.value == std::get<IntLit>(b.node).value; },
            [&](const BoolLit& x) { return x.value == std::get<BoolLit>(b.node).value; },
            [&](const SetLit& x) { return x.items == std::get<SetLit>(b.node).items; },
            [&](const VarRef& x) { return x.var == std::get<VarRef>(b.node).var; },
            [&](const FromSolution& x) { return x.name == std::get<FromSolution>(b.node).name; },
            [&](const ParamRef& x) { return x.name == std::get<ParamRef>(b.node).name; },
            [&](const Cardinality& x) { return equal(x.operand, std::get<Cardinality>(b.node).operand); },
            [&](const WeightedSum& x) {
                const auto& y = std::get<WeightedSum>(b.node);
                return x.index == y.index && x.array == y.array && x.subscript == y.subscript && equal(x.domain, y.domain);
            },
            [&](const Unary& x) {
                const auto& y = std::get<Unary>(b.node);
                return x.op == y.op && equal(x.operand, y.operand);
            },
            [&](const Binary& x) {
                const auto& y = std::get<Binary>(b.node);
                return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            },
        },
        a.node);
}

bool operator==(const ModelSpec& a, const ModelSpec& b) {
    if (a.side_constraints.size() != b.side_constraints.size()) return false;
    for (std::size_t k = 0; k < a.side_constraints.size(); ++k)
        if (!equal(a.side_constraints[k], b.side_constraints[k])) return false;
    if (a.dominance.has_value() != b.dominance.has_value()) return false;
    if (a.dominance && !equal(a.dominance->body, b.dominance->body)) return false;
    if (a.incomparability.has_value() != b.incomparability.has_value()) return false;
    if (a.incomparability && (a.incomparability->direction != b.incomparability->direction ||
                              !equal(a.incomparability->body, b.incomparability->body)))
        return false;
    return true;
}

namespace ast {

ExprPtr int_lit(std::int64_t v, SourcePos pos) { return std::make_shared<Expr>(Expr{IntLit{v}, pos}); }
ExprPtr bool_lit(bool v, SourcePos pos) { return std::make_shared<Expr>(Expr{BoolLit{v}, pos}); }
ExprPtr set_lit(Itemset items, SourcePos pos) {
    return std::make_shared<Expr>(Expr{SetLit{make_itemset(std::move(items))}, pos});
}
ExprPtr var(DecisionVar v, SourcePos pos) { return std::make_shared<Expr>(Expr{VarRef{v}, pos}); }
ExprPtr from_solution(std::string name, SourcePos pos) {
    return std::make_shared<Expr>(Expr{FromSolution{std::move(name)}, pos});
}
ExprPtr param(std::string name, SourcePos pos) { return std::make_shared<Expr>(Expr{ParamRef{std::move(name)}, pos}); }
ExprPtr card(ExprPtr operand, SourcePos pos) { return std::make_shared<Expr>(Expr{Cardinality{std::move(operand)}, pos}); }
ExprPtr weighted_sum(std::string index, ExprPtr domain, std::string array, SourcePos pos) {
    std::string subscript = index;
    return std::make_shared<Expr>(
        Expr{WeightedSum{std::move(index), std::move(domain), std::move(array), std::move(subscript)}, pos});
}
ExprPtr unary(UnaryOp op, ExprPtr operand, SourcePos pos) {
    return std::make_shared<Expr>(Expr{Unary{op, std::move(operand)}, pos});
}
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
    return std::make_shared<Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, pos});
}

}  // namespace ast

namespace {

std::string_view op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Implies: return "->";
        case BinaryOp::Or: return "\\/";
        case BinaryOp::And: return "/\\";
        case BinaryOp::Eq: return "=";
        case BinaryOp::Neq: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::SubsetEq: return "subsetEq";
        case BinaryOp::Subset: return "subset";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
    }
    return "?";
}

bool needs_parens(const Expr& child) {
    if (std::holds_alternative<Binary>(child.node)) return true;
    if (const auto* u = std::get_if<Unary>(&child.node)) return u->op == UnaryOp::Not;
    return false;
}

void print(const Expr& e, std::string& out);

void print_operand(const ExprPtr& e, std::string& out) {
    if (needs_parens(*e)) {
        out += '(';
        print(*e, out);
        out += ')';
    } else {
        print(*e, out);
    }
}

void print(const Expr& e, std::string& out) {
    std::visit(overloaded{
                   [&](const IntLit& x) { out += std::to_string(x.value); },
                   [&](const BoolLit& x) { out += x.value ? "true" : "false"; },
                   [&](const SetLit& x) { out += to_string(x.items); },
                   [&](const VarRef& x) { out += x.var == DecisionVar::Itemset ? "itemset" : "support"; },
                   [&](const FromSolution& x) { out += "fromSolution(" + x.name + ")"; },
                   [&](const ParamRef& x) { out += x.name; },
                   [&](const Cardinality& x) {
                       out += '|';
                       print_operand(x.operand, out);
                       out += '|';
                   },
                   [&](const WeightedSum& x) {
                       out += "(sum " + x.index + " in ";
                       print_operand(x.domain, out);
                       out += " . " + x.array + "[" + x.subscript + "])";
                   },
                   [&](const Unary& x) {
                       if (x.op == UnaryOp::Not) {
                           out += '!';
                           print_operand(x.operand, out);
                       } else {
                           out += "-(";
                           print(*x.operand, out);
                           out += ')';
                       }
                   },
                   [&](const Binary& x) {
                       print_operand(x.lhs, out);
                       out += ' ';
                       out += op_text(x.op);
                       out += ' ';
                       print_operand(x.rhs, out);
                   },
               },
               e.node);
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

std::string to_string(const ExprPtr& e) { return e ? to_string(*e) : std::string("<null>"); }

std::string to_string(const ModelSpec& m) {
    std::string out;
    if (!m.side_constraints.empty()) {
        out += "such that\n";
        for (std::size_t k = 0; k < m.side_constraints.size(); ++k) {
            out += "  " + to_string(m.side_constraints[k]);
            out += k + 1 < m.side_constraints.size() ? ",\n" : "\n";
        }
    }
    if (m.dominance) out += "dominance_relation " + to_string(m.dominance->body) + "\n";
    if (m.incomparability) {
        out += "incomparability_function ";
        out += m.incomparability->direction == Direction::Ascending ? "ascending " : "descending ";
        out += to_string(m.incomparability->body) + "\n";
    }
    return out;
}

bool contains_from_solution(const Expr& e) {
    return std::visit(overloaded{
                          [](const FromSolution&) { return true; },
                          [](const Cardinality& x) { return contains_from_solution(*x.operand); },
                          [](const WeightedSum& x) { return contains_from_solution(*x.domain); },
                          [](const Unary& x) { return contains_from_solution(*x.operand); },
                          [](const Binary& x) { return contains_from_solution(*x.lhs) || contains_from_solution(*x.rhs); },
                          [](const auto&) { return false; },
                      },
                      e.node);
}

bool contains_free_variable(const Expr& e) {
    return std::visit(overloaded{
                          [](const VarRef&) { return true; },
                          [](const Cardinality& x) { return contains_free_variable(*x.operand); },
                          [](const WeightedSum& x) { return contains_free_variable(*x.domain); },
                          [](const Unary& x) { return contains_free_variable(*x.operand); },
                          [](const Binary& x) { return contains_free_variable(*x.lhs) || contains_free_variable(*x.rhs); },
                          [](const auto&) { return false; },
                      },
                      e.node);
}

bool is_itemset_cardinality(const Expr& e) {
    const auto* c = std::get_if<Cardinality>(&e.node);
    if (!c) return false;
    const auto* v = std::get_if<VarRef>(&c->operand->node);
    return v && v->var == DecisionVar::Itemset;
}

}  // namespace cdpmine
