#include <algorithm>

#include "cdpmine/model.hpp"

namespace cdpmine {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};

const Itemset& as_set(const Value& v) { return std::get<Itemset>(v); }
std::int64_t as_int(const Value& v) { return std::get<std::int64_t>(v); }
bool as_bool(const Value& v) { return std::get<bool>(v); }

std::int64_t param_value(const std::string& name, const EvalContext& ctx) {
    if (ctx.params) {
        auto it = ctx.params->find(name);
        if (it != ctx.params->end()) return it->second;
    }
    throw UnboundVariable(name);
}

Value eval_binary(const Binary& b, const EvalContext& ctx) {
    switch (b.op) {
        case BinaryOp::Implies: return !as_bool(eval_expr(*b.lhs, ctx)) || as_bool(eval_expr(*b.rhs, ctx));
        case BinaryOp::Or: return as_bool(eval_expr(*b.lhs, ctx)) || as_bool(eval_expr(*b.rhs, ctx));
        case BinaryOp::And: return as_bool(eval_expr(*b.lhs, ctx)) && as_bool(eval_expr(*b.rhs, ctx));
        default: break;
    }
    const Value l = eval_expr(*b.lhs, ctx);
    const Value r = eval_expr(*b.rhs, ctx);
    switch (b.op) {
        case BinaryOp::Eq: return l == r;
        case BinaryOp::Neq: return l != r;
        case BinaryOp::Lt: return as_int(l) < as_int(r);
        case BinaryOp::Le: return as_int(l) <= as_int(r);
        case BinaryOp::Gt: return as_int(l) > as_int(r);
        case BinaryOp::Ge: return as_int(l) >= as_int(r);
        case BinaryOp::SubsetEq: return is_subset(as_set(l), as_set(r));
        case BinaryOp::Subset: return as_set(l).size() < as_set(r).size() && is_subset(as_set(l), as_set(r));
        case BinaryOp::Add: return as_int(l) + as_int(r);
        case BinaryOp::Sub: return as_int(l) - as_int(r);
        case BinaryOp::Mul: return as_int(l) * as_int(r);
        default: break;
    }
    return false;
}

}  // namespace

Value eval_expr(const Expr& e, const EvalContext& ctx) {
    return std::visit(
        overloaded{
            [](const IntLit& x) -> Value { return x.value; },
            [](const BoolLit& x) -> Value { return x.value; },
            [](const SetLit& x) -> Value { return x.items; },
            [&](const VarRef& v) -> Value {
                if (v.var == DecisionVar::Support && ctx.support) return *ctx.support;
                if (!ctx.itemset) throw UnboundVariable(v.var == DecisionVar::Itemset ? "itemset" : "support");
                if (v.var == DecisionVar::Itemset) return *ctx.itemset;
                if (ctx.db) return static_cast<std::int64_t>(support(*ctx.db, *ctx.itemset));
                throw UnboundVariable("support");
            },
            [&](const FromSolution& f) -> Value {
                if (!ctx.from_solution) throw UnboundSolutionVariable(f.name);
                if (f.name == "itemset") return ctx.from_solution->itemset;
                if (f.name == "support") return ctx.from_solution->support;
                throw UnboundSolutionVariable(f.name);
            },
            [&](const ParamRef& p) -> Value { return param_value(p.name, ctx); },
            [&](const Cardinality& c) -> Value {
                return static_cast<std::int64_t>(as_set(eval_expr(*c.operand, ctx)).size());
            },
            [&](const WeightedSum& s) -> Value {
                const auto weights = s.array == "values" ? ctx.values : ctx.costs;
                const Itemset items = as_set(eval_expr(*s.domain, ctx));
                if (!items.empty() && weights.size() <= items.back()) throw UnboundVariable(s.array);
                return total_weight(weights, items);
            },
            [&](const Unary& u) -> Value {
                if (u.op == UnaryOp::Not) return !as_bool(eval_expr(*u.operand, ctx));
                return -as_int(eval_expr(*u.operand, ctx));
            },
            [&](const Binary& b) -> Value { return eval_binary(b, ctx); },
        },
        e.node);
}

bool eval_bool(const Expr& e, const EvalContext& ctx) { return as_bool(eval_expr(e, ctx)); }
std::int64_t eval_int(const Expr& e, const EvalContext& ctx) { return as_int(eval_expr(e, ctx)); }

namespace {

bool is_literal(const Expr& e) {
    return std::holds_alternative<IntLit>(e.node) || std::holds_alternative<BoolLit>(e.node) ||
           std::holds_alternative<SetLit>(e.node);
}

ExprPtr literal_of(const Value& v, SourcePos pos) {
    return std::visit(overloaded{
                          [&](std::int64_t x) { return ast::int_lit(x, pos); },
                          [&](bool x) { return ast::bool_lit(x, pos); },
                          [&](const Itemset& x) { return ast::set_lit(x, pos); },
                      },
                      v);
}

// Substitutes fromSolution terms and folds subterms that become closed.
ExprPtr substitute(const ExprPtr& e, const Solution& sol) {
    return std::visit(
        overloaded{
            [&](const FromSolution& f) -> ExprPtr {
                if (f.name == "itemset") return ast::set_lit(sol.itemset, e->pos);
                if (f.name == "support") return ast::int_lit(sol.support, e->pos);
                throw UnboundSolutionVariable(f.name);
            },
            [&](const Cardinality& c) -> ExprPtr {
                ExprPtr inner = substitute(c.operand, sol);
                if (const auto* s = std::get_if<SetLit>(&inner->node))
                    return ast::int_lit(static_cast<std::int64_t>(s->items.size()), e->pos);
                return ast::card(inner, e->pos);
            },
            [&](const WeightedSum& s) -> ExprPtr {
                return std::make_shared<Expr>(Expr{WeightedSum{s.index, substitute(s.domain, sol), s.array, s.subscript}, e->pos});
            },
            [&](const Unary& u) -> ExprPtr {
                ExprPtr inner = substitute(u.operand, sol);
                if (is_literal(*inner)) return literal_of(eval_expr(*ast::unary(u.op, inner), EvalContext{}), e->pos);
                return ast::unary(u.op, inner, e->pos);
            },
            [&](const Binary& b) -> ExprPtr {
                ExprPtr l = substitute(b.lhs, sol);
                ExprPtr r = substitute(b.rhs, sol);
                if (is_literal(*l) && is_literal(*r))
                    return literal_of(eval_expr(*ast::binary(b.op, l, r), EvalContext{}), e->pos);
                if (b.op == BinaryOp::SubsetEq) {
                    if (const auto* s = std::get_if<SetLit>(&l->node); s && s->items.empty()) return ast::bool_lit(true, e->pos);
                }
                return ast::binary(b.op, l, r, e->pos);
            },
            [&](const auto&) -> ExprPtr { return e; },
        },
        e->node);
}

}  // namespace

BlockingConstraint substitute_solution(const DominanceRelation& rel, const Solution& sol) {
    return BlockingConstraint{substitute(rel.body, sol), sol};
}

ParamMap instance_params(const MiningInstance& inst) {
    return ParamMap{
        {"min_value", inst.min_value},
        {"max_cost", inst.max_cost},
        {"theta", static_cast<std::int64_t>(inst.theta)},
        {"n_transactions", static_cast<std::int64_t>(inst.n_transactions())},
        {"n_items", static_cast<std::int64_t>(inst.n_items())},
    };
}

}  // namespace cdpmine
