#include <random>

#include "cdpmine/model.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "parser_cases.hpp"

using namespace cdpmine;
using namespace cdpmine::testing;

namespace {

Solution sol(Itemset items, std::int64_t support) {
    const auto level = static_cast<std::int64_t>(items.size());
    return Solution{std::move(items), support, level};
}

bool holds(const ExprPtr& body, const Itemset& x, std::int64_t support) {
    EvalContext ctx;
    ctx.itemset = &x;
    ctx.support = support;
    return eval_bool(*body, ctx);
}

// Random well-typed expression of the requested type.
class ExprGen {
public:
    explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

    ExprPtr of(ValueType t, int depth) {
        using namespace ast;
        const bool leaf = depth <= 0 || rng_() % 3 == 0;
        switch (t) {
            case ValueType::Int:
                if (leaf) {
                    switch (rng_() % 6) {
                        case 0: return int_lit(static_cast<std::int64_t>(rng_() % 200) - 100);
                        case 1: return var(DecisionVar::Support);
                        case 2: return param(std::string(kParamNames[rng_() % 5]));
                        case 3: return card(var(DecisionVar::Itemset));
                        case 4: return weighted_sum("i", var(DecisionVar::Itemset), rng_() % 2 ? "values" : "costs");
                        default: return from_solution("support");
                    }
                }
                switch (rng_() % 5) {
                    case 0: return unary(UnaryOp::Negate, of(ValueType::Int, depth - 1));
                    case 1: return card(of(ValueType::Set, depth - 1));
                    case 2: return weighted_sum("item", of(ValueType::Set, depth - 1), "values");
                    default: {
                        const BinaryOp ops[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
                        return binary(ops[rng_() % 3], of(ValueType::Int, depth - 1), of(ValueType::Int, depth - 1));
                    }
                }
            case ValueType::Set:
                switch (rng_() % 3) {
                    case 0: return var(DecisionVar::Itemset);
                    case 1: return from_solution("itemset");
                    default: {
                        Itemset s;
                        for (ItemId i = 0; i < 6; ++i)
                            if (rng_() % 2) s.push_back(i);
                        return set_lit(s);
                    }
                }
            case ValueType::Bool:
                if (leaf) return bool_lit(rng_() % 2 == 0);
                switch (rng_() % 4) {
                    case 0: return unary(UnaryOp::Not, of(ValueType::Bool, depth - 1));
                    case 1: {
                        const BinaryOp ops[] = {BinaryOp::Implies, BinaryOp::Or, BinaryOp::And};
                        return binary(ops[rng_() % 3], of(ValueType::Bool, depth - 1), of(ValueType::Bool, depth - 1));
                    }
                    case 2: {
                        const BinaryOp ops[] = {BinaryOp::Eq, BinaryOp::Neq, BinaryOp::Lt, BinaryOp::Le, BinaryOp::Gt, BinaryOp::Ge};
                        return binary(ops[rng_() % 6], of(ValueType::Int, depth - 1), of(ValueType::Int, depth - 1));
                    }
                    default: {
                        const BinaryOp ops[] = {BinaryOp::SubsetEq, BinaryOp::Subset, BinaryOp::Eq};
                        return binary(ops[rng_() % 3], of(ValueType::Set, depth - 1), of(ValueType::Set, depth - 1));
                    }
                }
        }
        return nullptr;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("generator listing parses to the documented AST") {
    const ModelSpec m = parse_model(kGeneratorListing);
    CHECK(m == expected_generator_model());
    CHECK(builtin_model(Task::Generator) == expected_generator_model());
    CHECK(parse_model("generator") == expected_generator_model());
    CHECK(parse_model("  generator  $ built in\n") == expected_generator_model());
}

TEST_CASE("closed and frequent built-ins") {
    const ModelSpec closed = parse_model("closed");
    REQUIRE(closed.dominance);
    REQUIRE(closed.incomparability);
    CHECK(closed.incomparability->direction == Direction::Descending);
    CHECK(equal(closed.dominance->body, parse_expr("(itemset subsetEq fromSolution(itemset)) -> (support != fromSolution(support))")));
    const ModelSpec freq = parse_model("frequent");
    CHECK(!freq.dominance);
    CHECK(freq.side_constraints.size() == 2);
}

TEST_CASE("dominance relation alone is a valid model") {
    const ModelSpec m = parse_model("dominance_relation (itemset subsetEq fromSolution(itemset))");
    CHECK(m.dominance);
    CHECK(!m.incomparability);
    CHECK(m.side_constraints.empty());
}

TEST_CASE("precedence") {
    CHECK(equal(parse_expr("true -> false -> true"),
                ast::binary(BinaryOp::Implies, ast::bool_lit(true),
                            ast::binary(BinaryOp::Implies, ast::bool_lit(false), ast::bool_lit(true)))));
    CHECK(equal(parse_expr("1 + 2 * 3 = 7 /\\ !true \\/ false"),
                ast::binary(BinaryOp::Or,
                            ast::binary(BinaryOp::And,
                                        ast::binary(BinaryOp::Eq,
                                                    ast::binary(BinaryOp::Add, ast::int_lit(1),
                                                                ast::binary(BinaryOp::Mul, ast::int_lit(2), ast::int_lit(3))),
                                                    ast::int_lit(7)),
                                        ast::unary(UnaryOp::Not, ast::bool_lit(true))),
                            ast::bool_lit(false))));
    CHECK(equal(parse_expr("1 - 2 - 3"), ast::binary(BinaryOp::Sub, ast::binary(BinaryOp::Sub, ast::int_lit(1), ast::int_lit(2)),
                                                     ast::int_lit(3))));
    CHECK(equal(parse_expr("-3 * -(support)"),
                ast::binary(BinaryOp::Mul, ast::int_lit(-3), ast::unary(UnaryOp::Negate, ast::var(DecisionVar::Support)))));
}

TEST_CASE("malformed inputs report positioned errors") {
    for (const auto& c : malformed_cases()) {
        INFO(c.text);
        const CaseOutcome out = run_malformed_case(c);
        INFO(out.detail);
        CHECK(out.ok);
    }
}

TEST_CASE("syntax errors name what was expected") {
    try {
        parse_model("incomparability_function |itemset|");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.expected() == std::vector<std::string>{"'ascending'", "'descending'"});
        CHECK(e.found() == "'|'");
        CHECK(std::string(e.what()) == "1:26: syntax error: expected 'ascending' or 'descending', found '|'");
    }
}

TEST_CASE("ill-typed incomparability function") {
    CHECK_THROWS_AS(parse_model(std::string(kGeneratorDominance) + "\nincomparability_function ascending support + itemset"),
                    TypeError);
    CHECK_THROWS_AS(parse_model(std::string(kGeneratorDominance) + "\nincomparability_function ascending |fromSolution(itemset)|"),
                    TypeError);
    CHECK_THROWS_AS(parse_model("incomparability_function ascending |itemset|"), TypeError);
}

TEST_CASE("print/parse round-trip on the built-ins") {
    for (Task t : {Task::Frequent, Task::Generator, Task::Closed}) {
        const ModelSpec m = builtin_model(t);
        CHECK(parse_model(to_string(m)) == m);
    }
}

TEST_CASE("print/parse round-trip on random expressions") {
    ExprGen gen(7);
    for (int k = 0; k < 2000; ++k) {
        const ExprPtr e = gen.of(ValueType::Bool, 5);
        const std::string text = to_string(e);
        INFO(text);
        ExprPtr back;
        REQUIRE_NOTHROW(back = parse_expr(text, true));
        CHECK(equal(back, e));
        CHECK(to_string(back) == text);
    }
}

TEST_CASE("eval examples") {
    const Itemset x{0, 1};
    const std::vector<std::int64_t> values{3, 2, 4};
    const ParamMap params{{"min_value", 5}};
    EvalContext ctx;
    ctx.itemset = &x;
    ctx.values = values;
    ctx.params = &params;
    CHECK(eval_bool(*parse_expr("(sum item in itemset . values[item]) >= min_value"), ctx));
    ParamMap stricter{{"min_value", 6}};
    ctx.params = &stricter;
    CHECK_FALSE(eval_bool(*parse_expr("(sum item in itemset . values[item]) >= min_value"), ctx));

    const Itemset empty;
    EvalContext e;
    e.itemset = &empty;
    CHECK(eval_int(*parse_expr("|itemset|"), e) == 0);

    const ModelSpec gen = builtin_model(Task::Generator);
    const Solution from = sol({2}, 2);
    const Itemset cand{1, 2};
    EvalContext d;
    d.itemset = &cand;
    d.support = 2;
    d.from_solution = &from;
    CHECK_FALSE(eval_bool(*gen.dominance->body, d));
}

TEST_CASE("eval errors") {
    EvalContext ctx;
    CHECK_THROWS_AS(eval_expr(*parse_expr("|itemset|"), ctx), UnboundVariable);
    CHECK_THROWS_AS(eval_expr(*parse_expr("support > 1"), ctx), UnboundVariable);
    CHECK_THROWS_AS(eval_expr(*parse_expr("min_value > 1"), ctx), UnboundVariable);
    CHECK_THROWS_AS(eval_expr(*parse_expr("fromSolution(support) > 1"), ctx), UnboundSolutionVariable);
    const Itemset x{4};
    ctx.itemset = &x;
    CHECK_THROWS_AS(eval_expr(*parse_expr("(sum i in itemset . values[i]) > 1"), ctx), UnboundVariable);
}

TEST_CASE("support falls back to the database") {
    auto db = tiny_db();
    const Itemset x{2};
    EvalContext ctx;
    ctx.itemset = &x;
    ctx.db = db.get();
    CHECK(eval_int(*parse_expr("support"), ctx) == 2);
}

TEST_CASE("substitution examples") {
    const ModelSpec gen = builtin_model(Task::Generator);
    const BlockingConstraint b = substitute_solution(*gen.dominance, sol({2}, 2));
    CHECK(to_string(b.body) == "({2} subsetEq itemset) -> (support != 2)");
    CHECK(b.origin == sol({2}, 2));
    CHECK(holds(b.body, {1, 3}, 1));
    CHECK_FALSE(holds(b.body, {1, 2}, 2));

    const BlockingConstraint e = substitute_solution(*gen.dominance, sol({}, 3));
    CHECK(to_string(e.body) == "true -> (support != 3)");

    const DominanceRelation subset{parse_expr("!(itemset subsetEq fromSolution(itemset))")};
    const BlockingConstraint s = substitute_solution(subset, sol({1, 2}, 0));
    for (Itemset x : std::vector<Itemset>{{}, {1}, {2}, {1, 2}}) CHECK_FALSE(holds(s.body, x, 0));
    CHECK(holds(s.body, {3}, 0));
    CHECK(holds(s.body, {1, 3}, 0));
}

TEST_CASE("substitution removes fromSolution and adds no free variables") {
    ExprGen gen(11);
    for (int k = 0; k < 500; ++k) {
        const ExprPtr body = gen.of(ValueType::Bool, 4);
        const Solution from = sol({1, 3}, 4);
        const BlockingConstraint b = substitute_solution(DominanceRelation{body}, from);
        CHECK_FALSE(contains_from_solution(*b.body));
        if (!contains_free_variable(*body)) CHECK_FALSE(contains_free_variable(*b.body));
    }
}

TEST_CASE("substituted generator constraint matches its definition exhaustively") {
    const ModelSpec gen = builtin_model(Task::Generator);
    for (std::uint32_t fmask = 0; fmask < 32; ++fmask) {
        Itemset f;
        for (ItemId i = 0; i < 5; ++i)
            if ((fmask >> i) & 1U) f.push_back(i);
        for (std::int64_t fs = 0; fs <= 3; ++fs) {
            const BlockingConstraint b = substitute_solution(*gen.dominance, sol(f, fs));
            for (std::uint32_t xmask = 0; xmask < 32; ++xmask) {
                Itemset x;
                for (ItemId i = 0; i < 5; ++i)
                    if ((xmask >> i) & 1U) x.push_back(i);
                for (std::int64_t xs = 0; xs <= 3; ++xs) {
                    const bool expected = !(is_subset(f, x) && xs == fs);
                    CHECK(holds(b.body, x, xs) == expected);
                }
            }
        }
    }
}
