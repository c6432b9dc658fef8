#pragma once

// Mini modelling language: side constraints, a dominance relation over a
// previously found solution (`fromSolution(var)`) and an optional
// incomparability function.
//
//   model := { stmt }
//   stmt  := "such that" expr { "," expr }
//          | "dominance_relation" expr
//          | "incomparability_function" ("ascending" | "descending") expr
//
// Precedence, loosest first: `->` (right assoc), `\/`, `/\`, `!`,
// comparisons (= != < <= > >= subsetEq subset), `+ -`, `*`, unary `-`.
// `$` starts a comment that runs to end of line.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdpmine/dataset.hpp"
#include "cdpmine/errors.hpp"
#include "cdpmine/solution.hpp"

namespace cdpmine {

enum class DecisionVar { Itemset, Support };
enum class UnaryOp { Not, Negate };
enum class BinaryOp { Implies, Or, And, Eq, Neq, Lt, Le, Gt, Ge, SubsetEq, Subset, Add, Sub, Mul };
enum class ValueType { Int, Bool, Set };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
    std::int64_t value;
};
struct BoolLit {
    bool value;
};
struct SetLit {
    Itemset items;
};
struct VarRef {
    DecisionVar var;
};
struct FromSolution {
    std::string name;
};
struct ParamRef {
    std::string name;
};
struct Cardinality {
    ExprPtr operand;
};
// (sum <index> in <domain> . <array>[<subscript>])
struct WeightedSum {
    std::string index;
    ExprPtr domain;
    std::string array;
    std::string subscript;
};
struct Unary {
    UnaryOp op;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Expr {
    using Node = std::variant<IntLit, BoolLit, SetLit, VarRef, FromSolution, ParamRef, Cardinality, WeightedSum, Unary, Binary>;
    Node node;
    SourcePos pos;
};

// Structural equality; source positions are ignored.
bool operator==(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

namespace ast {
ExprPtr int_lit(std::int64_t v, SourcePos pos = {});
ExprPtr bool_lit(bool v, SourcePos pos = {});
ExprPtr set_lit(Itemset items, SourcePos pos = {});
ExprPtr var(DecisionVar v, SourcePos pos = {});
ExprPtr from_solution(std::string name, SourcePos pos = {});
ExprPtr param(std::string name, SourcePos pos = {});
ExprPtr card(ExprPtr operand, SourcePos pos = {});
ExprPtr weighted_sum(std::string index, ExprPtr domain, std::string array, SourcePos pos = {});
ExprPtr unary(UnaryOp op, ExprPtr operand, SourcePos pos = {});
ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
}  // namespace ast

enum class Direction { Ascending, Descending };

struct DominanceRelation {
    ExprPtr body;
};

struct IncomparabilityFn {
    Direction direction = Direction::Ascending;
    ExprPtr body;
};

struct ModelSpec {
    std::vector<ExprPtr> side_constraints;
    std::optional<DominanceRelation> dominance;
    std::optional<IncomparabilityFn> incomparability;
};

bool operator==(const ModelSpec& a, const ModelSpec& b);

enum class Task { Frequent, Generator, Closed };

std::optional<Task> parse_task(std::string_view name);
std::string_view task_name(Task task);

// Built-in models: side constraints on values/costs, plus the generator
// (subset premise, ascending |itemset|) or closed (superset premise,
// descending |itemset|) dominance relation. `Frequent` has no relation.
ModelSpec builtin_model(Task task);
std::string_view builtin_model_text(Task task);

// Parses and type-checks a model. A text consisting of one built-in task name
// expands to that task's model.
ModelSpec parse_model(std::string_view text);
ModelSpec load_model(const std::string& path);

// Standalone expression; `allow_from_solution` permits fromSolution terms.
ExprPtr parse_expr(std::string_view text, bool allow_from_solution = true);

std::string to_string(const Expr& e);
std::string to_string(const ExprPtr& e);
std::string to_string(const ModelSpec& m);

// Identifiers resolvable as integer parameters.
inline constexpr std::string_view kParamNames[] = {"min_value", "max_cost", "theta", "n_transactions", "n_items"};

ValueType check_expr(const Expr& e, bool allow_from_solution);

bool contains_from_solution(const Expr& e);
bool contains_free_variable(const Expr& e);
bool is_itemset_cardinality(const Expr& e);

using Value = std::variant<std::int64_t, bool, Itemset>;
using ParamMap = std::map<std::string, std::int64_t, std::less<>>;

struct EvalContext {
    const Itemset* itemset = nullptr;
    std::optional<std::int64_t> support;
    const Solution* from_solution = nullptr;
    const ParamMap* params = nullptr;
    std::span<const std::int64_t> values;
    std::span<const std::int64_t> costs;
    // Supplies `support` when it is not bound explicitly.
    const TransactionDb* db = nullptr;
};

Value eval_expr(const Expr& e, const EvalContext& ctx);
bool eval_bool(const Expr& e, const EvalContext& ctx);
std::int64_t eval_int(const Expr& e, const EvalContext& ctx);

struct BlockingConstraint {
    ExprPtr body;
    Solution origin;
};

// Replaces every fromSolution term by the solution's value and folds the
// closed subterms that result. The returned body must hold for any solution
// found later.
BlockingConstraint substitute_solution(const DominanceRelation& rel, const Solution& sol);

ParamMap instance_params(const MiningInstance& inst);

}  // namespace cdpmine
