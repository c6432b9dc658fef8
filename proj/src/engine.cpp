#include "cdpmine/engine.hpp"

#include <algorithm>
#include <limits>

namespace cdpmine {

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::int64_t kMinI64 = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMaxI64 = std::numeric_limits<std::int64_t>::max();

bool is_var(const Expr& e, DecisionVar which) {
    const auto* v = std::get_if<VarRef>(&e.node);
    return v && v->var == which;
}

const SetLit* as_set_lit(const Expr& e) { return std::get_if<SetLit>(&e.node); }

const Binary* as_binary(const Expr& e, BinaryOp op) {
    const auto* b = std::get_if<Binary>(&e.node);
    return b && b->op == op ? b : nullptr;
}

// `support != c` in either orientation.
std::optional<std::int64_t> support_neq(const Expr& e) {
    const Binary* b = as_binary(e, BinaryOp::Neq);
    if (!b) return std::nullopt;
    if (is_var(*b->lhs, DecisionVar::Support))
        if (const auto* c = std::get_if<IntLit>(&b->rhs->node)) return c->value;
    if (is_var(*b->rhs, DecisionVar::Support))
        if (const auto* c = std::get_if<IntLit>(&b->lhs->node)) return c->value;
    return std::nullopt;
}

struct Interval {
    std::int64_t lo = kMinI64;
    std::int64_t hi = kMaxI64;

    bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
};

enum class Quantity { None, Values, Costs, Cardinality };

Quantity quantity_of(const Expr& e) {
    if (const auto* s = std::get_if<WeightedSum>(&e.node); s && is_var(*s->domain, DecisionVar::Itemset) && s->subscript == s->index)
        return s->array == "values" ? Quantity::Values : Quantity::Costs;
    if (const auto* c = std::get_if<Cardinality>(&e.node); c && is_var(*c->operand, DecisionVar::Itemset))
        return Quantity::Cardinality;
    return Quantity::None;
}

BinaryOp mirror(BinaryOp op) {
    switch (op) {
        case BinaryOp::Lt: return BinaryOp::Gt;
        case BinaryOp::Le: return BinaryOp::Ge;
        case BinaryOp::Gt: return BinaryOp::Lt;
        case BinaryOp::Ge: return BinaryOp::Le;
        default: return op;
    }
}

bool tighten(Interval& iv, BinaryOp op, std::int64_t k) {
    switch (op) {
        case BinaryOp::Ge: iv.lo = std::max(iv.lo, k); return true;
        case BinaryOp::Gt:
            if (k == kMaxI64) iv = Interval{1, 0};
            else iv.lo = std::max(iv.lo, k + 1);
            return true;
        case BinaryOp::Le: iv.hi = std::min(iv.hi, k); return true;
        case BinaryOp::Lt:
            if (k == kMinI64) iv = Interval{1, 0};
            else iv.hi = std::min(iv.hi, k - 1);
            return true;
        case BinaryOp::Eq:
            iv.lo = std::max(iv.lo, k);
            iv.hi = std::min(iv.hi, k);
            return true;
        default: return false;
    }
}

void split_conjunction(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (const Binary* b = as_binary(*e, BinaryOp::And)) {
        split_conjunction(b->lhs, out);
        split_conjunction(b->rhs, out);
        return;
    }
    out.push_back(e);
}

bool all_non_negative(std::span<const std::int64_t> w) {
    return std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x >= 0; });
}

class Search {
public:
    Search(const MiningInstance& inst, const SearchConfig& cfg, SearchResult& out)
        : inst_(inst), cfg_(cfg), out_(out), params_(instance_params(inst)), mask_(inst.n_items()) {
        ctx_.params = &params_;
        ctx_.values = inst.meta.values;
        ctx_.costs = inst.meta.costs;
        ctx_.db = inst.db.get();
        monotone_weights_ = all_non_negative(inst.meta.values) && all_non_negative(inst.meta.costs);
        classify_side_constraints();
        if (cfg.fixed_level) tighten(card_, BinaryOp::Eq, static_cast<std::int64_t>(*cfg.fixed_level));
        if (cfg.level) {
            if (quantity_of(*cfg.level->body) == Quantity::Cardinality) tighten(card_, BinaryOp::Eq, cfg.level->value);
            else level_filter_ = cfg.level->body;
        }
        if (!cfg.include_empty) card_.lo = std::max<std::int64_t>(card_.lo, 1);
    }

    void run() {
        if (card_.lo > card_.hi || values_.lo > values_.hi || costs_.lo > costs_.hi) return;
        const TransactionDb& db = *inst_.db;
        Frame root;
        for (ItemId i = 0; i < db.n_items(); ++i) {
            if (cfg_.propagate && db.item_support(i) < inst_.theta) continue;
            root.cands.push_back(Candidate{i, db.cover(i), db.item_support(i)});
        }
        finish_frame(root);
        branch(root, db.n_transactions(), 0);
    }

private:
    struct Candidate {
        ItemId item;
        Bitset cover;  // intersected with the cover of the frame's owner
        std::size_t support;
    };

    struct Frame {
        std::vector<Candidate> cands;
        std::vector<std::int64_t> value_suffix;
        std::vector<std::int64_t> cost_suffix;
        std::vector<std::size_t> min_support_suffix;
    };

    std::int64_t value_of(ItemId i) const { return i < inst_.meta.values.size() ? inst_.meta.values[i] : 0; }
    std::int64_t cost_of(ItemId i) const { return i < inst_.meta.costs.size() ? inst_.meta.costs[i] : 0; }

    void classify_side_constraints() {
        std::vector<ExprPtr> flat;
        for (const auto& e : cfg_.side_constraints) split_conjunction(e, flat);
        for (const auto& e : flat) {
            if (!recognise_bound(*e)) generic_side_.push_back(e);
        }
    }

    bool recognise_bound(const Expr& e) {
        const auto* b = std::get_if<Binary>(&e.node);
        if (!b) return false;
        BinaryOp op = b->op;
        Quantity q = quantity_of(*b->lhs);
        const Expr* other = b->rhs.get();
        if (q == Quantity::None) {
            q = quantity_of(*b->rhs);
            other = b->lhs.get();
            op = mirror(op);
        }
        if (q == Quantity::None || contains_free_variable(*other) || contains_from_solution(*other)) return false;
        Interval& iv = q == Quantity::Values ? values_ : q == Quantity::Costs ? costs_ : card_;
        Interval probe = iv;
        if (!tighten(probe, op, eval_int(*other, ctx_))) return false;
        iv = probe;
        return true;
    }

    void finish_frame(Frame& f) const {
        const std::size_t n = f.cands.size();
        f.value_suffix.assign(n + 1, 0);
        f.cost_suffix.assign(n + 1, 0);
        f.min_support_suffix.assign(n + 1, std::numeric_limits<std::size_t>::max());
        for (std::size_t j = n; j-- > 0;) {
            f.value_suffix[j] = f.value_suffix[j + 1] + value_of(f.cands[j].item);
            f.cost_suffix[j] = f.cost_suffix[j + 1] + cost_of(f.cands[j].item);
            f.min_support_suffix[j] = std::min(f.min_support_suffix[j + 1], f.cands[j].support);
        }
    }

    bool out_of_time() {
        if (!cfg_.deadline) return false;
        if ((out_.stats.nodes & 1023U) != 0) return false;
        if (Clock::now() < *cfg_.deadline) return false;
        out_.stats.timed_out = true;
        stop_ = true;
        return true;
    }

    void branch(const Frame& f, std::size_t cover_size, std::size_t pos) {
        if (stop_) return;
        ++out_.stats.nodes;
        if (out_of_time()) return;
        const auto k = static_cast<std::int64_t>(included_.size());
        if (cfg_.propagate) {
            const auto remaining = static_cast<std::int64_t>(f.cands.size() - pos);
            if (k + remaining < card_.lo) return;
            if (monotone_weights_) {
                if (value_sum_ + f.value_suffix[pos] < values_.lo) return;
                if (cost_sum_ + f.cost_suffix[pos] < costs_.lo) return;
            }
            if (cfg_.blocks && f.min_support_suffix[pos] >= cover_size &&
                cfg_.blocks->rejects_all_supersets(mask_, static_cast<std::int64_t>(cover_size)))
                return;
        }
        if (pos == f.cands.size()) {
            leaf(cover_size);
            return;
        }

        branch(f, cover_size, pos + 1);
        if (stop_) return;

        const Candidate& c = f.cands[pos];
        if (cfg_.propagate) {
            if (k + 1 > card_.hi) return;
            if (monotone_weights_ && (value_sum_ + value_of(c.item) > values_.hi || cost_sum_ + cost_of(c.item) > costs_.hi))
                return;
        }
        Frame child;
        child.cands.reserve(f.cands.size() - pos - 1);
        for (std::size_t j = pos + 1; j < f.cands.size(); ++j) {
            Bitset cov = f.cands[j].cover & c.cover;
            const std::size_t s = cov.count();
            if (cfg_.propagate && s < inst_.theta) continue;
            child.cands.push_back(Candidate{f.cands[j].item, std::move(cov), s});
        }
        finish_frame(child);

        included_.push_back(c.item);
        mask_.set(c.item);
        value_sum_ += value_of(c.item);
        cost_sum_ += cost_of(c.item);
        branch(child, c.support, 0);
        cost_sum_ -= cost_of(c.item);
        value_sum_ -= value_of(c.item);
        mask_.reset(c.item);
        included_.pop_back();
    }

    void leaf(std::size_t cover_size) {
        const auto k = static_cast<std::int64_t>(included_.size());
        if (!card_.contains(k) || cover_size < inst_.theta) return;
        if (!values_.contains(value_sum_) || !costs_.contains(cost_sum_)) return;
        const auto support = static_cast<std::int64_t>(cover_size);
        EvalContext ctx = ctx_;
        ctx.itemset = &included_;
        ctx.support = support;
        if (level_filter_ && eval_int(*level_filter_, ctx) != cfg_.level->value) return;
        for (const auto& e : generic_side_)
            if (!eval_bool(*e, ctx)) return;
        if (cfg_.blocks && !cfg_.blocks->admits(included_, mask_, support, ctx)) return;
        const std::int64_t level = cfg_.level_function ? eval_int(*cfg_.level_function, ctx) : k;
        out_.solutions.push_back(Solution{included_, support, level});
        if (cfg_.max_solutions != 0 && out_.solutions.size() >= cfg_.max_solutions) stop_ = true;
    }

    const MiningInstance& inst_;
    const SearchConfig& cfg_;
    SearchResult& out_;
    ParamMap params_;
    EvalContext ctx_;
    bool monotone_weights_ = true;
    Interval values_;
    Interval costs_;
    Interval card_;
    ExprPtr level_filter_;
    std::vector<ExprPtr> generic_side_;

    Itemset included_;
    Bitset mask_;
    std::int64_t value_sum_ = 0;
    std::int64_t cost_sum_ = 0;
    bool stop_ = false;
};

}  // namespace

BlockSet::BlockSet(std::size_t n_items) : n_items_(n_items) {}

BlockSet::BlockSet(std::size_t n_items, std::span<const BlockingConstraint> blocks) : n_items_(n_items) {
    for (const auto& b : blocks) add(b);
}

Bitset BlockSet::mask_of(const Itemset& items) const {
    Bitset m(n_items_);
    for (ItemId i : items)
        if (i < n_items_) m.set(i);
    return m;
}

void BlockSet::add(BlockingConstraint block) {
    const auto id = static_cast<std::uint32_t>(blocks_.size());
    const Expr& body = *block.body;
    blocks_.push_back(std::move(block));

    if (const auto* lit = std::get_if<BoolLit>(&body.node); lit && lit->value) return;
    if (const auto* u = std::get_if<Unary>(&body.node); u && u->op == UnaryOp::Not) {
        if (const Binary* sub = as_binary(*u->operand, BinaryOp::SubsetEq); sub && is_var(*sub->lhs, DecisionVar::Itemset)) {
            if (const SetLit* s = as_set_lit(*sub->rhs)) {
                not_subset_of_.push_back(Guard{mask_of(s->items), id});
                return;
            }
        }
    }
    if (auto c = support_neq(body)) {
        unconditional_guards_[*c].push_back(id);
        return;
    }
    if (const Binary* imp = as_binary(body, BinaryOp::Implies)) {
        if (auto c = support_neq(*imp->rhs)) {
            const Expr& premise = *imp->lhs;
            if (const auto* lit = std::get_if<BoolLit>(&premise.node)) {
                if (lit->value) unconditional_guards_[*c].push_back(id);
                return;
            }
            if (const Binary* sub = as_binary(premise, BinaryOp::SubsetEq)) {
                const SetLit* s = as_set_lit(*sub->lhs);
                if (s && is_var(*sub->rhs, DecisionVar::Itemset)) {
                    // A premise naming an item outside the universe never holds.
                    if (s->items.empty() || s->items.back() < n_items_) subset_guards_[*c].push_back(Guard{mask_of(s->items), id});
                    return;
                }
                s = as_set_lit(*sub->rhs);
                if (s && is_var(*sub->lhs, DecisionVar::Itemset)) {
                    superset_guards_[*c].push_back(Guard{mask_of(s->items), id});
                    return;
                }
            }
        }
    }
    evaluated_.push_back(id);
}

bool BlockSet::admits_impl(const Itemset& items, const Bitset& mask, std::int64_t support, const EvalContext& ctx,
                           bool ignore_self) const {
    auto skip = [&](std::uint32_t b) { return ignore_self && blocks_[b].origin.itemset == items; };
    if (auto it = subset_guards_.find(support); it != subset_guards_.end()) {
        for (const Guard& g : it->second)
            if (g.premise.is_subset_of(mask) && !skip(g.block)) return false;
    }
    if (auto it = superset_guards_.find(support); it != superset_guards_.end()) {
        for (const Guard& g : it->second)
            if (mask.is_subset_of(g.premise) && !skip(g.block)) return false;
    }
    if (auto it = unconditional_guards_.find(support); it != unconditional_guards_.end()) {
        for (std::uint32_t b : it->second)
            if (!skip(b)) return false;
    }
    for (const Guard& g : not_subset_of_)
        if (mask.is_subset_of(g.premise) && !skip(g.block)) return false;
    if (!evaluated_.empty()) {
        EvalContext c = ctx;
        c.itemset = &items;
        c.support = support;
        c.from_solution = nullptr;
        for (std::uint32_t b : evaluated_)
            if (!skip(b) && !eval_bool(*blocks_[b].body, c)) return false;
    }
    return true;
}

bool BlockSet::admits(const Itemset& items, const Bitset& mask, std::int64_t support, const EvalContext& ctx) const {
    return admits_impl(items, mask, support, ctx, false);
}

bool BlockSet::admits_ignoring_self(const Itemset& items, const Bitset& mask, std::int64_t support,
                                    const EvalContext& ctx) const {
    return admits_impl(items, mask, support, ctx, true);
}

bool BlockSet::rejects_all_supersets(const Bitset& included, std::int64_t support) const {
    if (unconditional_guards_.contains(support)) return true;
    auto it = subset_guards_.find(support);
    if (it == subset_guards_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](const Guard& g) { return g.premise.is_subset_of(included); });
}

bool check_blocking(std::span<const BlockingConstraint> blocks, const Itemset& items, std::int64_t support,
                    const EvalContext& ctx) {
    EvalContext c = ctx;
    c.itemset = &items;
    c.support = support;
    c.from_solution = nullptr;
    return std::all_of(blocks.begin(), blocks.end(), [&](const BlockingConstraint& b) { return eval_bool(*b.body, c); });
}

SearchResult enumerate(const MiningInstance& inst, const SearchConfig& config) {
    const auto start = Clock::now();
    SearchResult out;
    if (config.branch_order == BranchOrder::Default) {
        Search(inst, config, out).run();
    } else {
        // Cardinality is decided first: one pass per level, in the configured order.
        const auto [lo, hi] = level_bounds(inst);
        SearchConfig sub = config;
        sub.branch_order = BranchOrder::Default;
        for (std::int64_t step = 0; step <= hi - lo; ++step) {
            const std::int64_t k = config.level_order == Direction::Ascending ? lo + step : hi - step;
            if (config.fixed_level && static_cast<std::int64_t>(*config.fixed_level) != k) continue;
            sub.fixed_level = static_cast<std::size_t>(k);
            if (config.max_solutions != 0) sub.max_solutions = config.max_solutions - out.solutions.size();
            SearchResult part;
            Search(inst, sub, part).run();
            out.stats.nodes += part.stats.nodes;
            out.stats.timed_out = out.stats.timed_out || part.stats.timed_out;
            out.solutions.insert(out.solutions.end(), part.solutions.begin(), part.solutions.end());
            if (out.stats.timed_out) break;
            if (config.max_solutions != 0 && out.solutions.size() >= config.max_solutions) break;
        }
    }
    out.stats.solutions = out.solutions.size();
    out.stats.active_blocks = config.blocks ? config.blocks->size() : 0;
    out.stats.wall_time = Clock::now() - start;
    return out;
}

std::pair<std::int64_t, std::int64_t> level_bounds(const MiningInstance& inst) {
    const TransactionDb& db = *inst.db;
    std::size_t frequent = 0;
    for (ItemId i = 0; i < db.n_items(); ++i)
        if (db.item_support(i) >= inst.theta) ++frequent;
    return {0, static_cast<std::int64_t>(std::min(db.max_transaction_size(), frequent))};
}

}  // namespace cdpmine
