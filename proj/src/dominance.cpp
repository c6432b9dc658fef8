#include "cdpmine/dominance.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace cdpmine {

namespace {

using Clock = std::chrono::steady_clock;
using Wide = __int128;

constexpr std::int64_t kMaxLevels = 1'000'000;

struct Range {
    Wide lo;
    Wide hi;
};

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};

Wide weight_ceiling(const MiningInstance& inst, const std::vector<std::int64_t>& weights) {
    Wide total = 0;
    for (ItemId i = 0; i < inst.n_items() && i < weights.size(); ++i)
        if (inst.db->item_support(i) >= inst.theta) total += std::max<std::int64_t>(weights[i], 0);
    return total;
}

Wide weight_floor(const MiningInstance& inst, const std::vector<std::int64_t>& weights) {
    Wide total = 0;
    for (ItemId i = 0; i < inst.n_items() && i < weights.size(); ++i)
        if (inst.db->item_support(i) >= inst.theta) total += std::min<std::int64_t>(weights[i], 0);
    return total;
}

Range bounds_of(const Expr& e, const MiningInstance& inst, const ParamMap& params) {
    const auto [card_lo, card_hi] = level_bounds(inst);
    return std::visit(
        overloaded{
            [](const IntLit& x) { return Range{x.value, x.value}; },
            [&](const ParamRef& p) {
                const std::int64_t v = params.at(p.name);
                return Range{v, v};
            },
            [&](const VarRef&) {
                return Range{static_cast<Wide>(inst.theta), static_cast<Wide>(inst.n_transactions())};
            },
            [&](const Cardinality& c) {
                if (const auto* s = std::get_if<SetLit>(&c.operand->node))
                    return Range{static_cast<Wide>(s->items.size()), static_cast<Wide>(s->items.size())};
                return Range{card_lo, card_hi};
            },
            [&](const WeightedSum& s) {
                const auto& w = s.array == "values" ? inst.meta.values : inst.meta.costs;
                return Range{weight_floor(inst, w), weight_ceiling(inst, w)};
            },
            [&](const Unary& u) {
                const Range r = bounds_of(*u.operand, inst, params);
                return Range{-r.hi, -r.lo};
            },
            [&](const Binary& b) {
                const Range l = bounds_of(*b.lhs, inst, params);
                const Range r = bounds_of(*b.rhs, inst, params);
                switch (b.op) {
                    case BinaryOp::Add: return Range{l.lo + r.lo, l.hi + r.hi};
                    case BinaryOp::Sub: return Range{l.lo - r.hi, l.hi - r.lo};
                    case BinaryOp::Mul: {
                        const Wide p[] = {l.lo * r.lo, l.lo * r.hi, l.hi * r.lo, l.hi * r.hi};
                        return Range{*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
                    }
                    default: throw TypeError(b.lhs->pos, "incomparability function must be an integer expression");
                }
            },
            [&](const auto&) -> Range { throw TypeError(e.pos, "incomparability function must be an integer expression"); },
        },
        e.node);
}

SearchConfig base_config(const MiningInstance& inst, const ModelSpec& model, const RunOptions& opts,
                         std::optional<Clock::time_point> deadline) {
    (void)inst;
    SearchConfig cfg;
    cfg.side_constraints = model.side_constraints;
    cfg.include_empty = opts.include_empty;
    cfg.propagate = opts.propagate;
    cfg.deadline = deadline;
    if (model.incomparability) {
        cfg.level_order = model.incomparability->direction;
        cfg.level_function = model.incomparability->body;
    }
    return cfg;
}

std::optional<Clock::time_point> deadline_of(const RunOptions& opts) {
    if (!opts.timeout_seconds) return std::nullopt;
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*opts.timeout_seconds));
}

void count_dominated(RunResult& r, const ModelSpec& model, const MiningInstance& inst) {
    if (!model.dominance) return;
    r.n_dominated_emitted = r.solutions.size() - post_filter(r.solutions, *model.dominance, inst).size();
}

}  // namespace

std::optional<Strategy> parse_strategy(std::string_view name) {
    if (name == "cdp-default") return Strategy::CdpDefault;
    if (name == "cdp-level") return Strategy::CdpLevel;
    if (name == "cdpi") return Strategy::Cdpi;
    return std::nullopt;
}

std::string_view strategy_name(Strategy s) {
    switch (s) {
        case Strategy::CdpDefault: return "cdp-default";
        case Strategy::CdpLevel: return "cdp-level";
        case Strategy::Cdpi: return "cdpi";
    }
    return "";
}

RunResult run_cdp(const MiningInstance& inst, const ModelSpec& model, BranchOrder order, const RunOptions& opts) {
    RunResult r;
    SearchConfig cfg = base_config(inst, model, opts, deadline_of(opts));
    cfg.branch_order = order;

    if (!model.dominance) {
        // Nothing to block: a single call enumerates everything.
        SearchResult res = enumerate(inst, cfg);
        r.calls = 1;
        r.solutions = std::move(res.solutions);
        r.nodes = res.stats.nodes;
        r.timed_out = res.stats.timed_out;
        r.time_seconds = res.stats.wall_time.count();
        return r;
    }

    BlockSet blocks(inst.n_items());
    cfg.blocks = &blocks;
    cfg.max_solutions = 1;
    for (;;) {
        ++r.calls;
        r.blocks_total += blocks.size();
        SearchResult res = enumerate(inst, cfg);
        r.nodes += res.stats.nodes;
        r.time_seconds += res.stats.wall_time.count();
        if (res.stats.timed_out) {
            r.timed_out = true;
            break;
        }
        if (res.solutions.empty()) break;
        r.solutions.push_back(res.solutions.front());
        blocks.add(substitute_solution(*model.dominance, r.solutions.back()));
    }
    count_dominated(r, model, inst);
    return r;
}

RunResult run_cdpi(const MiningInstance& inst, const ModelSpec& model, const RunOptions& opts) {
    if (!model.incomparability) throw MissingIncomparability();
    const IncomparabilityFn& fn = *model.incomparability;
    const auto [lo, hi] = incomparability_range(inst, fn, opts.include_empty);

    RunResult r;
    SearchConfig cfg = base_config(inst, model, opts, deadline_of(opts));
    BlockSet blocks(inst.n_items());
    cfg.blocks = &blocks;
    for (std::int64_t step = 0; step <= hi - lo; ++step) {
        const std::int64_t v = fn.direction == Direction::Ascending ? lo + step : hi - step;
        cfg.level = LevelFilter{fn.body, v};
        ++r.calls;
        r.blocks_total += blocks.size();
        SearchResult res = enumerate(inst, cfg);
        r.nodes += res.stats.nodes;
        r.time_seconds += res.stats.wall_time.count();
        r.solutions.insert(r.solutions.end(), res.solutions.begin(), res.solutions.end());
        if (res.stats.timed_out) {
            r.timed_out = true;
            break;
        }
        if (model.dominance)
            for (const Solution& s : res.solutions) blocks.add(substitute_solution(*model.dominance, s));
    }
    count_dominated(r, model, inst);
    return r;
}

RunResult run_strategy(Strategy s, const MiningInstance& inst, const ModelSpec& model, const RunOptions& opts) {
    switch (s) {
        case Strategy::CdpDefault: return run_cdp(inst, model, BranchOrder::Default, opts);
        case Strategy::CdpLevel: return run_cdp(inst, model, BranchOrder::LevelFirst, opts);
        case Strategy::Cdpi: return run_cdpi(inst, model, opts);
    }
    return {};
}

std::vector<Solution> post_filter(const std::vector<Solution>& sols, const DominanceRelation& rel,
                                  const MiningInstance& inst) {
    BlockSet blocks(inst.n_items());
    for (const Solution& s : sols) blocks.add(substitute_solution(rel, s));
    const ParamMap params = instance_params(inst);
    EvalContext ctx;
    ctx.params = &params;
    ctx.values = inst.meta.values;
    ctx.costs = inst.meta.costs;
    ctx.db = inst.db.get();
    std::vector<Solution> kept;
    for (const Solution& s : sols)
        if (blocks.admits_ignoring_self(s.itemset, blocks.mask_of(s.itemset), s.support, ctx)) kept.push_back(s);
    return kept;
}

std::pair<std::int64_t, std::int64_t> incomparability_range(const MiningInstance& inst, const IncomparabilityFn& fn,
                                                           bool include_empty) {
    auto [lo, hi] = level_bounds(inst);
    if (!is_itemset_cardinality(*fn.body)) {
        const Range r = bounds_of(*fn.body, inst, instance_params(inst));
        if (r.hi - r.lo >= kMaxLevels) throw Error("incomparability function range too wide to enumerate by level");
        lo = static_cast<std::int64_t>(r.lo);
        hi = static_cast<std::int64_t>(r.hi);
    } else if (!include_empty) {
        lo = std::min<std::int64_t>(1, hi);
    }
    return {lo, hi};
}

}  // namespace cdpmine
