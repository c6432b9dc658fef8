#include "cdpmine/oracle.hpp"

#include <bit>
#include <cstdint>

namespace cdpmine {

namespace {

using Mask = std::uint32_t;

struct Sweep {
    std::size_t n = 0;
    std::vector<std::size_t> support;
    std::vector<bool> feasible;
};

Sweep sweep(const MiningInstance& inst, const OracleOptions& opts) {
    const TransactionDb& db = *inst.db;
    Sweep s;
    s.n = db.n_items();
    if (s.n > kOracleMaxItems) throw UniverseTooLarge(s.n, kOracleMaxItems);

    std::vector<Mask> rows;
    rows.reserve(db.n_transactions());
    for (const Itemset& t : db.transactions()) {
        Mask m = 0;
        for (ItemId i : t) m |= Mask{1} << i;
        rows.push_back(m);
    }

    const std::size_t total = std::size_t{1} << s.n;
    s.support.assign(total, 0);
    s.feasible.assign(total, false);
    for (std::size_t x = 0; x < total; ++x) {
        const auto mask = static_cast<Mask>(x);
        std::size_t count = 0;
        for (Mask row : rows)
            if ((mask & ~row) == 0) ++count;
        s.support[x] = count;

        std::int64_t value = 0;
        std::int64_t cost = 0;
        for (std::size_t i = 0; i < s.n; ++i) {
            if (!((mask >> i) & 1U)) continue;
            if (i < inst.meta.values.size()) value += inst.meta.values[i];
            if (i < inst.meta.costs.size()) cost += inst.meta.costs[i];
        }
        s.feasible[x] = count >= inst.theta && value >= inst.min_value && cost <= inst.max_cost &&
                        (opts.include_empty || mask != 0);
    }
    return s;
}

Solution to_solution(Mask mask, std::size_t support) {
    Itemset items;
    for (ItemId i = 0; mask >> i; ++i)
        if ((mask >> i) & 1U) items.push_back(i);
    const auto level = static_cast<std::int64_t>(items.size());
    return Solution{std::move(items), static_cast<std::int64_t>(support), level};
}

// True when `other` would knock out the candidate with the given support.
bool beats(const Sweep& s, Mask other, std::size_t support, const OracleOptions& opts) {
    if (s.support[other] != support) return false;
    return opts.scope == DominanceScope::PureDefinition || s.feasible[other];
}

bool has_equal_subset(const Sweep& s, Mask x, const OracleOptions& opts) {
    if (opts.check == NeighbourCheck::Immediate) {
        for (Mask rest = x; rest; rest &= rest - 1)
            if (beats(s, x & ~(rest & -rest), s.support[x], opts)) return true;
        return false;
    }
    if (x == 0) return false;
    for (Mask y = (x - 1) & x;; y = (y - 1) & x) {
        if (beats(s, y, s.support[x], opts)) return true;
        if (y == 0) break;
    }
    return false;
}

bool has_equal_superset(const Sweep& s, Mask x, const OracleOptions& opts) {
    const Mask all = static_cast<Mask>((std::size_t{1} << s.n) - 1);
    const Mask free = all & ~x;
    if (opts.check == NeighbourCheck::Immediate) {
        for (Mask rest = free; rest; rest &= rest - 1)
            if (beats(s, x | (rest & -rest), s.support[x], opts)) return true;
        return false;
    }
    for (Mask add = free; add; add = (add - 1) & free)
        if (beats(s, x | add, s.support[x], opts)) return true;
    return false;
}

template <class Keep>
std::vector<Solution> collect(const MiningInstance& inst, const OracleOptions& opts, Keep keep) {
    const Sweep s = sweep(inst, opts);
    std::vector<Solution> out;
    for (std::size_t x = 0; x < s.support.size(); ++x) {
        const auto mask = static_cast<Mask>(x);
        if (s.feasible[x] && keep(s, mask)) out.push_back(to_solution(mask, s.support[x]));
    }
    return out;
}

}  // namespace

std::vector<Solution> brute_frequent(const MiningInstance& inst, const OracleOptions& opts) {
    return collect(inst, opts, [](const Sweep&, Mask) { return true; });
}

std::vector<Solution> brute_generators(const MiningInstance& inst, const OracleOptions& opts) {
    return collect(inst, opts, [&](const Sweep& s, Mask x) { return !has_equal_subset(s, x, opts); });
}

std::vector<Solution> brute_closed(const MiningInstance& inst, const OracleOptions& opts) {
    return collect(inst, opts, [&](const Sweep& s, Mask x) { return !has_equal_superset(s, x, opts); });
}

std::vector<Solution> brute_task(Task task, const MiningInstance& inst, const OracleOptions& opts) {
    switch (task) {
        case Task::Frequent: return brute_frequent(inst, opts);
        case Task::Generator: return brute_generators(inst, opts);
        case Task::Closed: return brute_closed(inst, opts);
    }
    return {};
}

}  // namespace cdpmine
