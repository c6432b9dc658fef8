#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cdpmine/dataset.hpp"
#include "cdpmine/solution.hpp"

namespace cdpmine::testing {

// T0:{1,2} T1:{1,2} T2:{1,3}
inline std::shared_ptr<const TransactionDb> tiny_db() {
    return std::make_shared<const TransactionDb>(parse_transaction_db(std::string("1 2\n1 2\n1 3\n")));
}

inline ItemMeta zero_meta(const TransactionDb& db) {
    return ItemMeta{std::vector<std::int64_t>(db.n_items(), 0), std::vector<std::int64_t>(db.n_items(), 0), 0};
}

inline MiningInstance tiny_instance(std::size_t theta) {
    auto db = tiny_db();
    return make_instance_with_theta(db, zero_meta(*db), theta);
}

inline std::vector<Itemset> itemsets(const std::vector<Solution>& sols) {
    std::vector<Itemset> out;
    for (const auto& s : sols) out.push_back(s.itemset);
    std::sort(out.begin(), out.end());
    return out;
}

// Sorted by itemset so that order-insensitive comparisons are exact.
inline std::vector<Solution> sorted(std::vector<Solution> sols) {
    std::sort(sols.begin(), sols.end(), [](const Solution& a, const Solution& b) { return a.itemset < b.itemset; });
    return sols;
}

struct RandomCase {
    MiningInstance inst;
    std::uint64_t seed;
};

// Random db over `n_items` items with `n_tx` transactions (each item present
// with probability `density`), random weights and thresholds.
inline RandomCase random_case(std::uint64_t seed, std::size_t min_items = 3, std::size_t max_items = 12,
                              std::size_t min_tx = 5, std::size_t max_tx = 40, bool thresholds = true) {
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
    const std::size_t n_items = pick(min_items, max_items);
    const std::size_t n_tx = pick(min_tx, max_tx);
    const double density = 0.2 + 0.6 * static_cast<double>(rng() % 1000) / 1000.0;
    std::vector<Itemset> rows;
    for (std::size_t t = 0; t < n_tx; ++t) {
        Itemset row;
        for (ItemId i = 0; i < n_items; ++i)
            if (static_cast<double>(rng() % 1000) / 1000.0 < density) row.push_back(i);
        rows.push_back(row);
    }
    auto db = std::make_shared<const TransactionDb>(std::move(rows), n_items);
    ItemMeta meta = generate_item_meta(*db, seed);
    const std::size_t theta = pick(1, std::max<std::size_t>(1, n_tx / 2));
    std::int64_t min_value = 0;
    std::int64_t max_cost = kNoCostLimit;
    if (thresholds) {
        if (rng() % 2) min_value = static_cast<std::int64_t>(rng() % 8);
        if (rng() % 2) max_cost = static_cast<std::int64_t>(rng() % 16);
    }
    return {make_instance_with_theta(db, std::move(meta), theta, min_value, max_cost), seed};
}

}  // namespace cdpmine::testing
