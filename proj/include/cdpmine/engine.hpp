#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdpmine/bitset.hpp"
#include "cdpmine/dataset.hpp"
#include "cdpmine/model.hpp"
#include "cdpmine/solution.hpp"

namespace cdpmine {

// Installed blocking constraints, indexed by shape. Bodies of the form
// `(S subsetEq itemset) -> (support != c)`, `(itemset subsetEq S) -> (support != c)`,
// `true -> (support != c)` and `!(itemset subsetEq S)` are checked with bitset
// operations; anything else is evaluated.
class BlockSet {
public:
    explicit BlockSet(std::size_t n_items);
    BlockSet(std::size_t n_items, std::span<const BlockingConstraint> blocks);

    void add(BlockingConstraint block);
    std::size_t size() const { return blocks_.size(); }
    const std::vector<BlockingConstraint>& constraints() const { return blocks_; }

    // True iff every installed body holds on the candidate. `ctx` supplies
    // params and weights for evaluated bodies; its itemset/support are ignored.
    bool admits(const Itemset& items, const Bitset& mask, std::int64_t support, const EvalContext& ctx) const;

    // Same, ignoring blocks whose origin solution has the candidate's itemset.
    bool admits_ignoring_self(const Itemset& items, const Bitset& mask, std::int64_t support, const EvalContext& ctx) const;

    // True when some subset-premise or unconditional guard rejects every
    // superset of `included` whose support equals `support`.
    bool rejects_all_supersets(const Bitset& included, std::int64_t support) const;

    Bitset mask_of(const Itemset& items) const;

private:
    struct Guard {
        Bitset premise;
        std::uint32_t block;
    };

    bool admits_impl(const Itemset& items, const Bitset& mask, std::int64_t support, const EvalContext& ctx,
                     bool ignore_self) const;

    std::size_t n_items_;
    std::vector<BlockingConstraint> blocks_;
    std::unordered_map<std::int64_t, std::vector<Guard>> subset_guards_;    // S ⊆ X -> supp != c
    std::unordered_map<std::int64_t, std::vector<Guard>> superset_guards_;  // X ⊆ S -> supp != c
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> unconditional_guards_;
    std::vector<Guard> not_subset_of_;  // !(X ⊆ S)
    std::vector<std::uint32_t> evaluated_;
};

// Reference check: evaluates every body directly.
bool check_blocking(std::span<const BlockingConstraint> blocks, const Itemset& items, std::int64_t support,
                    const EvalContext& ctx = {});

enum class BranchOrder { Default, LevelFirst };

// Restricts solutions to one value of an incomparability function.
struct LevelFilter {
    ExprPtr body;
    std::int64_t value = 0;
};

struct SearchConfig {
    BranchOrder branch_order = BranchOrder::Default;
    std::optional<std::size_t> fixed_level;  // |itemset|
    std::optional<LevelFilter> level;
    Direction level_order = Direction::Ascending;  // cardinality order for LevelFirst
    const BlockSet* blocks = nullptr;
    std::vector<ExprPtr> side_constraints;
    ExprPtr level_function;                 // Solution::level; cardinality when null
    std::size_t max_solutions = 0;          // 0 = all
    bool include_empty = true;
    bool propagate = true;  // support, weight and cardinality pruning
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SearchStats {
    std::size_t nodes = 0;
    std::size_t solutions = 0;
    std::size_t active_blocks = 0;
    std::chrono::duration<double> wall_time{0};
    bool timed_out = false;
};

struct SearchResult {
    std::vector<Solution> solutions;
    SearchStats stats;
};

// All itemsets X with support(X) >= theta that satisfy the side constraints,
// the level restrictions and every blocking constraint. Weighted-sum and
// cardinality bounds among the side constraints are used for pruning. Items are branched in
// ascending id, exclude before include, so solutions come out in
// lexicographic order of their 0/1 item vectors (every subset before its
// supersets).
SearchResult enumerate(const MiningInstance& inst, const SearchConfig& config);

// Cardinality range of any frequent itemset: [0, min(widest transaction, #frequent items)].
std::pair<std::int64_t, std::int64_t> level_bounds(const MiningInstance& inst);

}  // namespace cdpmine
