#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cdpmine/dataset.hpp"
#include "cdpmine/engine.hpp"
#include "cdpmine/model.hpp"
#include "cdpmine/solution.hpp"

namespace cdpmine {

enum class Strategy { CdpDefault, CdpLevel, Cdpi };

std::optional<Strategy> parse_strategy(std::string_view name);  // cdp-default | cdp-level | cdpi
std::string_view strategy_name(Strategy s);

struct RunOptions {
    bool include_empty = true;
    bool propagate = true;
    std::optional<double> timeout_seconds;
};

struct RunResult {
    std::vector<Solution> solutions;
    std::size_t n_dominated_emitted = 0;
    std::size_t calls = 0;
    std::size_t blocks_total = 0;  // sum over calls of the blocks active in that call
    double time_seconds = 0.0;
    std::size_t nodes = 0;
    bool timed_out = false;
};

// One solver call per solution (plus the final, failing one); each solution's
// blocking constraint is installed before the next call.
RunResult run_cdp(const MiningInstance& inst, const ModelSpec& model, BranchOrder order = BranchOrder::Default,
                  const RunOptions& opts = {});

// One solver call per value of the incomparability function, each enumerating
// all solutions of that level; blocks are installed after the level completes.
RunResult run_cdpi(const MiningInstance& inst, const ModelSpec& model, const RunOptions& opts = {});

RunResult run_strategy(Strategy s, const MiningInstance& inst, const ModelSpec& model, const RunOptions& opts = {});

// Solutions not dominated by another member of `sols`.
std::vector<Solution> post_filter(const std::vector<Solution>& sols, const DominanceRelation& rel,
                                  const MiningInstance& inst);

// Inclusive range of values the incomparability function can take on
// frequent itemsets. Cardinality uses level_bounds; other integer
// expressions are bounded by interval arithmetic.
std::pair<std::int64_t, std::int64_t> incomparability_range(const MiningInstance& inst, const IncomparabilityFn& fn,
                                                           bool include_empty = true);

}  // namespace cdpmine
