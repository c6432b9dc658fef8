#pragma once

#include <cstddef>
#include <vector>

#include "cdpmine/dataset.hpp"
#include "cdpmine/model.hpp"
#include "cdpmine/solution.hpp"

namespace cdpmine {

inline constexpr std::size_t kOracleMaxItems = 24;

// FeasibleOnly: a generator (closed set) may only be beaten by a subset
// (superset) that itself satisfies theta and the side constraints, which is
// what blocking against previously found solutions does. PureDefinition
// consults every subset (superset) regardless.
enum class DominanceScope { FeasibleOnly, PureDefinition };

// Immediate: only sets one item smaller (larger). Exhaustive: every proper
// subset (superset). The two agree; Exhaustive is the slow cross-check.
enum class NeighbourCheck { Immediate, Exhaustive };

struct OracleOptions {
    bool include_empty = true;
    DominanceScope scope = DominanceScope::FeasibleOnly;
    NeighbourCheck check = NeighbourCheck::Immediate;
};

// Sweeps all 2^n itemsets, counting support by scanning transactions.
// Solutions come out in increasing order of their item bitmask; `level` is
// the cardinality. Throws UniverseTooLarge above kOracleMaxItems.
std::vector<Solution> brute_frequent(const MiningInstance& inst, const OracleOptions& opts = {});
std::vector<Solution> brute_generators(const MiningInstance& inst, const OracleOptions& opts = {});
std::vector<Solution> brute_closed(const MiningInstance& inst, const OracleOptions& opts = {});

std::vector<Solution> brute_task(Task task, const MiningInstance& inst, const OracleOptions& opts = {});

}  // namespace cdpmine
