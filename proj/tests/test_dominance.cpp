#include "cdpmine/dominance.hpp"
#include "cdpmine/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdpmine;
using namespace cdpmine::testing;

namespace {

const ModelSpec& generator() {
    static const ModelSpec m = builtin_model(Task::Generator);
    return m;
}

const ModelSpec& closed() {
    static const ModelSpec m = builtin_model(Task::Closed);
    return m;
}

std::size_t triangle(std::size_t n) { return n * (n + 1) / 2; }

// k single-item transactions: k+1 generators ({} and each singleton).
MiningInstance disjoint_items(std::size_t k) {
    std::vector<Itemset> rows;
    for (ItemId i = 0; i < k; ++i) rows.push_back({i});
    auto db = std::make_shared<const TransactionDb>(rows);
    return make_instance_with_theta(db, zero_meta(*db), 1);
}

}  // namespace

TEST_CASE("CDP on the three-transaction db") {
    const MiningInstance inst = tiny_instance(2);
    const RunResult r = run_cdp(inst, generator());
    REQUIRE(r.solutions.size() == 2);
    CHECK(r.solutions[0] == Solution{{}, 3, 0});
    CHECK(r.solutions[1] == Solution{{2}, 2, 1});
    CHECK(r.calls == 3);
    CHECK(r.blocks_total == 0 + 1 + 2);
    CHECK(r.n_dominated_emitted == 0);

    const RunResult level = run_cdp(inst, generator(), BranchOrder::LevelFirst);
    CHECK(level.solutions == r.solutions);
    CHECK(level.calls == 3);
}

TEST_CASE("CDP+I on the three-transaction db") {
    const MiningInstance inst = tiny_instance(2);
    const RunResult r = run_cdpi(inst, generator());
    CHECK(itemsets(r.solutions) == std::vector<Itemset>{{}, {2}});
    CHECK(r.calls == 3);
    CHECK(r.blocks_total == 0 + 1 + 2);
    CHECK(r.n_dominated_emitted == 0);
}

TEST_CASE("CDP+I needs an incomparability function") {
    const ModelSpec m = parse_model("dominance_relation (fromSolution(itemset) subsetEq itemset) -> (support != fromSolution(support))");
    CHECK_THROWS_AS(run_cdpi(tiny_instance(2), m), MissingIncomparability);
}

TEST_CASE("CDP+I attempts empty levels") {
    // min_value above every itemset's value: nothing is feasible.
    auto db = tiny_db();
    const MiningInstance inst = make_instance_with_theta(db, zero_meta(*db), 2, 1);
    const RunResult r = run_cdpi(inst, generator());
    const auto [lo, hi] = level_bounds(inst);
    CHECK(r.solutions.empty());
    CHECK(r.calls == static_cast<std::size_t>(hi - lo + 1));
    CHECK(run_cdp(inst, generator()).calls == 1);
}

TEST_CASE("block accounting on disjoint single-item transactions") {
    for (std::size_t k : {2, 6, 20}) {
        const MiningInstance inst = disjoint_items(k);
        const RunResult r = run_cdp(inst, generator());
        CHECK(r.solutions.size() == k + 1);
        CHECK(r.n_dominated_emitted == 0);
        CHECK(r.calls == k + 2);
        CHECK(r.blocks_total == triangle(k + 1));
    }
}

TEST_CASE("post_filter") {
    auto db = tiny_db();
    const MiningInstance inst = make_instance_with_theta(db, zero_meta(*db), 1);
    const DominanceRelation eq1{parse_expr("!(itemset subsetEq fromSolution(itemset))")};
    const std::vector<Solution> in{{{1, 2}, 2, 2}, {{1, 3}, 1, 2}, {{1}, 3, 1}};
    const std::vector<Solution> out = post_filter(in, eq1, inst);
    REQUIRE(out.size() == 2);
    CHECK(out[0].itemset == Itemset{1, 2});
    CHECK(out[1].itemset == Itemset{1, 3});
    CHECK(post_filter({}, eq1, inst).empty());

    const std::vector<Solution> gens = run_cdpi(inst, generator()).solutions;
    CHECK(post_filter(gens, *generator().dominance, inst) == gens);
}

TEST_CASE("post_filter of frequent itemsets gives the oracle's generators and closed sets") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RandomCase c = random_case(seed);
        INFO("seed " << seed);
        const std::vector<Solution> freq = brute_frequent(c.inst);
        CHECK(sorted(post_filter(freq, *generator().dominance, c.inst)) == sorted(brute_generators(c.inst)));
        CHECK(sorted(post_filter(freq, *closed().dominance, c.inst)) == sorted(brute_closed(c.inst)));
    }
}

TEST_CASE("all strategies agree with the oracle") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const RandomCase c = random_case(seed);
        INFO("seed " << seed);
        for (Task task : {Task::Generator, Task::Closed}) {
            const ModelSpec model = builtin_model(task);
            const auto expected = itemsets(brute_task(task, c.inst));
            for (Strategy s : {Strategy::CdpDefault, Strategy::CdpLevel, Strategy::Cdpi}) {
                INFO(task_name(task) << " " << strategy_name(s));
                const RunResult r = run_strategy(s, c.inst, model);
                CHECK(itemsets(post_filter(r.solutions, *model.dominance, c.inst)) == expected);
                if (s != Strategy::Cdpi) {
                    CHECK(r.calls == r.solutions.size() + 1);
                    if (r.n_dominated_emitted == 0) CHECK(r.blocks_total == triangle(r.solutions.size()));
                } else {
                    const auto [lo, hi] = level_bounds(c.inst);
                    CHECK(r.calls <= static_cast<std::size_t>(hi - lo + 1));
                    CHECK(r.calls >= 1);
                    CHECK(r.n_dominated_emitted == 0);
                }
            }
        }
    }
}

TEST_CASE("generator strategies emit identical solution counts") {
    for (std::uint64_t seed = 200; seed < 240; ++seed) {
        const RandomCase c = random_case(seed);
        const std::size_t a = run_cdp(c.inst, generator()).solutions.size();
        const std::size_t b = run_cdp(c.inst, generator(), BranchOrder::LevelFirst).solutions.size();
        const std::size_t d = run_cdpi(c.inst, generator()).solutions.size();
        CHECK(a == b);
        CHECK(a == d);
    }
}

TEST_CASE("excluding the empty itemset") {
    const MiningInstance inst = tiny_instance(2);
    RunOptions opts;
    opts.include_empty = false;
    const RunResult r = run_cdpi(inst, generator(), opts);
    CHECK(itemsets(r.solutions) == std::vector<Itemset>{{1}, {2}});
    CHECK(r.calls == 2);
    OracleOptions o;
    o.include_empty = false;
    CHECK(itemsets(brute_generators(inst, o)) == itemsets(r.solutions));
}

TEST_CASE("a custom incomparability function still yields generators") {
    const ModelSpec m = parse_model(
        "dominance_relation (fromSolution(itemset) subsetEq itemset) -> (support != fromSolution(support))\n"
        "incomparability_function ascending 2 * |itemset| + 1");
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const RandomCase c = random_case(seed, 3, 10, 5, 40, false);
        const RunResult r = run_cdpi(c.inst, m);
        CHECK(itemsets(r.solutions) == itemsets(brute_generators(c.inst)));
        CHECK(r.n_dominated_emitted == 0);
    }
}

TEST_CASE("incomparability_range") {
    const MiningInstance inst = tiny_instance(2);
    CHECK(incomparability_range(inst, *generator().incomparability) == std::pair<std::int64_t, std::int64_t>{0, 2});
    CHECK(incomparability_range(inst, *generator().incomparability, false) == std::pair<std::int64_t, std::int64_t>{1, 2});
    const IncomparabilityFn f{Direction::Ascending, parse_expr("3 - |itemset|", false)};
    CHECK(incomparability_range(inst, f) == std::pair<std::int64_t, std::int64_t>{1, 3});
    const IncomparabilityFn g{Direction::Ascending, parse_expr("support * 2", false)};
    CHECK(incomparability_range(inst, g) == std::pair<std::int64_t, std::int64_t>{4, 6});
    const IncomparabilityFn wide{Direction::Ascending, parse_expr("support * max_cost", false)};
    CHECK_THROWS_AS(incomparability_range(inst, wide), Error);
}

TEST_CASE("timeouts are reported") {
    std::vector<Itemset> rows(300);
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (ItemId i = 0; i < 60; ++i)
            if ((t * 31 + i * 17) % 7 > 1) rows[t].push_back(i);
    auto db = std::make_shared<const TransactionDb>(rows);
    const MiningInstance inst = make_instance_with_theta(db, zero_meta(*db), 1);
    RunOptions opts;
    opts.timeout_seconds = 0.05;
    const RunResult r = run_cdpi(inst, generator(), opts);
    CHECK(r.timed_out);
    CHECK(r.time_seconds < 5.0);
}
