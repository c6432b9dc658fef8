#include "cdpmine/engine.hpp"
#include "cdpmine/oracle.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdpmine;
using namespace cdpmine::testing;

namespace {

SearchConfig plain(const ModelSpec& model) {
    SearchConfig cfg;
    cfg.side_constraints = model.side_constraints;
    return cfg;
}

const ModelSpec& frequent_model() {
    static const ModelSpec m = builtin_model(Task::Frequent);
    return m;
}

}  // namespace

TEST_CASE("enumerate examples on the three-transaction db") {
    const MiningInstance inst = tiny_instance(2);
    SearchConfig cfg = plain(frequent_model());

    cfg.fixed_level = 1;
    SearchResult r = enumerate(inst, cfg);
    REQUIRE(r.solutions.size() == 2);
    CHECK(sorted(r.solutions)[0] == Solution{{1}, 3, 1});
    CHECK(sorted(r.solutions)[1] == Solution{{2}, 2, 1});

    cfg.fixed_level = 0;
    r = enumerate(inst, cfg);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0] == Solution{{}, 3, 0});

    cfg.fixed_level = 2;
    BlockSet blocks(inst.n_items());
    blocks.add(BlockingConstraint{parse_expr("({2} subsetEq itemset) -> (support != 2)"), Solution{{2}, 2, 1}});
    cfg.blocks = &blocks;
    r = enumerate(inst, cfg);
    CHECK(r.solutions.empty());
    CHECK(r.stats.active_blocks == 1);
}

TEST_CASE("default order lists every subset before its supersets") {
    const MiningInstance inst = tiny_instance(1);
    const SearchResult r = enumerate(inst, plain(frequent_model()));
    const std::vector<Itemset> expected{{}, {3}, {2}, {1}, {1, 3}, {1, 2}};
    REQUIRE(r.solutions.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(r.solutions[k].itemset == expected[k]);
    for (std::size_t a = 0; a < r.solutions.size(); ++a)
        for (std::size_t b = a + 1; b < r.solutions.size(); ++b) CHECK_FALSE(is_subset(r.solutions[b].itemset, r.solutions[a].itemset));
}

TEST_CASE("single-solution mode and level-first order") {
    const MiningInstance inst = tiny_instance(1);
    SearchConfig cfg = plain(frequent_model());
    cfg.max_solutions = 1;
    CHECK(enumerate(inst, cfg).solutions.size() == 1);

    cfg.max_solutions = 0;
    cfg.branch_order = BranchOrder::LevelFirst;
    SearchResult up = enumerate(inst, cfg);
    for (std::size_t k = 1; k < up.solutions.size(); ++k) CHECK(up.solutions[k - 1].level <= up.solutions[k].level);
    cfg.level_order = Direction::Descending;
    SearchResult down = enumerate(inst, cfg);
    for (std::size_t k = 1; k < down.solutions.size(); ++k) CHECK(down.solutions[k - 1].level >= down.solutions[k].level);
    CHECK(itemsets(up.solutions) == itemsets(down.solutions));
}

TEST_CASE("level_bounds") {
    CHECK(level_bounds(tiny_instance(2)) == std::pair<std::int64_t, std::int64_t>{0, 2});
    CHECK(level_bounds(tiny_instance(3)) == std::pair<std::int64_t, std::int64_t>{0, 1});
    CHECK(level_bounds(tiny_instance(1)) == std::pair<std::int64_t, std::int64_t>{0, 2});
}

TEST_CASE("check_blocking examples") {
    CHECK(check_blocking({}, {1, 2}, 7));
    const std::vector<BlockingConstraint> eq1{{parse_expr("!(itemset subsetEq {1,2})"), Solution{{1, 2}, 0, 2}}};
    CHECK(check_blocking(eq1, {3}, 0));
    CHECK_FALSE(check_blocking(eq1, {1}, 0));
    const std::vector<BlockingConstraint> gen{{parse_expr("({2} subsetEq itemset) -> (support != 2)"), Solution{{2}, 2, 1}}};
    CHECK(check_blocking(gen, {1, 3}, 1));
}

TEST_CASE("BlockSet agrees with check_blocking on every shape") {
    const std::vector<const char*> bodies{
        "({1,3} subsetEq itemset) -> (support != 2)",
        "(itemset subsetEq {0,1,2}) -> (support != 3)",
        "true -> (support != 4)",
        "support != 1",
        "2 != support",
        "!(itemset subsetEq {2,4})",
        "({9} subsetEq itemset) -> (support != 2)",
        "|itemset| = 3 -> support > 2",
        "true",
        "({} subsetEq itemset) -> (support != 0)",
    };
    const std::size_t n = 6;
    for (const char* text : bodies) {
        INFO(text);
        const std::vector<BlockingConstraint> list{{parse_expr(text), Solution{{}, 0, 0}}};
        const BlockSet set(n, list);
        for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
            Itemset x;
            for (ItemId i = 0; i < n; ++i)
                if ((mask >> i) & 1U) x.push_back(i);
            for (std::int64_t s = 0; s <= 5; ++s) CHECK(set.admits(x, set.mask_of(x), s, {}) == check_blocking(list, x, s));
        }
    }
}

TEST_CASE("enumerate equals brute-force filtering of all itemsets") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const RandomCase c = random_case(seed);
        INFO("seed " << seed);
        const std::vector<Solution> expected = brute_frequent(c.inst);
        const SearchResult got = enumerate(c.inst, plain(frequent_model()));
        CHECK(sorted(got.solutions) == sorted(expected));
        CHECK(got.stats.solutions <= got.stats.nodes);
    }
}

TEST_CASE("pruning never changes the solution set") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const RandomCase c = random_case(seed, 3, 10);
        INFO("seed " << seed);
        const ModelSpec model = builtin_model(Task::Generator);
        BlockSet blocks(c.inst.n_items());
        SearchConfig cfg = plain(model);
        cfg.blocks = &blocks;
        // A few blocks from the frequent solutions, so the partial check fires.
        const SearchResult all = enumerate(c.inst, cfg);
        for (std::size_t k = 0; k < all.solutions.size(); k += 3) blocks.add(substitute_solution(*model.dominance, all.solutions[k]));
        for (std::optional<std::size_t> level : {std::optional<std::size_t>{}, std::optional<std::size_t>{2}}) {
            cfg.fixed_level = level;
            cfg.propagate = true;
            const SearchResult on = enumerate(c.inst, cfg);
            cfg.propagate = false;
            const SearchResult off = enumerate(c.inst, cfg);
            CHECK(on.solutions == off.solutions);
            CHECK(on.stats.nodes <= off.stats.nodes);
        }
    }
}

TEST_CASE("levels partition the solution set") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const RandomCase c = random_case(seed);
        INFO("seed " << seed);
        SearchConfig cfg = plain(frequent_model());
        const SearchResult all = enumerate(c.inst, cfg);
        const auto [lo, hi] = level_bounds(c.inst);
        std::vector<Solution> joined;
        for (std::int64_t k = lo; k <= hi; ++k) {
            cfg.fixed_level = static_cast<std::size_t>(k);
            for (const Solution& s : enumerate(c.inst, cfg).solutions) {
                CHECK(s.level == k);
                joined.push_back(s);
            }
        }
        CHECK(joined.size() == all.solutions.size());
        CHECK(sorted(joined) == sorted(all.solutions));
    }
}

TEST_CASE("generic level filter matches a post-hoc filter") {
    const ExprPtr fn = parse_expr("(sum i in itemset . values[i]) - |itemset|", false);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const RandomCase c = random_case(seed);
        SearchConfig cfg = plain(frequent_model());
        cfg.level_function = fn;
        const SearchResult all = enumerate(c.inst, cfg);
        for (std::int64_t v = -3; v <= 6; ++v) {
            cfg.level = LevelFilter{fn, v};
            std::vector<Solution> expected;
            for (const Solution& s : all.solutions)
                if (s.level == v) expected.push_back(s);
            CHECK(enumerate(c.inst, cfg).solutions == expected);
        }
    }
}

TEST_CASE("custom side constraints are enforced") {
    const ModelSpec m = parse_model("such that |itemset| >= 2 /\\ support < 3, !({1} subsetEq itemset) \\/ support >= 2");
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const RandomCase c = random_case(seed, 3, 10, 5, 40, false);
        SearchConfig cfg;
        cfg.side_constraints = m.side_constraints;
        const SearchResult got = enumerate(c.inst, cfg);
        std::vector<Solution> expected;
        for (const Solution& s : brute_frequent(c.inst)) {
            const bool has1 = is_subset({1}, s.itemset);
            if (s.itemset.size() >= 2 && s.support < 3 && (!has1 || s.support >= 2)) expected.push_back(s);
        }
        CHECK(sorted(got.solutions) == sorted(expected));
    }
}

TEST_CASE("determinism") {
    const RandomCase c = random_case(99);
    const SearchResult a = enumerate(c.inst, plain(builtin_model(Task::Frequent)));
    const SearchResult b = enumerate(c.inst, plain(builtin_model(Task::Frequent)));
    CHECK(a.solutions == b.solutions);
    CHECK(a.stats.nodes == b.stats.nodes);
}

TEST_CASE("an expired deadline stops the search") {
    std::vector<Itemset> rows(200);
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (ItemId i = 0; i < 40; ++i)
            if ((t * 7 + i * 13) % 5 != 0) rows[t].push_back(i);
    auto db = std::make_shared<const TransactionDb>(rows);
    const MiningInstance inst = make_instance_with_theta(db, zero_meta(*db), 1);
    SearchConfig cfg;
    cfg.deadline = std::chrono::steady_clock::now();
    const SearchResult r = enumerate(inst, cfg);
    CHECK(r.stats.timed_out);
    CHECK(r.stats.nodes <= 1024);
}
