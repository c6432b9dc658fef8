#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cdpmine/bench.hpp"

using namespace cdpmine;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

int usage(const std::string& msg) {
    std::cerr << "mine: " << msg << '\n';
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dominance-programming itemset miner: CDP, level-first CDP and CDP+I over transaction databases."};

    BenchConfig cfg;
    std::vector<std::string> stats_files;
    std::vector<std::string> modes;
    std::string task_name_arg = "generator";
    std::string model_path;
    std::string verify = "off";
    std::string out_path;
    double timeout = 0;
    bool no_empty = false;
    std::uint64_t threshold_seed = 0;
    std::string meta_path;

    app.add_option("--data", cfg.datasets, "Transaction file(s), one transaction of item ids per line")->check(CLI::ExistingFile);
    auto* meta = app.add_option("--meta", meta_path, "Item metadata CSV (item,value,cost)")->check(CLI::ExistingFile);
    auto* seed = app.add_option("--seed", cfg.seeds, "Seed(s) for generated item values/costs")->delimiter(',');
    meta->excludes(seed);
    app.add_option("--freq", cfg.freqs, "Minimum frequency in percent (default 50)")->delimiter(',')->check(CLI::Range(0.0, 100.0));
    auto* min_value = app.add_option("--min-value", cfg.min_value, "Minimum total value (default 0)")->check(CLI::NonNegativeNumber);
    auto* max_cost = app.add_option("--max-cost", cfg.max_cost, "Maximum total cost (default unlimited)")->check(CLI::NonNegativeNumber);
    auto* random = app.add_option("--random-thresholds", threshold_seed,
                                  "Draw min-value and max-cost uniformly from [0, total] with this seed");
    random->excludes(min_value)->excludes(max_cost);
    auto* task = app.add_option("--task", task_name_arg, "generator | closed | frequent")
                     ->check(CLI::IsMember({"generator", "closed", "frequent"}));
    auto* model = app.add_option("--model", model_path, "Model file; overrides --task")->check(CLI::ExistingFile);
    model->excludes(task);
    auto* mode = app.add_option("--mode", modes, "cdp-default | cdp-level | cdpi (repeatable; default all)")->delimiter(',');
    app.add_option("--verify", verify, "oracle | cross | off")->check(CLI::IsMember({"oracle", "cross", "off"}));
    app.add_option("--out", out_path, "CSV output file (default stdout)");
    app.add_option("--stats", stats_files, "Print transaction/item/density statistics for file(s)")->check(CLI::ExistingFile);
    app.add_option("--timeout", timeout, "Per-run time limit in seconds")->check(CLI::PositiveNumber);
    app.add_option("--jobs", cfg.jobs, "Concurrent runs")->check(CLI::Range(1U, 1024U));
    app.add_flag("--no-empty-itemset", no_empty, "Do not report the empty itemset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    for (const std::string& path : stats_files) {
        try {
            std::cout << format_stats(db_stats(load_transaction_db(path))) << '\n';
        } catch (const std::exception& e) {
            std::cerr << "mine: " << path << ": " << e.what() << '\n';
            return kMismatch;
        }
    }
    if (cfg.datasets.empty()) {
        if (!stats_files.empty()) return kOk;
        return usage("nothing to do; give --data or --stats (see --help)");
    }

    if (mode->count() > 0) {
        cfg.modes.clear();
        for (const std::string& m : modes) {
            if (m.empty()) continue;
            auto s = parse_strategy(m);
            if (!s) return usage("unknown mode '" + m + "'");
            cfg.modes.push_back(*s);
        }
        if (cfg.modes.empty()) return usage("--mode given but no mode selected");
    }

    try {
        cfg.model = model_path.empty() ? builtin_model(*parse_task(task_name_arg)) : load_model(model_path);
    } catch (const std::exception& e) {
        return usage(model_path + ": " + e.what());
    }
    const bool wants_cdpi = std::find(cfg.modes.begin(), cfg.modes.end(), Strategy::Cdpi) != cfg.modes.end();
    if (wants_cdpi && !cfg.model.incomparability)
        return usage("mode cdpi needs a model with an incomparability_function (the frequent task has none)");

    if (!meta_path.empty()) cfg.meta_path = meta_path;
    if (random->count() > 0) cfg.random_thresholds = threshold_seed;
    if (timeout > 0) cfg.timeout_seconds = timeout;
    cfg.verify = *parse_verify_mode(verify);
    cfg.include_empty = !no_empty;

    const std::vector<BenchRow> rows = run_benchmark(cfg);

    if (out_path.empty()) {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(out_path);
        if (!out) return usage("cannot write '" + out_path + "'");
        write_csv(out, rows);
    }

    int code = kOk;
    for (const BenchRow& r : rows) {
        if (r.status == RowStatus::Error) {
            std::cerr << "mine: " << r.instance << " " << r.mode << ": " << r.error << '\n';
            code = kMismatch;
        }
        if (r.verified == Verified::No) {
            std::cerr << "mine: " << r.instance << " " << r.mode << ": verification mismatch\n";
            code = kMismatch;
        }
    }
    return code;
}
