#include "cdpmine/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cdpmine/oracle.hpp"

namespace cdpmine {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <class T>
T parse_number(const std::string& field, std::size_t line) {
    T v{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) throw MalformedToken(line, field);
    return v;
}

struct Prepared {
    std::string label;
    std::optional<MiningInstance> inst;
    std::string error;
};

struct Job {
    std::size_t prepared;
    Strategy mode;
};

struct Outcome {
    BenchRow row;
    std::vector<Itemset> reduced;  // post-filtered itemsets, sorted; kept for cross-checking
};

ItemMeta remap_meta(const ItemMeta& meta, const DenseRemap& remap) {
    ItemMeta out;
    out.seed = meta.seed;
    for (ItemId orig : remap.original) {
        out.values.push_back(meta.values.at(orig));
        out.costs.push_back(meta.costs.at(orig));
    }
    return out;
}

std::int64_t weight_sum(const std::vector<std::int64_t>& w) {
    std::int64_t s = 0;
    for (auto x : w) s += x;
    return s;
}

std::vector<Prepared> prepare(const BenchConfig& cfg) {
    std::vector<Prepared> out;
    std::vector<std::optional<std::uint64_t>> seeds;
    if (cfg.meta_path) seeds.push_back(std::nullopt);
    else seeds.assign(cfg.seeds.begin(), cfg.seeds.end());

    for (const std::string& path : cfg.datasets) {
        std::shared_ptr<const TransactionDb> db;
        std::optional<ItemMeta> file_meta;
        std::string error;
        try {
            const TransactionDb raw = load_transaction_db(path);
            DenseRemap remap = densify(raw);
            if (cfg.meta_path) file_meta = remap_meta(load_item_meta(*cfg.meta_path, raw.n_items()), remap);
            db = std::make_shared<const TransactionDb>(std::move(remap.db));
        } catch (const std::exception& e) {
            error = e.what();
        }
        for (double freq : cfg.freqs) {
            for (const auto& seed : seeds) {
                Prepared p;
                p.label = instance_label(path, freq, seed);
                if (!db) {
                    p.error = error;
                    out.push_back(std::move(p));
                    continue;
                }
                ItemMeta meta = file_meta ? *file_meta : generate_item_meta(*db, *seed);
                std::int64_t min_value = cfg.min_value;
                std::int64_t max_cost = cfg.max_cost;
                if (cfg.random_thresholds) {
                    std::seed_seq seq{static_cast<std::uint32_t>(*cfg.random_thresholds),
                                      static_cast<std::uint32_t>(*cfg.random_thresholds >> 32),
                                      static_cast<std::uint32_t>(seed.value_or(0)),
                                      static_cast<std::uint32_t>(std::llround(freq * 1000))};
                    std::mt19937_64 rng(seq);
                    min_value = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(weight_sum(meta.values)) + 1));
                    max_cost = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(weight_sum(meta.costs)) + 1));
                }
                try {
                    p.inst = make_instance(db, std::move(meta), freq, min_value, max_cost);
                } catch (const std::exception& e) {
                    p.error = e.what();
                }
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

std::vector<Itemset> sorted_itemsets(const std::vector<Solution>& sols) {
    std::vector<Itemset> out;
    out.reserve(sols.size());
    for (const Solution& s : sols) out.push_back(s.itemset);
    std::sort(out.begin(), out.end());
    return out;
}

Outcome execute(const BenchConfig& cfg, const Prepared& p, Strategy mode) {
    Outcome o;
    o.row.instance = p.label;
    o.row.mode = std::string(strategy_name(mode));
    if (!p.inst) {
        o.row.status = RowStatus::Error;
        o.row.error = p.error;
        return o;
    }
    const MiningInstance& inst = *p.inst;
    RunOptions opts;
    opts.include_empty = cfg.include_empty;
    opts.timeout_seconds = cfg.timeout_seconds;
    RunResult r;
    try {
        r = run_strategy(mode, inst, cfg.model, opts);
    } catch (const std::exception& e) {
        o.row.status = RowStatus::Error;
        o.row.error = e.what();
        return o;
    }
    o.row.nb_sols = r.solutions.size();
    o.row.time_s = r.time_seconds;
    o.row.blocks = r.blocks_total;
    o.row.calls = r.calls;
    o.row.dominated_emitted = r.n_dominated_emitted;
    if (r.timed_out) {
        o.row.status = RowStatus::Timeout;
        return o;
    }
    o.reduced = sorted_itemsets(cfg.model.dominance ? post_filter(r.solutions, *cfg.model.dominance, inst) : r.solutions);

    if (cfg.verify == VerifyMode::Oracle) {
        const auto task = builtin_task_of(cfg.model);
        if (task && inst.n_items() <= kOracleMaxItems) {
            OracleOptions oo;
            oo.include_empty = cfg.include_empty;
            o.row.verified = sorted_itemsets(brute_task(*task, inst, oo)) == o.reduced ? Verified::Yes : Verified::No;
        }
    }
    return o;
}

void cross_check(std::vector<Outcome>& outcomes, std::size_t per_instance) {
    for (std::size_t start = 0; start < outcomes.size(); start += per_instance) {
        std::vector<Outcome*> done;
        for (std::size_t k = start; k < start + per_instance; ++k)
            if (outcomes[k].row.status == RowStatus::Ok) done.push_back(&outcomes[k]);
        if (done.size() < 2) continue;
        const bool same = std::all_of(done.begin(), done.end(), [&](const Outcome* o) { return o->reduced == done.front()->reduced; });
        for (Outcome* o : done) o->row.verified = same ? Verified::Yes : Verified::No;
    }
}

}  // namespace

std::optional<VerifyMode> parse_verify_mode(std::string_view s) {
    if (s == "off") return VerifyMode::Off;
    if (s == "oracle") return VerifyMode::Oracle;
    if (s == "cross") return VerifyMode::Cross;
    return std::nullopt;
}

std::string_view verified_name(Verified v) {
    switch (v) {
        case Verified::Yes: return "yes";
        case Verified::No: return "no";
        case Verified::Skipped: return "skipped";
    }
    return "";
}

std::string to_csv_line(const BenchRow& row) {
    std::string time = row.status == RowStatus::Timeout ? "*" : row.status == RowStatus::Error ? "error" : format_double(row.time_s);
    std::ostringstream out;
    out << row.instance << ',' << row.mode << ',' << row.nb_sols << ',' << time << ',' << row.blocks << ',' << row.calls << ','
        << row.dominated_emitted << ',' << verified_name(row.verified);
    return out.str();
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << kCsvHeader << '\n';
    for (const BenchRow& r : rows) out << to_csv_line(r) << '\n';
}

std::vector<BenchRow> parse_csv(std::istream& in) {
    std::vector<BenchRow> rows;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line) || line != kCsvHeader) throw MalformedToken(1, line);
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw MalformedToken(line_no, line);
        BenchRow r;
        r.instance = f[0];
        r.mode = f[1];
        r.nb_sols = parse_number<std::size_t>(f[2], line_no);
        if (f[3] == "*") r.status = RowStatus::Timeout;
        else if (f[3] == "error") r.status = RowStatus::Error;
        else r.time_s = parse_number<double>(f[3], line_no);
        r.blocks = parse_number<std::size_t>(f[4], line_no);
        r.calls = parse_number<std::size_t>(f[5], line_no);
        r.dominated_emitted = parse_number<std::size_t>(f[6], line_no);
        if (f[7] == "yes") r.verified = Verified::Yes;
        else if (f[7] == "no") r.verified = Verified::No;
        else if (f[7] == "skipped") r.verified = Verified::Skipped;
        else throw MalformedToken(line_no, f[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<BenchRow> run_benchmark(const BenchConfig& cfg) {
    const std::vector<Prepared> prepared = prepare(cfg);
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < prepared.size(); ++p)
        for (Strategy m : cfg.modes) jobs.push_back(Job{p, m});

    std::vector<Outcome> outcomes(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) outcomes[k] = execute(cfg, prepared[jobs[k].prepared], jobs[k].mode);
    };
    const unsigned n_threads = std::max(1U, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (cfg.verify == VerifyMode::Cross && !cfg.modes.empty()) cross_check(outcomes, cfg.modes.size());

    std::vector<BenchRow> rows;
    rows.reserve(outcomes.size());
    for (auto& o : outcomes) rows.push_back(std::move(o.row));
    return rows;
}

std::string instance_label(const std::string& dataset_path, double freq, std::optional<std::uint64_t> seed) {
    std::string stem = std::filesystem::path(dataset_path).stem().string();
    std::replace(stem.begin(), stem.end(), ',', '_');
    const std::string f = freq == std::floor(freq) ? std::to_string(static_cast<long long>(freq)) : format_double(freq);
    return stem + "_" + f + "_" + (seed ? "s" + std::to_string(*seed) : std::string("meta"));
}

std::optional<Task> builtin_task_of(const ModelSpec& model) {
    for (Task t : {Task::Frequent, Task::Generator, Task::Closed})
        if (model == builtin_model(t)) return t;
    return std::nullopt;
}

std::string format_stats(const DbStats& stats) {
    return std::to_string(stats.n_transactions) + " transactions, " + std::to_string(stats.n_items) + " items, density " +
           std::to_string(std::lround(stats.density * 100.0)) + "%";
}

}  // namespace cdpmine
