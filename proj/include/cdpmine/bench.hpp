#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cdpmine/dataset.hpp"
#include "cdpmine/dominance.hpp"
#include "cdpmine/model.hpp"

namespace cdpmine {

enum class VerifyMode { Off, Oracle, Cross };
enum class Verified { Yes, No, Skipped };
enum class RowStatus { Ok, Timeout, Error };

std::optional<VerifyMode> parse_verify_mode(std::string_view s);
std::string_view verified_name(Verified v);

struct BenchRow {
    std::string instance;
    std::string mode;
    std::size_t nb_sols = 0;
    double time_s = 0.0;
    std::size_t blocks = 0;
    std::size_t calls = 0;
    std::size_t dominated_emitted = 0;
    Verified verified = Verified::Skipped;
    RowStatus status = RowStatus::Ok;
    std::string error;  // not serialised

    friend bool operator==(const BenchRow& a, const BenchRow& b) {
        return a.instance == b.instance && a.mode == b.mode && a.nb_sols == b.nb_sols && a.time_s == b.time_s &&
               a.blocks == b.blocks && a.calls == b.calls && a.dominated_emitted == b.dominated_emitted &&
               a.verified == b.verified && a.status == b.status;
    }
};

inline constexpr const char* kCsvHeader = "instance,mode,nb_sols,time_s,blocks,calls,dominated_emitted,verified";

// The time column holds `*` for a timed-out run and `error` for a run that
// could not be set up; otherwise the shortest decimal that reads back exactly.
std::string to_csv_line(const BenchRow& row);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
std::vector<BenchRow> parse_csv(std::istream& in);

struct BenchConfig {
    std::vector<std::string> datasets;
    std::vector<double> freqs{50.0};
    std::vector<std::uint64_t> seeds{1};
    std::optional<std::string> meta_path;  // replaces generated metadata; ids as in the data file
    std::vector<Strategy> modes{Strategy::CdpDefault, Strategy::CdpLevel, Strategy::Cdpi};
    ModelSpec model = builtin_model(Task::Generator);
    std::int64_t min_value = 0;
    std::int64_t max_cost = kNoCostLimit;
    std::optional<std::uint64_t> random_thresholds;
    VerifyMode verify = VerifyMode::Off;
    std::optional<double> timeout_seconds;
    unsigned jobs = 1;
    bool include_empty = true;
};

// One row per (dataset, freq, seed, mode) in that nesting order. Items are
// renumbered densely before mining.
std::vector<BenchRow> run_benchmark(const BenchConfig& config);

// "zoo_30_s7": data file stem, frequency, metadata seed ("meta" when read from a file).
std::string instance_label(const std::string& dataset_path, double freq, std::optional<std::uint64_t> seed);

// The built-in task whose model this is, if any.
std::optional<Task> builtin_task_of(const ModelSpec& model);

// "101 transactions, 36 items, density 44%"
std::string format_stats(const DbStats& stats);

}  // namespace cdpmine
