#include "cdpmine/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "cdpmine/errors.hpp"

namespace cdpmine {

Itemset make_itemset(std::vector<ItemId> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

bool is_subset(const Itemset& sub, const Itemset& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::string to_string(const Itemset& items) {
    std::string out = "{";
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(items[k]);
    }
    return out + "}";
}

TransactionDb::TransactionDb(std::vector<Itemset> transactions, std::size_t n_items) : n_items_(n_items) {
    if (transactions.empty()) throw EmptyDatabase();
    transactions_.reserve(transactions.size());
    for (auto& t : transactions) {
        t = make_itemset(std::move(t));
        if (!t.empty()) n_items_ = std::max<std::size_t>(n_items_, t.back() + 1);
        max_width_ = std::max(max_width_, t.size());
        transactions_.push_back(std::move(t));
    }
    covers_.assign(n_items_, Bitset(transactions_.size()));
    item_support_.assign(n_items_, 0);
    for (std::size_t tid = 0; tid < transactions_.size(); ++tid) {
        for (ItemId i : transactions_[tid]) {
            covers_[i].set(tid);
            ++item_support_[i];
        }
    }
}

TransactionDb parse_transaction_db(std::istream& in) {
    std::vector<Itemset> transactions;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        Itemset t;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos >= line.size()) break;
            std::size_t end = pos;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
            ItemId id = 0;
            const char* first = line.data() + pos;
            const char* last = line.data() + end;
            auto [ptr, ec] = std::from_chars(first, last, id);
            if (ec != std::errc() || ptr != last) throw MalformedToken(line_no, std::string(first, last));
            t.push_back(id);
            pos = end;
        }
        if (!t.empty()) transactions.push_back(std::move(t));
    }
    if (transactions.empty()) throw EmptyDatabase();
    return TransactionDb(std::move(transactions));
}

TransactionDb parse_transaction_db(const std::string& text) {
    std::istringstream in(text);
    return parse_transaction_db(in);
}

TransactionDb load_transaction_db(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset '" + path + "'");
    return parse_transaction_db(in);
}

std::string to_text(const TransactionDb& db) {
    std::string out;
    for (const auto& t : db.transactions()) {
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k) out += ' ';
            out += std::to_string(t[k]);
        }
        out += '\n';
    }
    return out;
}

Bitset cover(const TransactionDb& db, const Itemset& items) {
    Bitset c = Bitset::full(db.n_transactions());
    for (ItemId i : items) {
        if (i >= db.n_items()) throw ItemOutOfRange(i, db.n_items());
        c &= db.cover(i);
    }
    return c;
}

std::size_t support(const TransactionDb& db, const Itemset& items) {
    if (items.empty()) return db.n_transactions();
    if (items.size() == 1) {
        if (items[0] >= db.n_items()) throw ItemOutOfRange(items[0], db.n_items());
        return db.item_support(items[0]);
    }
    return cover(db, items).count();
}

std::size_t support_by_scan(const TransactionDb& db, const Itemset& items) {
    for (ItemId i : items)
        if (i >= db.n_items()) throw ItemOutOfRange(i, db.n_items());
    return static_cast<std::size_t>(std::count_if(db.transactions().begin(), db.transactions().end(),
                                                  [&](const Itemset& t) { return is_subset(items, t); }));
}

DbStats db_stats(const TransactionDb& db) {
    DbStats s;
    s.n_transactions = db.n_transactions();
    std::size_t cells = 0;
    for (const auto& t : db.transactions()) cells += t.size();
    for (ItemId i = 0; i < db.n_items(); ++i)
        if (db.item_support(i) > 0) ++s.n_items;
    s.density = s.n_items == 0 ? 0.0 : static_cast<double>(cells) / (static_cast<double>(s.n_transactions) * s.n_items);
    return s;
}

Itemset DenseRemap::to_original(const Itemset& dense) const {
    Itemset out;
    out.reserve(dense.size());
    for (ItemId i : dense) out.push_back(original.at(i));
    return out;
}

DenseRemap densify(const TransactionDb& db) {
    std::vector<ItemId> original;
    std::vector<ItemId> dense_of(db.n_items(), 0);
    for (ItemId i = 0; i < db.n_items(); ++i) {
        if (db.item_support(i) == 0) continue;
        dense_of[i] = static_cast<ItemId>(original.size());
        original.push_back(i);
    }
    std::vector<Itemset> transactions;
    transactions.reserve(db.n_transactions());
    for (const auto& t : db.transactions()) {
        Itemset d;
        d.reserve(t.size());
        for (ItemId i : t) d.push_back(dense_of[i]);
        transactions.push_back(std::move(d));
    }
    return DenseRemap{TransactionDb(std::move(transactions), original.size()), std::move(original)};
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

ItemMeta generate_item_meta(const TransactionDb& db, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ItemMeta meta;
    meta.seed = seed;
    meta.values.resize(db.n_items());
    meta.costs.resize(db.n_items());
    for (auto& v : meta.values) v = static_cast<std::int64_t>(uniform_below(rng, kMaxItemWeight + 1));
    for (auto& c : meta.costs) c = static_cast<std::int64_t>(uniform_below(rng, kMaxItemWeight + 1));
    return meta;
}

ItemMeta parse_item_meta(std::istream& in, std::size_t n_items) {
    ItemMeta meta;
    meta.values.assign(n_items, 0);
    meta.costs.assign(n_items, 0);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (!header_seen) {
            if (line != "item,value,cost") throw MalformedToken(line_no, line);
            header_seen = true;
            continue;
        }
        std::int64_t fields[3] = {0, 0, 0};
        std::size_t start = 0;
        for (int f = 0; f < 3; ++f) {
            std::size_t end = line.find(',', start);
            if ((f < 2) != (end != std::string::npos)) throw MalformedToken(line_no, line);
            if (end == std::string::npos) end = line.size();
            const char* first = line.data() + start;
            const char* last = line.data() + end;
            auto [ptr, ec] = std::from_chars(first, last, fields[f]);
            if (ec != std::errc() || ptr != last || fields[f] < 0) throw MalformedToken(line_no, std::string(first, last));
            start = end + 1;
        }
        if (static_cast<std::size_t>(fields[0]) >= n_items) throw ItemOutOfRange(static_cast<std::size_t>(fields[0]), n_items);
        meta.values[static_cast<std::size_t>(fields[0])] = fields[1];
        meta.costs[static_cast<std::size_t>(fields[0])] = fields[2];
    }
    if (!header_seen) throw MalformedToken(line_no, "missing header item,value,cost");
    return meta;
}

ItemMeta load_item_meta(const std::string& path, std::size_t n_items) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open item metadata '" + path + "'");
    return parse_item_meta(in, n_items);
}

std::string to_csv(const ItemMeta& meta) {
    std::string out = "item,value,cost\n";
    for (std::size_t i = 0; i < meta.values.size(); ++i)
        out += std::to_string(i) + ',' + std::to_string(meta.values[i]) + ',' + std::to_string(meta.costs[i]) + '\n';
    return out;
}

std::size_t support_threshold(double freq_pct, std::size_t n_transactions) {
    // The epsilon keeps exact products such as 50% of 148 from rounding up.
    const double raw = std::ceil(freq_pct / 100.0 * static_cast<double>(n_transactions) - 1e-9);
    if (raw < 1.0) return 1;
    if (raw > static_cast<double>(n_transactions)) return n_transactions;
    return static_cast<std::size_t>(raw);
}

MiningInstance make_instance_with_theta(std::shared_ptr<const TransactionDb> db, ItemMeta meta, std::size_t theta,
                                        std::int64_t min_value, std::int64_t max_cost) {
    if (theta < 1 || theta > db->n_transactions()) throw Error("support threshold out of range");
    if (min_value < 0 || max_cost < 0) throw Error("side-constraint thresholds must be non-negative");
    if (meta.values.size() != db->n_items() || meta.costs.size() != db->n_items())
        throw Error("item metadata does not cover every item");
    MiningInstance inst;
    inst.freq_pct = 100.0 * static_cast<double>(theta) / static_cast<double>(db->n_transactions());
    inst.db = std::move(db);
    inst.meta = std::move(meta);
    inst.theta = theta;
    inst.min_value = min_value;
    inst.max_cost = max_cost;
    return inst;
}

MiningInstance make_instance(std::shared_ptr<const TransactionDb> db, ItemMeta meta, double freq_pct,
                             std::int64_t min_value, std::int64_t max_cost) {
    const std::size_t theta = support_threshold(freq_pct, db->n_transactions());
    MiningInstance inst = make_instance_with_theta(std::move(db), std::move(meta), theta, min_value, max_cost);
    inst.freq_pct = freq_pct;
    return inst;
}

std::int64_t total_weight(std::span<const std::int64_t> weights, const Itemset& items) {
    std::int64_t sum = 0;
    for (ItemId i : items) sum += weights[i];
    return sum;
}

}  // namespace cdpmine
