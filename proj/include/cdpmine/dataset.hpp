#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cdpmine/bitset.hpp"
#include "cdpmine/errors.hpp"

namespace cdpmine {

using ItemId = std::uint32_t;

// Sorted, duplicate-free list of item ids.
using Itemset = std::vector<ItemId>;

Itemset make_itemset(std::vector<ItemId> items);
bool is_subset(const Itemset& sub, const Itemset& super);
std::string to_string(const Itemset& items);

// Immutable horizontal + vertical view of a transactional database.
class TransactionDb {
public:
    // Transactions are canonicalised (sorted, deduplicated). Throws EmptyDatabase
    // when `transactions` is empty.
    explicit TransactionDb(std::vector<Itemset> transactions, std::size_t n_items = 0);

    std::size_t n_transactions() const { return transactions_.size(); }
    std::size_t n_items() const { return n_items_; }
    const std::vector<Itemset>& transactions() const { return transactions_; }
    const Bitset& cover(ItemId item) const { return covers_.at(item); }
    std::size_t item_support(ItemId item) const { return item_support_.at(item); }
    std::size_t max_transaction_size() const { return max_width_; }

    friend bool operator==(const TransactionDb& a, const TransactionDb& b) {
        return a.n_items_ == b.n_items_ && a.transactions_ == b.transactions_;
    }

private:
    std::vector<Itemset> transactions_;
    std::size_t n_items_ = 0;
    std::vector<Bitset> covers_;
    std::vector<std::size_t> item_support_;
    std::size_t max_width_ = 0;
};

TransactionDb parse_transaction_db(std::istream& in);
TransactionDb parse_transaction_db(const std::string& text);
TransactionDb load_transaction_db(const std::string& path);

// Inverse of parse_transaction_db: one line per transaction.
std::string to_text(const TransactionDb& db);

// Cover-intersection support. The empty itemset is supported by every transaction.
std::size_t support(const TransactionDb& db, const Itemset& items);
Bitset cover(const TransactionDb& db, const Itemset& items);

// Horizontal scan; independent of the vertical covers.
std::size_t support_by_scan(const TransactionDb& db, const Itemset& items);

struct DbStats {
    std::size_t n_transactions = 0;
    std::size_t n_items = 0;
    double density = 0.0;
};

// Statistics over the dense universe of items that actually occur.
DbStats db_stats(const TransactionDb& db);

// Renumbers the items that occur to 0..k-1, preserving order.
struct DenseRemap {
    TransactionDb db;
    std::vector<ItemId> original;  // dense id -> original id

    Itemset to_original(const Itemset& dense) const;
};

DenseRemap densify(const TransactionDb& db);

struct ItemMeta {
    std::vector<std::int64_t> values;
    std::vector<std::int64_t> costs;
    std::uint64_t seed = 0;
};

inline constexpr std::int64_t kMaxItemWeight = 5;

// Unbiased draw from {0, ..., bound-1} by rejection. Unlike
// std::uniform_int_distribution the result is the same on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Independent uniform integers in [0, kMaxItemWeight]; identical for identical seeds.
ItemMeta generate_item_meta(const TransactionDb& db, std::uint64_t seed);

// Sidecar CSV with header `item,value,cost`. Items not listed get weight 0.
ItemMeta parse_item_meta(std::istream& in, std::size_t n_items);
ItemMeta load_item_meta(const std::string& path, std::size_t n_items);
std::string to_csv(const ItemMeta& meta);

inline constexpr std::int64_t kNoCostLimit = std::numeric_limits<std::int64_t>::max();

struct MiningInstance {
    std::shared_ptr<const TransactionDb> db;
    ItemMeta meta;
    double freq_pct = 0.0;
    std::size_t theta = 1;
    std::int64_t min_value = 0;
    std::int64_t max_cost = kNoCostLimit;

    std::size_t n_items() const { return db->n_items(); }
    std::size_t n_transactions() const { return db->n_transactions(); }
};

// theta = ceil(freq_pct/100 * n_transactions), clamped to [1, n_transactions].
std::size_t support_threshold(double freq_pct, std::size_t n_transactions);

MiningInstance make_instance(std::shared_ptr<const TransactionDb> db, ItemMeta meta, double freq_pct,
                             std::int64_t min_value = 0, std::int64_t max_cost = kNoCostLimit);

// Same, but with an absolute support threshold.
MiningInstance make_instance_with_theta(std::shared_ptr<const TransactionDb> db, ItemMeta meta, std::size_t theta,
                                        std::int64_t min_value = 0, std::int64_t max_cost = kNoCostLimit);

std::int64_t total_weight(std::span<const std::int64_t> weights, const Itemset& items);

}  // namespace cdpmine
