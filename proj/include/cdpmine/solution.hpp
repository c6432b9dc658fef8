#pragma once

#include <cstdint>

#include "cdpmine/dataset.hpp"

namespace cdpmine {

struct Solution {
    Itemset itemset;
    std::int64_t support = 0;
    std::int64_t level = 0;  // value of the incomparability function (cardinality by default)

    friend bool operator==(const Solution&, const Solution&) = default;
};

}  // namespace cdpmine
