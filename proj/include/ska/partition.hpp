#ifndef SKA_PARTITION_HPP
#define SKA_PARTITION_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "ska/errors.hpp"

namespace ska {

/// Partition of {1..n} into disjoint nonempty blocks, kept in canonical form:
/// each block sorted ascending, blocks ordered by smallest element.
struct SetPartition {
    std::vector<std::vector<std::size_t>> blocks;

    std::size_t block_count() const { return blocks.size(); }

    std::size_t ground_size() const {
        std::size_t total = 0;
        for (const auto& b : blocks) total += b.size();
        return total;
    }

    void validate(std::size_t n) const {
        std::vector<bool> seen(n + 1, false);
        for (const auto& b : blocks) {
            if (b.empty()) throw invalid_partition("SetPartition: empty block");
            for (std::size_t e : b) {
                if (e < 1 || e > n || seen[e])
                    throw invalid_partition("SetPartition: element " + std::to_string(e) +
                                            " missing, repeated, or out of range");
                seen[e] = true;
            }
        }
        for (std::size_t e = 1; e <= n; ++e)
            if (!seen[e]) throw invalid_partition("SetPartition: element " + std::to_string(e) +
                                                  " not covered");
    }

    static SetPartition singletons(std::size_t n) {
        SetPartition p;
        for (std::size_t i = 1; i <= n; ++i) p.blocks.push_back({i});
        return p;
    }

    /// Canonical-form lexicographic order (blocks sorted by smallest element).
    bool operator<(const SetPartition& o) const { return blocks < o.blocks; }
    bool operator==(const SetPartition& o) const { return blocks == o.blocks; }
};

/// Restricted-growth-string encoding: rgs[i] is the 0-based block of element
/// i+1, with rgs[0] = 0 and rgs[i] <= 1 + max(prefix).
inline SetPartition partition_from_rgs(const std::vector<std::size_t>& rgs) {
    SetPartition p;
    for (std::size_t i = 0; i < rgs.size(); ++i) {
        if (rgs[i] >= p.blocks.size()) p.blocks.emplace_back();
        p.blocks[rgs[i]].push_back(i + 1);
    }
    return p;
}

/// Enumerates every partition of {1..n} in restricted-growth-string
/// lexicographic order. The visitor receives the RGS; return false to stop.
inline void for_each_partition(std::size_t n,
                               const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    if (n == 0) return;
    std::vector<std::size_t> rgs(n, 0), maxes(n, 0);
    for (;;) {
        if (!visit(rgs)) return;
        // rightmost position that can still grow: rgs[i] <= max(prefix)
        std::size_t i = n;
        while (i-- > 1 && rgs[i] > maxes[i - 1]) {}
        if (i == 0 || rgs[i] > maxes[i - 1]) return;
        ++rgs[i];
        maxes[i] = std::max(maxes[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
}

inline uint64_t bell_number(std::size_t n) {
    // Bell triangle; n <= 25 stays within 64 bits.
    std::vector<uint64_t> row{1};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<uint64_t> next{row.back()};
        for (uint64_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

} // namespace ska

#endif
