#ifndef SKA_ANALYSIS_HPP
#define SKA_ANALYSIS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ska/errors.hpp"
#include "ska/partition.hpp"
#include "ska/rational.hpp"

namespace ska {

struct CapacityReport {
    Rational value_logq; // multiple of log2 q
    uint64_t q;
    std::size_t n, k;
    std::size_t active_count;
    std::size_t helper_count;
    std::string regime;    // formula branch
    bool is_upper_bound;   // Prop-style bound vs achievable capacity

    double bits() const { return logq_units_to_bits(value_logq, q); }
};

struct MmiReport {
    Rational value_logq;
    uint64_t q;
    std::size_t n, k;
    SetPartition minimizing_partition;
    uint64_t partitions_enumerated;
    // populated for small n only
    std::vector<std::pair<SetPartition, Rational>> per_partition;

    double bits() const { return logq_units_to_bits(value_logq, q); }
};

/// Achievable secret key capacity with all terminals active:
/// (n-k)/(n-1) in log-q units.
inline CapacityReport capacity(std::size_t n, std::size_t k, uint64_t q) {
    if (n < 2 || k < 1 || k > n || n > q - 1)
        throw invalid_params("capacity: need 2 <= n <= q-1, 1 <= k <= n");
    return CapacityReport{Rational(static_cast<int64_t>(n - k), static_cast<int64_t>(n - 1)),
                          q, n, k, n, 0, "all-active", false};
}

/// Helper-setting upper bound: log q when k <= h+1, else (n-k)/(|A|-1) log q.
inline CapacityReport helper_bound(std::size_t n, std::size_t k, uint64_t q,
                                   std::size_t active_count, std::size_t helper_count) {
    if (active_count + helper_count != n)
        throw invalid_params("helper_bound: |A| + h must equal n");
    if (active_count < 2)
        throw invalid_params("helper_bound: need at least two active users");
    if (k < 1 || k > n || n > q - 1)
        throw invalid_params("helper_bound: need 1 <= k <= n <= q-1");
    CapacityReport rep{Rational(1), q, n, k, active_count, helper_count,
                       "helpers:k<=h+1", helper_count > 0};
    if (k > helper_count + 1) {
        rep.value_logq = Rational(static_cast<int64_t>(n - k),
                                  static_cast<int64_t>(active_count - 1));
        rep.regime = "helpers:k>h+1";
    }
    return rep;
}

namespace detail {

inline __int128 binomial_i128(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    __int128 result = 1;
    for (std::size_t i = 1; i <= r; ++i) {
        result = result * static_cast<__int128>(n - r + i);
        result /= static_cast<__int128>(i);
    }
    return result;
}

} // namespace detail

/// Closed form of the inclusion-exclusion MMI coefficient:
/// (-1)^{k-1} C(n-2, k-1); zero when n = k.
inline int64_t mcgill_mmi_closed(std::size_t n, std::size_t k) {
    if (k < 1 || k > n)
        throw invalid_params("mcgill_mmi_closed: need 1 <= k <= n");
    if (n == k) return n == 1 ? 1 : 0; // single variable: MMI is its own entropy
    __int128 c = detail::binomial_i128(n - 2, k - 1);
    if (c > INT64_MAX) throw arithmetic_overflow("mcgill_mmi_closed: binomial overflow");
    return (k % 2 == 1) ? static_cast<int64_t>(c) : -static_cast<int64_t>(c);
}

/// Direct alternating sum sum_i (-1)^{i-1} C(n,i) min(i,k).
inline int64_t mcgill_mmi_bruteforce(std::size_t n, std::size_t k) {
    if (k < 1 || k > n)
        throw invalid_params("mcgill_mmi_bruteforce: need 1 <= k <= n");
    if (n > 62)
        throw arithmetic_overflow("mcgill_mmi_bruteforce: n > 62 overflows 64-bit binomials");
    __int128 acc = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        __int128 term = detail::binomial_i128(n, i) * static_cast<__int128>(std::min(i, k));
        acc += (i % 2 == 1) ? term : -term;
    }
    if (acc > INT64_MAX || acc < INT64_MIN)
        throw arithmetic_overflow("mcgill_mmi_bruteforce: result overflow");
    return static_cast<int64_t>(acc);
}

/// Subset-sum form over all nonempty S subset of {1..n}; exponential, kept as
/// an independent route for cross-checks.
inline int64_t mcgill_mmi_subset_sum(std::size_t n, std::size_t k) {
    if (k < 1 || k > n || n > 24)
        throw invalid_params("mcgill_mmi_subset_sum: need 1 <= k <= n <= 24");
    int64_t acc = 0;
    for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
        std::size_t sz = static_cast<std::size_t>(__builtin_popcountll(mask));
        int64_t term = static_cast<int64_t>(std::min(sz, k));
        acc += (sz % 2 == 1) ? term : -term;
    }
    return acc;
}

/// I_P(Z_V) under uniform-matroid entropies:
/// (sum_C min(|C|,k) - k) / (|P|-1) in log-q units.
inline Rational partition_mmi(std::size_t n, std::size_t k, const SetPartition& partition) {
    partition.validate(n);
    if (partition.block_count() < 2)
        throw invalid_partition("partition_mmi: need at least 2 blocks");
    int64_t entropy_sum = 0;
    for (const auto& block : partition.blocks)
        entropy_sum += static_cast<int64_t>(std::min(block.size(), k));
    return Rational(entropy_sum - static_cast<int64_t>(k),
                    static_cast<int64_t>(partition.block_count()) - 1);
}

/// Minimum of I_P over all partitions with >= 2 blocks. Ties go to the
/// canonical-form lexicographically smallest partition, which is how the
/// singleton partition surfaces when it attains the minimum.
inline MmiReport min_partition_mmi(std::size_t n, std::size_t k, uint64_t q,
                                   unsigned num_threads = 1, std::size_t max_n = 12) {
    if (n < 2 || k < 1 || k > n)
        throw invalid_params("min_partition_mmi: need 2 <= n, 1 <= k <= n");
    if (n > max_n)
        throw budget_exceeded("min_partition_mmi: n = " + std::to_string(n) +
                              " exceeds partition enumeration budget (n <= " +
                              std::to_string(max_n) + ")");

    struct Best {
        std::optional<Rational> value;
        SetPartition partition;
        uint64_t count = 0;
        std::vector<std::pair<SetPartition, Rational>> per_partition;

        void consider(const SetPartition& p, const Rational& v, bool record) {
            ++count;
            if (record) per_partition.emplace_back(p, v);
            if (!value || v < *value || (v == *value && p < partition)) {
                value = v;
                partition = p;
            }
        }
    };

    const bool record_all = n <= 8;
    auto scan = [&](uint64_t skip_mod, uint64_t skip_rem, Best& best) {
        uint64_t seq = 0;
        for_each_partition(n, [&](const std::vector<std::size_t>& rgs) {
            uint64_t my = seq++;
            if (skip_mod > 1 && my % skip_mod != skip_rem) return true;
            SetPartition p = partition_from_rgs(rgs);
            if (p.block_count() < 2) return true; // Pi'(V) excludes the one-block partition
            best.consider(p, partition_mmi(n, k, p), record_all);
            return true;
        });
    };

    Best best;
    if (num_threads <= 1) {
        scan(1, 0, best);
    } else {
        // deterministic min-reduction: shard by partition sequence number,
        // merge in shard order
        std::vector<Best> partial(num_threads);
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < num_threads; ++w)
            workers.emplace_back([&, w] { scan(num_threads, w, partial[w]); });
        for (auto& t : workers) t.join();
        for (auto& b : partial) {
            best.count += b.count;
            for (auto& pp : b.per_partition) best.per_partition.push_back(std::move(pp));
            if (b.value) {
                --best.count; // consider() recounts
                best.consider(b.partition, *b.value, false);
            }
        }
    }

    // canonical order independent of worker count
    std::sort(best.per_partition.begin(), best.per_partition.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    MmiReport rep{*best.value, q, n, k, best.partition, best.count,
                  std::move(best.per_partition)};
    return rep;
}

} // namespace ska

#endif
