#ifndef SKA_SECRECY_HPP
#define SKA_SECRECY_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <thread>
#include <vector>

#include "ska/errors.hpp"
#include "ska/partition.hpp"
#include "ska/protocol.hpp"
#include "ska/rational.hpp"
#include "ska/rs.hpp"

namespace ska {

inline constexpr uint64_t kDefaultJointBudget = 1ull << 24;

/// Exact counts over a finite outcome space. Probabilities are
/// count/total; no floating point enters until presentation.
struct DistributionTable {
    std::map<std::vector<uint64_t>, uint64_t> counts;
    uint64_t total = 0;

    void add(const std::vector<uint64_t>& outcome, uint64_t weight = 1) {
        counts[outcome] += weight;
        total += weight;
    }

    void merge(const DistributionTable& other) {
        for (const auto& [k, c] : other.counts) counts[k] += c;
        total += other.total;
    }
};

struct MiResult {
    bool exact_zero;       // count factorization holds exactly
    double bits;           // numeric value (0.0 when exact_zero)
    uint64_t joint_states; // support size of the joint table
};

namespace detail {

inline KeyBlock keyblock_from_index(uint64_t idx, const RsParams& params) {
    const uint64_t q = params.field.modulus();
    KeyBlock key{FieldElement(idx % q, params.field), {}};
    idx /= q;
    for (std::size_t i = 1; i < params.k; ++i) {
        key.pads.emplace_back(idx % q, params.field);
        idx /= q;
    }
    return key;
}

} // namespace detail

/// Tabulates the exact joint distribution of (secret, transcript) over every
/// KeyBlock and every mask assignment, all equally weighted. The transcript
/// outcome is encoded as the sequence of masked-delivery values followed by
/// public-symbol values (layout is fixed by the delivery plan, so values
/// identify the transcript). With leak_k_symbols the public discussion
/// broadcasts codeword positions 1..k in the clear — the negative control.
inline DistributionTable enumerate_joint(const ScenarioConfig& cfg,
                                         uint64_t budget = kDefaultJointBudget,
                                         unsigned num_threads = 1,
                                         bool leak_k_symbols = false) {
    cfg.validate();
    const DeliveryPlan plan = plan_positions(cfg);
    const uint64_t q = cfg.params.field.modulus();
    std::size_t num_masks = 0;
    for (std::size_t t = 1; t <= cfg.num_terminals; ++t)
        if (cfg.deliver_to_helpers || is_active(cfg, t))
            num_masks += plan.positions_per_terminal[t - 1].size();

    const uint64_t key_states = detail::checked_pow(q, cfg.params.k, budget);
    const uint64_t mask_states = detail::checked_pow(q, num_masks, budget);
    if (key_states > budget || mask_states > budget ||
        key_states > budget / mask_states)
        throw budget_exceeded("enumerate_joint: q^k * q^masks exceeds budget " +
                              std::to_string(budget));

    std::vector<std::size_t> public_positions = plan.public_positions;
    if (leak_k_symbols) {
        public_positions.clear();
        for (std::size_t pos = 1; pos <= cfg.params.k; ++pos) public_positions.push_back(pos);
    }

    auto scan = [&](uint64_t begin, uint64_t end, DistributionTable& table) {
        std::vector<uint64_t> outcome;
        for (uint64_t ki = begin; ki < end; ++ki) {
            KeyBlock key = detail::keyblock_from_index(ki, cfg.params);
            Codeword z = encode(key, cfg.params);
            for (uint64_t mi = 0; mi < mask_states; ++mi) {
                outcome.clear();
                outcome.push_back(key.secret.value());
                uint64_t rem = mi;
                for (std::size_t t = 1; t <= cfg.num_terminals; ++t) {
                    if (!cfg.deliver_to_helpers && !is_active(cfg, t)) continue;
                    for (std::size_t pos : plan.positions_per_terminal[t - 1]) {
                        uint64_t r = rem % q;
                        rem /= q;
                        outcome.push_back((z.symbols[pos - 1].value() + r) % q);
                    }
                }
                for (std::size_t pos : public_positions)
                    outcome.push_back(z.symbols[pos - 1].value());
                table.add(outcome);
            }
        }
    };

    DistributionTable table;
    if (num_threads <= 1) {
        scan(0, key_states, table);
    } else {
        std::vector<DistributionTable> partial(num_threads);
        std::vector<std::thread> workers;
        const uint64_t chunk = (key_states + num_threads - 1) / num_threads;
        for (unsigned w = 0; w < num_threads; ++w) {
            uint64_t b = std::min<uint64_t>(w * chunk, key_states);
            uint64_t e = std::min<uint64_t>(b + chunk, key_states);
            workers.emplace_back([&, b, e, w] { scan(b, e, partial[w]); });
        }
        for (auto& t : workers) t.join();
        for (const auto& p : partial) table.merge(p);
    }
    return table;
}

/// I(S; F) from exact counts. Outcome layout: element 0 is the secret, the
/// rest is the transcript. When the joint counts factor exactly into the
/// marginals the result is flagged exact-zero with no tolerance involved.
inline MiResult mutual_information(const DistributionTable& joint) {
    std::map<uint64_t, uint64_t> marg_s;
    std::map<std::vector<uint64_t>, uint64_t> marg_f;
    for (const auto& [outcome, c] : joint.counts) {
        marg_s[outcome[0]] += c;
        marg_f[std::vector<uint64_t>(outcome.begin() + 1, outcome.end())] += c;
    }
    bool factorizes = true;
    for (const auto& [outcome, c] : joint.counts) {
        std::vector<uint64_t> f(outcome.begin() + 1, outcome.end());
        __int128 lhs = static_cast<__int128>(c) * joint.total;
        __int128 rhs = static_cast<__int128>(marg_s[outcome[0]]) * marg_f[f];
        if (lhs != rhs) { factorizes = false; break; }
    }
    // factorization must also hold at zero-count cells, which the loop above
    // never visits; support-size accounting covers them
    if (factorizes) {
        __int128 cells = static_cast<__int128>(marg_s.size()) * marg_f.size();
        if (cells != static_cast<__int128>(joint.counts.size())) {
            // some (s,f) cell with positive marginals has zero joint count
            factorizes = false;
        }
    }
    if (factorizes)
        return MiResult{true, 0.0, static_cast<uint64_t>(joint.counts.size())};

    double mi = 0.0;
    const double t = static_cast<double>(joint.total);
    for (const auto& [outcome, c] : joint.counts) {
        std::vector<uint64_t> f(outcome.begin() + 1, outcome.end());
        double p = static_cast<double>(c) / t;
        double ps = static_cast<double>(marg_s[outcome[0]]) / t;
        double pf = static_cast<double>(marg_f[f]) / t;
        mi += p * std::log2(p / (ps * pf));
    }
    return MiResult{false, mi, static_cast<uint64_t>(joint.counts.size())};
}

struct SubsetEntropyReport {
    double logq_units;
    bool exact;              // support is q^m with all counts equal
    Rational exact_logq;     // = m when exact
    uint64_t support;
};

namespace detail {

/// Distribution of the symbols at positions S under a uniform KeyBlock.
inline DistributionTable subset_distribution(const RsParams& params,
                                             const std::vector<std::size_t>& positions,
                                             uint64_t budget) {
    const uint64_t q = params.field.modulus();
    const uint64_t key_states = checked_pow(q, params.k, budget);
    if (key_states > budget)
        throw budget_exceeded("subset enumeration: q^k exceeds budget");
    DistributionTable table;
    std::vector<uint64_t> outcome;
    for (uint64_t ki = 0; ki < key_states; ++ki) {
        Codeword z = encode(keyblock_from_index(ki, params), params);
        outcome.clear();
        for (std::size_t pos : positions) outcome.push_back(z.symbols[pos - 1].value());
        table.add(outcome);
    }
    return table;
}

inline double entropy_bits(const DistributionTable& table) {
    double h = 0.0;
    const double t = static_cast<double>(table.total);
    for (const auto& [_, c] : table.counts) {
        double p = static_cast<double>(c) / t;
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace detail

/// Empirical Shannon entropy of the codeword symbols at S, in log-q units.
/// For this code every subset is uniform on a q^m support, so the exact
/// integer exponent is reported alongside the numeric value.
inline SubsetEntropyReport subset_entropy(const RsParams& params,
                                          const std::vector<std::size_t>& positions,
                                          uint64_t budget = kDefaultEnumBudget) {
    for (std::size_t pos : positions)
        if (pos < 1 || pos > params.n)
            throw invalid_params("subset_entropy: position out of range");
    if (positions.empty()) return SubsetEntropyReport{0.0, true, Rational(0), 1};
    DistributionTable table = detail::subset_distribution(params, positions, budget);
    const uint64_t q = params.field.modulus();
    bool uniform = true;
    for (const auto& [_, c] : table.counts)
        if (c != table.counts.begin()->second) { uniform = false; break; }
    uint64_t support = table.counts.size();
    std::size_t exponent = 0;
    uint64_t pow = 1;
    while (pow < support) { pow *= q; ++exponent; }
    bool exact = uniform && pow == support;
    double bits = detail::entropy_bits(table);
    return SubsetEntropyReport{bits / std::log2(static_cast<double>(q)), exact,
                               Rational(static_cast<int64_t>(exponent)), support};
}

struct KlReport {
    double direct_logq;      // KL computed over the tables
    double entropy_diff_logq; // sum_C H(Z_C) - H(Z_V)
};

/// D(P_{Z_V} || prod_C P_{Z_C}) along two routes that must agree to 1e-12.
inline KlReport kl_divergence(const RsParams& params, const SetPartition& partition,
                              uint64_t budget = kDefaultEnumBudget) {
    partition.validate(params.n);
    const uint64_t q = params.field.modulus();
    std::vector<std::size_t> all;
    for (std::size_t pos = 1; pos <= params.n; ++pos) all.push_back(pos);
    DistributionTable full = detail::subset_distribution(params, all, budget);

    std::vector<DistributionTable> block_tables;
    for (const auto& block : partition.blocks)
        block_tables.push_back(detail::subset_distribution(params, block, budget));

    double direct = 0.0;
    const double t = static_cast<double>(full.total);
    for (const auto& [outcome, c] : full.counts) {
        double p = static_cast<double>(c) / t;
        double prod = 1.0;
        for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
            std::vector<uint64_t> sub;
            for (std::size_t pos : partition.blocks[b]) sub.push_back(outcome[pos - 1]);
            prod *= static_cast<double>(block_tables[b].counts.at(sub)) /
                    static_cast<double>(block_tables[b].total);
        }
        direct += p * std::log2(p / prod);
    }

    double hsum = 0.0;
    for (const auto& bt : block_tables) hsum += detail::entropy_bits(bt);
    double hdiff = hsum - detail::entropy_bits(full);

    const double lq = std::log2(static_cast<double>(q));
    KlReport rep{direct / lq, hdiff / lq};
    if (std::abs(rep.direct_logq - rep.entropy_diff_logq) > 1e-12)
        throw property_violation("kl_divergence: direct and entropy-difference routes disagree");
    return rep;
}

struct AttackPosterior {
    std::vector<uint64_t> counts; // per candidate secret 0..q-1
    uint64_t assignments_tried;

    bool uniform() const {
        for (uint64_t c : counts)
            if (c != counts[0]) return false;
        return counts[0] > 0;
    }
    std::size_t spike_count() const {
        std::size_t nz = 0;
        for (uint64_t c : counts)
            if (c != 0) ++nz;
        return nz;
    }
};

/// Brute-force attack on the eavesdropper view: guess the u unseen symbols,
/// decode against the public transcript, and tally the implied secret per
/// consistent guess. A uniform tally is Theorem-1 secrecy in attack form.
inline AttackPosterior exhaustive_attack(const Transcript& tr, std::size_t u,
                                         uint64_t budget = kDefaultEnumBudget) {
    const RsParams& params = tr.params;
    const uint64_t q = params.field.modulus();
    const uint64_t guesses = detail::checked_pow(q, u, budget);
    if (guesses > budget)
        throw budget_exceeded("exhaustive_attack: q^u exceeds budget");

    std::vector<bool> is_public(params.n + 1, false);
    for (const auto& s : tr.public_symbols) is_public[s.index] = true;

    // guess the lowest-index privately delivered positions; fall back to any
    // non-public positions if deliveries are absent from the transcript
    std::vector<std::size_t> unknown;
    for (const auto& d : tr.masked_deliveries) {
        if (unknown.size() == u) break;
        if (is_public[d.index]) continue;
        bool dup = false;
        for (std::size_t x : unknown) dup |= (x == d.index);
        if (!dup) unknown.push_back(d.index);
    }
    for (std::size_t pos = 1; pos <= params.n && unknown.size() < u; ++pos)
        if (!is_public[pos]) {
            bool dup = false;
            for (std::size_t x : unknown) dup |= (x == pos);
            if (!dup) unknown.push_back(pos);
        }
    if (unknown.size() < u)
        throw invalid_params("exhaustive_attack: fewer than u unknown positions exist");

    AttackPosterior posterior{std::vector<uint64_t>(q, 0), guesses};
    for (uint64_t g = 0; g < guesses; ++g) {
        std::vector<Share> shares;
        uint64_t rem = g;
        for (std::size_t pos : unknown) {
            shares.push_back({pos, FieldElement(rem % q, params.field)});
            rem /= q;
        }
        for (const auto& s : tr.public_symbols) shares.push_back(s);
        try {
            KeyBlock key = decode(shares, params);
            posterior.counts[key.secret.value()] += 1;
        } catch (const insufficient_shares&) {
            throw; // misconfigured attack, not an inconsistent guess
        } catch (const inconsistent_shares&) {
            // guess ruled out
        }
    }
    return posterior;
}

struct RefreshSecrecyReport {
    MiResult secret_vs_transcript;
    MiResult old_material_vs_transcript;
};

/// Exhaustive refresh-key leakage check: over every old-material value and
/// every fresh broadcast, the transcript must factor from both the new
/// secret and the old material.
inline RefreshSecrecyReport refresh_secrecy(const RsParams& params, std::size_t u,
                                            uint64_t budget = kDefaultJointBudget) {
    if (u == 0) throw no_shared_material("refresh_secrecy: u must be >= 1");
    if (u >= params.k) throw param_violation("refresh_secrecy: need u < k");
    const uint64_t q = params.field.modulus();
    const uint64_t old_states = detail::checked_pow(q, u, budget);
    const uint64_t fresh_states = detail::checked_pow(q, params.k - u, budget);
    if (old_states > budget || fresh_states > budget || old_states > budget / fresh_states)
        throw budget_exceeded("refresh_secrecy: enumeration exceeds budget");

    DistributionTable secret_joint, old_joint;
    for (uint64_t oi = 0; oi < old_states; ++oi) {
        std::vector<FieldElement> old_material;
        uint64_t rem = oi;
        for (std::size_t i = 0; i < u; ++i) {
            old_material.emplace_back(rem % q, params.field);
            rem /= q;
        }
        for (uint64_t fi = 0; fi < fresh_states; ++fi) {
            std::vector<FieldElement> fresh;
            rem = fi;
            for (std::size_t i = 0; i < params.k - u; ++i) {
                fresh.emplace_back(rem % q, params.field);
                rem /= q;
            }
            RefreshResult r = refresh_key_fixed(old_material, fresh, params);
            std::vector<uint64_t> f;
            for (const auto& s : r.transcript.public_symbols) f.push_back(s.symbol.value());

            std::vector<uint64_t> outcome{r.new_key.secret.value()};
            outcome.insert(outcome.end(), f.begin(), f.end());
            secret_joint.add(outcome);

            // old material collapsed to its index so layout stays "head = hidden value"
            std::vector<uint64_t> outcome2{oi};
            outcome2.insert(outcome2.end(), f.begin(), f.end());
            old_joint.add(outcome2);
        }
    }
    return RefreshSecrecyReport{mutual_information(secret_joint),
                                mutual_information(old_joint)};
}

} // namespace ska

#endif
