#ifndef SKA_NET_HPP
#define SKA_NET_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "ska/errors.hpp"
#include "ska/protocol.hpp"
#include "ska/rng.hpp"

namespace ska {

/// Broadcast channel with i.i.d. per-(symbol, receiver) erasures.
/// Redundancy adds extra distinct codeword positions to the discussion,
/// drawn from the undistributed pool.
struct ChannelModel {
    double erasure_rate = 0.0;
    bool adversary_sees_erased = false;
    std::size_t redundancy = 0;
    uint64_t seed = 0;

    void validate() const {
        if (erasure_rate < 0.0 || erasure_rate > 1.0)
            throw invalid_params("ChannelModel: erasure_rate must lie in [0,1]");
    }
};

/// What each party accumulated during a run. For the adversary only
/// unmasked codeword symbols count toward reconstruction.
struct KnowledgeLedger {
    std::vector<std::set<std::size_t>> terminal_positions; // private + received public
    std::set<std::size_t> adversary_positions;             // unmasked symbols seen

    std::size_t adversary_count() const { return adversary_positions.size(); }
};

struct SafetyReport {
    bool safe;
    std::size_t adversary_count;
    std::size_t threshold; // k
    std::vector<std::size_t> offending_positions;
};

/// Unsafe iff the adversary's distinct unmasked symbol count reaches k.
inline SafetyReport safety_check(const KnowledgeLedger& ledger, std::size_t k) {
    SafetyReport rep{ledger.adversary_count() < k, ledger.adversary_count(), k, {}};
    if (!rep.safe)
        rep.offending_positions.assign(ledger.adversary_positions.begin(),
                                       ledger.adversary_positions.end());
    return rep;
}

struct NoisyRunResult {
    ProtocolResult protocol;
    KnowledgeLedger ledger;
    SafetyReport safety;
    std::size_t recovered_terminals;
    std::size_t broadcast_symbols;
};

/// Algorithm 1 over an erasure channel. Every discussion symbol is broadcast
/// once; each receiver (and, unless adversary_sees_erased, the adversary)
/// independently erases it with probability erasure_rate. Terminals decode
/// from whatever reached them. Masked deliveries are assumed pre-shared and
/// lossless; they contribute no unmasked symbols to the adversary.
inline NoisyRunResult simulate_noisy_run(const ScenarioConfig& cfg, const ChannelModel& channel) {
    cfg.validate();
    channel.validate();
    DealerState st = deal(cfg);
    const std::size_t k = cfg.params.k;

    std::vector<std::size_t> broadcast_positions = st.plan.public_positions;
    if (channel.redundancy > st.plan.spare_positions.size())
        throw param_violation("simulate_noisy_run: redundancy " + std::to_string(channel.redundancy) +
                              " exceeds spare positions " +
                              std::to_string(st.plan.spare_positions.size()));
    for (std::size_t i = 0; i < channel.redundancy; ++i)
        broadcast_positions.push_back(st.plan.spare_positions[i]);

    // event queue: one delivery event per (symbol, receiver) pair, fixed order
    DetRng channel_rng(channel.seed);
    auto erased = [&]() {
        // 53-bit uniform draw against the rate
        double x = static_cast<double>(channel_rng.next() >> 11) * 0x1.0p-53;
        return x < channel.erasure_rate;
    };

    NoisyRunResult result{
        ProtocolResult{st.key,
                       Transcript{cfg.params, cfg.mode, cfg.symbols_per_terminal, {}, {}},
                       {},
                       true},
        {}, {}, 0, broadcast_positions.size()};
    result.ledger.terminal_positions.resize(cfg.num_terminals);

    std::vector<std::vector<Share>> received(cfg.num_terminals);
    for (std::size_t pos : broadcast_positions) {
        Share share{pos, st.codeword.symbols[pos - 1]};
        for (std::size_t t = 1; t <= cfg.num_terminals; ++t) {
            if (!erased()) {
                received[t - 1].push_back(share);
                result.ledger.terminal_positions[t - 1].insert(pos);
            }
        }
        if (channel.adversary_sees_erased || !erased())
            result.ledger.adversary_positions.insert(pos);
        st.transcript.public_symbols.push_back(share);
    }
    st.discussed = true;
    result.protocol.transcript = st.transcript;

    for (std::size_t t = 1; t <= cfg.num_terminals; ++t) {
        TerminalOutcome out{t, !is_active(cfg, t), std::nullopt, ""};
        std::vector<Share> shares;
        const auto& positions = st.plan.positions_per_terminal[t - 1];
        const auto& masks = st.randomness.masks[t - 1];
        for (std::size_t j = 0; j < masks.size(); ++j) {
            shares.push_back({positions[j],
                              st.codeword.symbols[positions[j] - 1]});
            result.ledger.terminal_positions[t - 1].insert(positions[j]);
        }
        for (const auto& s : received[t - 1]) shares.push_back(s);
        try {
            out.recovered = decode(shares, cfg.params);
            if (*out.recovered == st.key) ++result.recovered_terminals;
        } catch (const error& e) {
            out.failure = e.what();
        }
        if (!out.is_helper && (!out.recovered || *out.recovered != st.key))
            result.protocol.all_active_agree = false;
        result.protocol.outcomes.push_back(std::move(out));
    }

    result.safety = safety_check(result.ledger, k);
    return result;
}

struct TrialRow {
    uint64_t seed;
    double erasure_rate;
    std::size_t redundancy;
    std::size_t recovered_terminals;
    std::size_t adversary_count;
    bool safe;
};

/// Batch of seeded trials; trial i uses channel seed base_seed + i and
/// scenario seed derived the same way, so batches are reproducible.
inline std::vector<TrialRow> run_trials(const ScenarioConfig& cfg, const ChannelModel& channel,
                                        std::size_t trials, uint64_t base_seed) {
    std::vector<TrialRow> rows;
    rows.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        ScenarioConfig c = cfg;
        c.seed = base_seed + i;
        ChannelModel ch = channel;
        ch.seed = base_seed + i;
        NoisyRunResult r = simulate_noisy_run(c, ch);
        rows.push_back({base_seed + i, channel.erasure_rate, channel.redundancy,
                        r.recovered_terminals, r.ledger.adversary_count(), r.safety.safe});
    }
    return rows;
}

} // namespace ska

#endif
