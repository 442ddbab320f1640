#ifndef SKA_PROTOCOL_HPP
#define SKA_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ska/errors.hpp"
#include "ska/field.hpp"
#include "ska/rng.hpp"
#include "ska/rs.hpp"

namespace ska {

enum class ShareMode { unique_share, common_share };

inline std::string to_string(ShareMode m) {
    return m == ShareMode::unique_share ? "unique_share" : "common_share";
}

inline ShareMode share_mode_from_string(const std::string& s) {
    if (s == "unique_share") return ShareMode::unique_share;
    if (s == "common_share") return ShareMode::common_share;
    throw invalid_params("unknown mode '" + s + "'");
}

struct ScenarioConfig {
    std::size_t num_terminals;
    std::vector<std::size_t> active_set; // 1-based terminal ids
    RsParams params;
    ShareMode mode;
    std::size_t symbols_per_terminal; // u
    std::optional<uint64_t> seed;
    bool deliver_to_helpers = true;

    std::size_t helper_count() const { return num_terminals - active_set.size(); }

    void validate() const {
        params.validate();
        if (num_terminals == 0)
            throw invalid_params("ScenarioConfig: need at least one terminal");
        if (active_set.empty())
            throw invalid_params("ScenarioConfig: active set must be nonempty");
        for (std::size_t t : active_set)
            if (t < 1 || t > num_terminals)
                throw invalid_params("ScenarioConfig: active terminal id " + std::to_string(t) +
                                     " outside 1.." + std::to_string(num_terminals));
        const std::size_t u = symbols_per_terminal;
        const std::size_t k = params.k;
        if (u < 1) throw invalid_params("ScenarioConfig: symbols_per_terminal must be >= 1");
        if (u >= k)
            throw param_violation("ScenarioConfig: u = " + std::to_string(u) +
                                  " must be < k = " + std::to_string(k));
        if (mode == ShareMode::unique_share) {
            const std::size_t need = num_terminals * u + (k - u);
            if (params.n < need)
                throw param_violation("unique_share requires n >= |V|*u + (k-u) = " +
                                      std::to_string(need) + ", got n = " + std::to_string(params.n));
        } else {
            if (params.n < k)
                throw param_violation("common_share requires n >= k");
        }
    }
};

/// Public delivery e = z + r; the mask r never enters the transcript.
struct MaskedShare {
    std::size_t terminal;
    std::size_t index;
    FieldElement masked_symbol;
};

struct Transcript {
    RsParams params;
    ShareMode mode;
    std::size_t symbols_per_terminal;
    std::vector<MaskedShare> masked_deliveries;
    std::vector<Share> public_symbols;
};

/// Per-terminal masks, dealer-side private state.
struct SharedRandomness {
    // masks[t-1][j] masks the j-th delivery to terminal t (empty for skipped helpers)
    std::vector<std::vector<FieldElement>> masks;
};

struct TerminalOutcome {
    std::size_t terminal;
    bool is_helper;
    std::optional<KeyBlock> recovered;
    std::string failure;
};

struct ProtocolResult {
    KeyBlock dealer_key;
    Transcript transcript;
    std::vector<TerminalOutcome> outcomes;
    bool all_active_agree;
};

struct DeliveryPlan {
    std::vector<std::vector<std::size_t>> positions_per_terminal; // 1-based codeword positions
    std::vector<std::size_t> public_positions;
    std::vector<std::size_t> spare_positions; // undistributed, unbroadcast (redundancy pool)
};

/// Fixed canonical layout: terminal t holds positions (t-1)u+1..tu in
/// unique_share mode (all terminals share 1..u in common_share mode);
/// the k-u public symbols take the highest indices.
inline DeliveryPlan plan_positions(const ScenarioConfig& cfg) {
    cfg.validate();
    const std::size_t u = cfg.symbols_per_terminal;
    const std::size_t k = cfg.params.k;
    const std::size_t n = cfg.params.n;
    DeliveryPlan plan;
    plan.positions_per_terminal.resize(cfg.num_terminals);
    std::vector<bool> used(n + 1, false);
    for (std::size_t t = 1; t <= cfg.num_terminals; ++t) {
        for (std::size_t j = 0; j < u; ++j) {
            std::size_t pos = (cfg.mode == ShareMode::unique_share) ? (t - 1) * u + 1 + j : 1 + j;
            plan.positions_per_terminal[t - 1].push_back(pos);
            used[pos] = true;
        }
    }
    for (std::size_t pos = n - (k - u) + 1; pos <= n; ++pos) {
        plan.public_positions.push_back(pos);
        used[pos] = true;
    }
    for (std::size_t pos = 1; pos <= n; ++pos)
        if (!used[pos]) plan.spare_positions.push_back(pos);
    return plan;
}

inline bool is_active(const ScenarioConfig& cfg, std::size_t terminal) {
    for (std::size_t t : cfg.active_set)
        if (t == terminal) return true;
    return false;
}

/// Deterministic transcript construction from explicit key and mask values.
/// masks[t-1] must match the delivery plan for terminal t; the secrecy oracle
/// drives this directly when enumerating all (key, mask) states.
inline Transcript build_transcript(const ScenarioConfig& cfg, const DeliveryPlan& plan,
                                   const KeyBlock& key, const SharedRandomness& rand,
                                   bool include_public = true) {
    Codeword z = encode(key, cfg.params);
    Transcript tr{cfg.params, cfg.mode, cfg.symbols_per_terminal, {}, {}};
    for (std::size_t t = 1; t <= cfg.num_terminals; ++t) {
        const auto& positions = plan.positions_per_terminal[t - 1];
        const auto& ms = rand.masks[t - 1];
        if (ms.empty()) continue; // helper skipped by configuration
        for (std::size_t j = 0; j < positions.size(); ++j) {
            std::size_t pos = positions[j];
            tr.masked_deliveries.push_back({t, pos, z.symbols[pos - 1] + ms[j]});
        }
    }
    if (include_public)
        for (std::size_t pos : plan.public_positions)
            tr.public_symbols.push_back({pos, z.symbols[pos - 1]});
    return tr;
}

struct DealerState {
    ScenarioConfig cfg;
    DeliveryPlan plan;
    KeyBlock key;
    Codeword codeword;
    SharedRandomness randomness;
    Transcript transcript;
    bool discussed = false;
};

inline KeyBlock sample_key(const RsParams& params, DetRng& rng) {
    KeyBlock key{rng.uniform_element(params.field), {}};
    for (std::size_t i = 1; i < params.k; ++i)
        key.pads.push_back(rng.uniform_element(params.field));
    return key;
}

/// Algorithm step 1-2: sample the key, encode, emit masked deliveries.
inline DealerState deal(const ScenarioConfig& cfg) {
    cfg.validate();
    DetRng rng = cfg.seed ? DetRng(*cfg.seed) : DetRng::from_entropy();
    DealerState st{cfg,
                   plan_positions(cfg),
                   sample_key(cfg.params, rng),
                   Codeword{},
                   SharedRandomness{},
                   Transcript{cfg.params, cfg.mode, cfg.symbols_per_terminal, {}, {}},
                   false};
    st.codeword = encode(st.key, cfg.params);
    st.randomness.masks.resize(cfg.num_terminals);
    for (std::size_t t = 1; t <= cfg.num_terminals; ++t) {
        if (!cfg.deliver_to_helpers && !is_active(cfg, t)) continue;
        for (std::size_t j = 0; j < st.plan.positions_per_terminal[t - 1].size(); ++j)
            st.randomness.masks[t - 1].push_back(rng.uniform_element(cfg.params.field));
    }
    st.transcript = build_transcript(cfg, st.plan, st.key, st.randomness, false);
    return st;
}

/// Broadcast the k-u reserved codeword symbols in the clear.
inline void public_discussion(DealerState& st) {
    if (st.discussed) throw already_discussed("public_discussion ran twice");
    for (std::size_t pos : st.plan.public_positions)
        st.transcript.public_symbols.push_back({pos, st.codeword.symbols[pos - 1]});
    st.discussed = true;
}

/// Terminal-side recovery: unmask private deliveries, join the public
/// symbols, erasure-decode.
inline KeyBlock reconstruct(std::size_t terminal, const std::vector<FieldElement>& masks,
                            const Transcript& tr) {
    std::vector<Share> shares;
    std::size_t mask_idx = 0;
    for (const auto& d : tr.masked_deliveries) {
        if (d.terminal != terminal) continue;
        if (mask_idx >= masks.size())
            throw bad_mask("reconstruct: more deliveries than masks for terminal " +
                           std::to_string(terminal));
        shares.push_back({d.index, d.masked_symbol - masks[mask_idx++]});
    }
    for (const auto& s : tr.public_symbols) shares.push_back(s);
    try {
        return decode(shares, tr.params);
    } catch (const inconsistent_shares& e) {
        throw bad_mask(std::string("reconstruct: ") + e.what());
    }
}

/// Negative-control fixture: broadcast codeword positions 1..k in the clear,
/// which hands the eavesdropper a full decoding set.
inline void leaky_public_discussion(DealerState& st) {
    if (st.discussed) throw already_discussed("public_discussion ran twice");
    for (std::size_t pos = 1; pos <= st.cfg.params.k; ++pos)
        st.transcript.public_symbols.push_back({pos, st.codeword.symbols[pos - 1]});
    st.discussed = true;
}

/// Algorithm end to end, with the all-active agreement assertion.
inline ProtocolResult run_protocol(const ScenarioConfig& cfg) {
    DealerState st = deal(cfg);
    public_discussion(st);
    ProtocolResult result{st.key, st.transcript, {}, true};
    for (std::size_t t = 1; t <= cfg.num_terminals; ++t) {
        TerminalOutcome out{t, !is_active(cfg, t), std::nullopt, ""};
        try {
            out.recovered = reconstruct(t, st.randomness.masks[t - 1], st.transcript);
        } catch (const error& e) {
            out.failure = e.what();
        }
        if (!out.is_helper && (!out.recovered || *out.recovered != st.key))
            result.all_active_agree = false;
        result.outcomes.push_back(std::move(out));
    }
    return result;
}

struct RefreshResult {
    KeyBlock new_key;
    Transcript transcript;
    std::vector<std::size_t> anchor_positions; // where the old material sits
};

inline RefreshResult refresh_key_fixed(const std::vector<FieldElement>& old_material,
                                       const std::vector<FieldElement>& fresh_symbols,
                                       const RsParams& params);

/// Key refreshment: the shared old material fixes the codeword values at
/// positions 1..u, the dealer completes the degree-<k polynomial with fresh
/// uniform values at positions u+1..k and broadcasts those k-u symbols.
/// The old material itself never enters the transcript.
inline RefreshResult refresh_key(const std::vector<FieldElement>& old_material,
                                 const RsParams& params, DetRng& rng) {
    const std::size_t u = old_material.size();
    if (u == 0) throw no_shared_material("refresh_key: no pre-shared material");
    if (u >= params.k)
        throw param_violation("refresh_key: need u < k, got u = " + std::to_string(u));
    std::vector<FieldElement> fresh;
    for (std::size_t i = 0; i < params.k - u; ++i)
        fresh.push_back(rng.uniform_element(params.field));
    return refresh_key_fixed(old_material, fresh, params);
}

/// Deterministic core of refresh_key; the secrecy oracle enumerates the
/// fresh values exhaustively through this entry point.
inline RefreshResult refresh_key_fixed(const std::vector<FieldElement>& old_material,
                                       const std::vector<FieldElement>& fresh_symbols,
                                       const RsParams& params) {
    const std::size_t u = old_material.size();
    const std::size_t k = params.k;
    if (u == 0) throw no_shared_material("refresh_key: no pre-shared material");
    if (u >= k) throw param_violation("refresh_key: need u < k");
    if (fresh_symbols.size() != k - u)
        throw length_mismatch("refresh_key: need exactly k-u fresh symbols");

    std::vector<Share> shares;
    RefreshResult result{{FieldElement(0, params.field), {}}, {params, ShareMode::common_share, u, {}, {}}, {}};
    for (std::size_t i = 0; i < u; ++i) {
        shares.push_back({i + 1, old_material[i]});
        result.anchor_positions.push_back(i + 1);
    }
    for (std::size_t i = 0; i < k - u; ++i) {
        Share s{u + 1 + i, fresh_symbols[i]};
        shares.push_back(s);
        result.transcript.public_symbols.push_back(s);
    }
    result.new_key = decode(shares, params);
    return result;
}

} // namespace ska

#endif
