#ifndef SKA_JSON_IO_HPP
#define SKA_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ska/errors.hpp"
#include "ska/protocol.hpp"
#include "ska/rational.hpp"

// All integers cross the JSON boundary as decimal strings: q may approach
// 2^63 and doubles silently corrupt past 2^53.

namespace ska {

using json = nlohmann::ordered_json;

inline std::string int_str(uint64_t v) { return std::to_string(v); }

inline uint64_t parse_u64(const json& j, const std::string& what) {
    if (j.is_number_unsigned()) return j.get<uint64_t>();
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        try {
            std::size_t pos = 0;
            uint64_t v = std::stoull(s, &pos);
            if (pos == s.size()) return v;
        } catch (...) {
        }
    }
    throw invalid_params("expected decimal integer for " + what);
}

inline json params_to_json(const RsParams& p) {
    json j;
    j["q"] = int_str(p.field.modulus());
    j["n"] = int_str(p.n);
    j["k"] = int_str(p.k);
    json alphas = json::array(), coeffs = json::array();
    for (const auto& a : p.alphas) alphas.push_back(int_str(a.value()));
    for (const auto& v : p.coeffs) coeffs.push_back(int_str(v.value()));
    j["alphas"] = alphas;
    j["coeffs"] = coeffs;
    return j;
}

inline RsParams params_from_json(const json& j) {
    uint64_t q = parse_u64(j.at("q"), "params.q");
    std::size_t n = parse_u64(j.at("n"), "params.n");
    std::size_t k = parse_u64(j.at("k"), "params.k");
    if (!j.contains("alphas") && !j.contains("coeffs"))
        return RsParams::plain(q, n, k);
    FieldSpec f(q);
    std::vector<FieldElement> alphas, coeffs;
    for (const auto& a : j.at("alphas")) alphas.emplace_back(parse_u64(a, "alpha"), f);
    for (const auto& v : j.at("coeffs")) coeffs.emplace_back(parse_u64(v, "coeff"), f);
    return RsParams(f, n, k, std::move(alphas), std::move(coeffs));
}

inline json transcript_to_json(const Transcript& tr) {
    json j;
    j["params"] = params_to_json(tr.params);
    j["mode"] = to_string(tr.mode);
    j["symbols_per_terminal"] = int_str(tr.symbols_per_terminal);
    json deliveries = json::array();
    for (const auto& d : tr.masked_deliveries) {
        deliveries.push_back({{"terminal", int_str(d.terminal)},
                              {"index", int_str(d.index)},
                              {"masked_symbol", int_str(d.masked_symbol.value())}});
    }
    j["deliveries"] = deliveries;
    json pub = json::array();
    for (const auto& s : tr.public_symbols)
        pub.push_back({{"index", int_str(s.index)}, {"symbol", int_str(s.symbol.value())}});
    j["public_symbols"] = pub;
    return j;
}

inline Transcript transcript_from_json(const json& j) {
    RsParams params = params_from_json(j.at("params"));
    FieldSpec f = params.field;
    Transcript tr{params, share_mode_from_string(j.at("mode").get<std::string>()),
                  j.contains("symbols_per_terminal")
                      ? parse_u64(j.at("symbols_per_terminal"), "symbols_per_terminal")
                      : 1,
                  {}, {}};
    for (const auto& d : j.at("deliveries")) {
        tr.masked_deliveries.push_back(
            {parse_u64(d.at("terminal"), "terminal"), parse_u64(d.at("index"), "index"),
             FieldElement(parse_u64(d.at("masked_symbol"), "masked_symbol"), f)});
    }
    for (const auto& s : j.at("public_symbols"))
        tr.public_symbols.push_back(
            {parse_u64(s.at("index"), "index"),
             FieldElement(parse_u64(s.at("symbol"), "symbol"), f)});
    return tr;
}

inline json scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["num_terminals"] = int_str(cfg.num_terminals);
    json active = json::array();
    for (std::size_t t : cfg.active_set) active.push_back(int_str(t));
    j["active_set"] = active;
    j["params"] = params_to_json(cfg.params);
    j["mode"] = to_string(cfg.mode);
    j["symbols_per_terminal"] = int_str(cfg.symbols_per_terminal);
    if (cfg.seed) j["seed"] = int_str(*cfg.seed);
    j["deliver_to_helpers"] = cfg.deliver_to_helpers;
    return j;
}

inline ScenarioConfig scenario_from_json(const json& j) {
    RsParams params = params_from_json(j.at("params"));
    std::size_t num_terminals = parse_u64(j.at("num_terminals"), "num_terminals");
    std::vector<std::size_t> active;
    if (j.contains("active_set")) {
        for (const auto& t : j.at("active_set")) active.push_back(parse_u64(t, "active terminal"));
    } else {
        for (std::size_t t = 1; t <= num_terminals; ++t) active.push_back(t);
    }
    ScenarioConfig cfg{num_terminals,
                       std::move(active),
                       params,
                       share_mode_from_string(j.at("mode").get<std::string>()),
                       parse_u64(j.at("symbols_per_terminal"), "symbols_per_terminal"),
                       std::nullopt,
                       true};
    if (j.contains("seed")) cfg.seed = parse_u64(j.at("seed"), "seed");
    if (j.contains("deliver_to_helpers")) cfg.deliver_to_helpers = j.at("deliver_to_helpers").get<bool>();
    cfg.validate();
    return cfg;
}

inline json keyblock_to_json(const KeyBlock& key) {
    json j;
    j["secret"] = int_str(key.secret.value());
    json pads = json::array();
    for (const auto& p : key.pads) pads.push_back(int_str(p.value()));
    j["pads"] = pads;
    return j;
}

inline json rational_to_json(const Rational& r, const std::string& unit) {
    return json{{"num", int_str(static_cast<uint64_t>(r.num < 0 ? -r.num : r.num))},
                {"negative", r.num < 0},
                {"den", int_str(static_cast<uint64_t>(r.den))},
                {"unit", unit}};
}

} // namespace ska

#endif
