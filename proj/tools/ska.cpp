#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ska/ska.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

int exit_code_for(const ska::error& e) {
    if (dynamic_cast<const ska::budget_exceeded*>(&e)) return 3;
    if (dynamic_cast<const ska::invalid_params*>(&e)) return 1;
    return 2;
}

uint64_t budget_or(uint64_t fallback) {
    if (const char* env = std::getenv("SKA_MDS_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw ska::invalid_params("SKA_MDS_BUDGET is not a decimal integer");
        }
    }
    return fallback;
}

ska::json envelope(const std::string& command, ska::json inputs, ska::json outputs) {
    ska::json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["inputs"] = std::move(inputs);
    j["outputs"] = std::move(outputs);
    return j;
}

void emit(const ska::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        os << j.dump(2) << "\n";
    }
}

ska::ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ska::invalid_params("cannot open scenario file " + path);
    ska::json j = ska::json::parse(is);
    return ska::scenario_from_json(j);
}

int cmd_run(const std::string& scenario_path, std::optional<uint64_t> seed,
            const std::string& mode_override, const std::string& out_path) {
    ska::ScenarioConfig cfg = load_scenario(scenario_path);
    if (seed) cfg.seed = *seed;
    if (!mode_override.empty()) cfg.mode = ska::share_mode_from_string(mode_override);
    cfg.validate();

    ska::ProtocolResult result = ska::run_protocol(cfg);
    ska::json outcomes = ska::json::array();
    for (const auto& o : result.outcomes) {
        ska::json row;
        row["terminal"] = ska::int_str(o.terminal);
        row["is_helper"] = o.is_helper;
        row["recovered"] = o.recovered.has_value();
        if (o.recovered) row["key"] = ska::keyblock_to_json(*o.recovered);
        if (!o.failure.empty()) row["failure"] = o.failure;
        outcomes.push_back(row);
    }
    ska::json outputs;
    outputs["dealer_key"] = ska::keyblock_to_json(result.dealer_key);
    outputs["transcript"] = ska::transcript_to_json(result.transcript);
    outputs["outcomes"] = outcomes;
    outputs["all_active_agree"] = result.all_active_agree;
    emit(envelope("run", ska::scenario_to_json(cfg), outputs), out_path);
    return result.all_active_agree ? 0 : 2;
}

int cmd_verify(const std::string& scenario_path, std::optional<uint64_t> seed,
               uint64_t cap, unsigned threads, bool leaky, const std::string& out_path) {
    ska::ScenarioConfig cfg = load_scenario(scenario_path);
    if (seed) cfg.seed = *seed;
    cfg.validate();

    ska::DistributionTable joint = ska::enumerate_joint(cfg, cap, threads, leaky);
    ska::MiResult mi = ska::mutual_information(joint);

    ska::json entropies = ska::json::array();
    const std::size_t n = cfg.params.n;
    for (std::size_t sz = 1; sz <= n; ++sz) {
        std::vector<std::size_t> prefix;
        for (std::size_t p = 1; p <= sz; ++p) prefix.push_back(p);
        ska::SubsetEntropyReport rep = ska::subset_entropy(cfg.params, prefix, cap);
        entropies.push_back({{"positions", ska::int_str(sz)},
                             {"logq_units", rep.logq_units},
                             {"exact", rep.exact},
                             {"exact_logq", ska::rational_to_json(rep.exact_logq, "log2_q")}});
    }

    // attack on one representative transcript of this scenario
    ska::DealerState st = ska::deal(cfg);
    if (leaky)
        ska::leaky_public_discussion(st);
    else
        ska::public_discussion(st);
    ska::AttackPosterior posterior =
        ska::exhaustive_attack(st.transcript, cfg.symbols_per_terminal, cap);
    ska::json posterior_json = ska::json::array();
    for (uint64_t c : posterior.counts) posterior_json.push_back(ska::int_str(c));

    ska::json outputs;
    outputs["joint_states"] = ska::int_str(joint.total);
    outputs["joint_support"] = ska::int_str(mi.joint_states);
    outputs["mi_bits"] = mi.bits;
    outputs["mi_exact_zero"] = mi.exact_zero;
    outputs["subset_entropies"] = entropies;
    outputs["attack_posterior"] = posterior_json;
    outputs["attack_posterior_uniform"] = posterior.uniform();
    emit(envelope("verify", ska::scenario_to_json(cfg), outputs), out_path);
    return (mi.exact_zero && posterior.uniform()) ? 0 : 2;
}

int cmd_analyze(std::size_t n, std::size_t k, uint64_t q, std::size_t active,
                std::size_t helpers, bool mcgill, bool partitions, bool sweep,
                unsigned threads, const std::string& out_path) {
    if (mcgill) {
        std::ostringstream csv;
        csv << "n,k,closed,bruteforce,agree\n";
        bool all_agree = true;
        for (std::size_t nn = 1; nn <= n; ++nn)
            for (std::size_t kk = 1; kk <= nn; ++kk) {
                int64_t c = ska::mcgill_mmi_closed(nn, kk);
                int64_t b = ska::mcgill_mmi_bruteforce(nn, kk);
                all_agree &= (c == b);
                csv << nn << "," << kk << "," << c << "," << b << "," << (c == b) << "\n";
            }
        if (out_path.empty())
            std::cout << csv.str();
        else
            std::ofstream(out_path) << csv.str();
        return all_agree ? 0 : 2;
    }

    if (sweep) {
        std::ostringstream csv;
        csv << "n,k,q,regime,value_num,value_den,value_bits\n";
        for (std::size_t nn = 2; nn <= n; ++nn) {
            if (nn > q - 1) break;
            for (std::size_t kk = 1; kk <= nn; ++kk) {
                ska::CapacityReport rep = ska::capacity(nn, kk, q);
                csv << nn << "," << kk << "," << q << "," << rep.regime << ","
                    << rep.value_logq.num << "," << rep.value_logq.den << ","
                    << rep.bits() << "\n";
            }
        }
        if (out_path.empty())
            std::cout << csv.str();
        else
            std::ofstream(out_path) << csv.str();
        return 0;
    }

    ska::CapacityReport rep = (helpers > 0) ? ska::helper_bound(n, k, q, active, helpers)
                                            : ska::capacity(n, k, q);
    ska::json outputs;
    outputs["value"] = ska::rational_to_json(rep.value_logq, "log2_q");
    outputs["value_bits"] = rep.bits();
    outputs["regime"] = rep.regime;
    outputs["is_upper_bound"] = rep.is_upper_bound;

    if (partitions) {
        ska::MmiReport mmi = ska::min_partition_mmi(n, k, q, threads);
        if (helpers == 0 && mmi.value_logq != rep.value_logq)
            throw ska::property_violation(
                "min_partition_mmi disagrees with the closed-form capacity");
        ska::json blocks = ska::json::array();
        for (const auto& b : mmi.minimizing_partition.blocks) {
            ska::json blk = ska::json::array();
            for (std::size_t e : b) blk.push_back(ska::int_str(e));
            blocks.push_back(blk);
        }
        outputs["mmi"] = {{"value", ska::rational_to_json(mmi.value_logq, "log2_q")},
                          {"value_bits", mmi.bits()},
                          {"minimizing_partition", blocks},
                          {"partitions_enumerated", ska::int_str(mmi.partitions_enumerated)}};
    }

    ska::json inputs{{"n", ska::int_str(n)}, {"k", ska::int_str(k)}, {"q", ska::int_str(q)},
                     {"active", ska::int_str(active)}, {"helpers", ska::int_str(helpers)}};
    emit(envelope("analyze", inputs, outputs), out_path);
    return 0;
}

int cmd_noisy(const std::string& scenario_path, double erasure, std::size_t redundancy,
              std::size_t trials, uint64_t seed, bool adversary_sees_erased,
              const std::string& out_path) {
    ska::ScenarioConfig cfg = load_scenario(scenario_path);
    ska::ChannelModel channel{erasure, adversary_sees_erased, redundancy, seed};
    channel.validate();
    std::vector<ska::TrialRow> rows = ska::run_trials(cfg, channel, trials, seed);

    std::ostringstream csv;
    csv << "seed,erasure_rate,redundancy,recovered_terminals,adversary_count,safe\n";
    std::size_t recovered_total = 0, safe_total = 0;
    for (const auto& r : rows) {
        csv << r.seed << "," << r.erasure_rate << "," << r.redundancy << ","
            << r.recovered_terminals << "," << r.adversary_count << "," << r.safe << "\n";
        recovered_total += r.recovered_terminals;
        safe_total += r.safe ? 1 : 0;
    }
    csv << "summary," << erasure << "," << redundancy << "," << recovered_total << ",-,"
        << safe_total << "/" << trials << "\n";
    if (out_path.empty())
        std::cout << csv.str();
    else
        std::ofstream(out_path) << csv.str();
    return 0;
}

int cmd_refresh(uint64_t q, std::size_t n, std::size_t k, std::size_t u, uint64_t seed,
                const std::string& out_path, uint64_t cap, bool verify) {
    ska::RsParams params = ska::RsParams::plain(q, n, k);
    ska::DetRng rng(seed);
    std::vector<ska::FieldElement> old_material;
    for (std::size_t i = 0; i < u; ++i)
        old_material.push_back(rng.uniform_element(params.field));
    ska::RefreshResult r = ska::refresh_key(old_material, params, rng);

    ska::json outputs;
    outputs["new_key"] = ska::keyblock_to_json(r.new_key);
    outputs["transcript"] = ska::transcript_to_json(r.transcript);
    ska::json anchors = ska::json::array();
    for (std::size_t pos : r.anchor_positions) anchors.push_back(ska::int_str(pos));
    outputs["anchor_positions"] = anchors;

    bool ok = true;
    if (verify) {
        ska::RefreshSecrecyReport rep = ska::refresh_secrecy(params, u, cap);
        outputs["secret_mi_exact_zero"] = rep.secret_vs_transcript.exact_zero;
        outputs["old_material_mi_exact_zero"] = rep.old_material_vs_transcript.exact_zero;
        ok = rep.secret_vs_transcript.exact_zero && rep.old_material_vs_transcript.exact_zero;
    }

    ska::json inputs{{"q", ska::int_str(q)}, {"n", ska::int_str(n)}, {"k", ska::int_str(k)},
                     {"u", ska::int_str(u)}, {"seed", ska::int_str(seed)}};
    emit(envelope("refresh", inputs, outputs), out_path);
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MDS-code secret key agreement: protocol runs, secrecy verification, "
                 "capacity and MMI analysis, noisy-channel trials"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, mode_override;
    std::optional<uint64_t> seed_opt;
    uint64_t seed = 0;
    unsigned threads = 1;
    bool leaky = false, mcgill = false, partitions = false, sweep = false;
    bool adversary_sees_erased = false, verify_refresh = false;
    std::size_t n = 0, k = 0, u = 1, active = 0, helpers = 0, redundancy = 0, trials = 1;
    uint64_t q = 0;
    double erasure = 0.0;

    auto* run = app.add_subcommand("run", "Execute the key agreement protocol");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--seed", seed_opt, "Override the scenario seed");
    run->add_option("--mode", mode_override, "unique_share or common_share");
    run->add_option("--out", out_path, "Write the report here instead of stdout");

    auto* verify = app.add_subcommand("verify", "Exhaustive secrecy verification");
    verify->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    verify->add_option("--seed", seed_opt, "Override the scenario seed");
    uint64_t cap = 0;
    verify->add_option("--cap", cap, "Enumeration budget override");
    verify->add_option("--threads", threads, "Worker threads for enumeration");
    verify->add_flag("--leaky", leaky, "Run the leaky negative-control variant");
    verify->add_option("--out", out_path, "Write the report here instead of stdout");

    auto* analyze = app.add_subcommand("analyze", "Capacity, bounds, and MMI");
    analyze->add_option("--n", n, "Block length / terminal count")->required();
    analyze->add_option("--k", k, "Code dimension");
    analyze->add_option("--q", q, "Field size");
    analyze->add_option("--active", active, "Active user count");
    analyze->add_option("--helpers", helpers, "Helper count");
    analyze->add_flag("--mcgill", mcgill, "McGill MMI closed form vs brute force up to n");
    analyze->add_flag("--partitions", partitions, "Enumerate partitions and cross-check");
    analyze->add_flag("--sweep", sweep, "CSV capacity sweep over 2..n, all k");
    analyze->add_option("--threads", threads, "Worker threads for partition enumeration");
    analyze->add_option("--out", out_path, "Write the report here instead of stdout");

    auto* noisy = app.add_subcommand("noisy", "Erasure-channel trial batches");
    noisy->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    noisy->add_option("--erasure", erasure, "Per-(symbol,receiver) erasure probability");
    noisy->add_option("--redundancy", redundancy, "Extra distinct positions to broadcast");
    noisy->add_option("--trials", trials, "Number of seeded trials");
    noisy->add_option("--seed", seed, "Base seed");
    noisy->add_flag("--adversary-sees-erased", adversary_sees_erased,
                    "Adversary observes symbols even when receivers erase them");
    noisy->add_option("--out", out_path, "Write the CSV here instead of stdout");

    auto* refresh = app.add_subcommand("refresh", "Key refreshment from shared material");
    refresh->add_option("--q", q, "Field size")->required();
    refresh->add_option("--n", n, "Block length")->required();
    refresh->add_option("--k", k, "Code dimension")->required();
    refresh->add_option("--u", u, "Pre-shared symbols per terminal");
    refresh->add_option("--seed", seed, "Seed");
    refresh->add_flag("--verify", verify_refresh, "Run the exhaustive leakage check");
    refresh->add_option("--out", out_path, "Write the report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, seed_opt, mode_override, out_path);
        if (verify->parsed()) {
            uint64_t budget = cap ? cap : budget_or(ska::kDefaultJointBudget);
            return cmd_verify(scenario_path, seed_opt, budget, threads, leaky, out_path);
        }
        if (analyze->parsed()) {
            if (active == 0) active = n - helpers;
            return cmd_analyze(n, k, q, active, helpers, mcgill, partitions, sweep, threads,
                               out_path);
        }
        if (noisy->parsed())
            return cmd_noisy(scenario_path, erasure, redundancy, trials, seed,
                             adversary_sees_erased, out_path);
        if (refresh->parsed())
            return cmd_refresh(q, n, k, u, seed, out_path,
                               budget_or(ska::kDefaultJointBudget), verify_refresh);
    } catch (const ska::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
