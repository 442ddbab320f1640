#include <catch2/catch_amalgamated.hpp>

#include "ska/json_io.hpp"
#include "ska/net.hpp"
#include "ska/secrecy.hpp"

using namespace ska;

namespace {

ScenarioConfig noisy_cfg() {
    // 2 terminals, u=1, k=3, n=8: public = {6,7}, spares = {3,4,5,8}... layout:
    // delivered 1,2; public top k-u = 2 positions 7,8; spares 3..6
    return ScenarioConfig{2, {1, 2}, RsParams::plain(11, 8, 3), ShareMode::unique_share, 1, 1, true};
}

} // namespace

TEST_CASE("degenerate channel reproduces the plain protocol") {
    ScenarioConfig cfg = noisy_cfg();
    ChannelModel channel{0.0, false, 0, 99};
    NoisyRunResult r = simulate_noisy_run(cfg, channel);
    CHECK(r.protocol.all_active_agree);
    CHECK(r.recovered_terminals == 2);
    CHECK(r.safety.safe);
    CHECK(r.ledger.adversary_count() == cfg.params.k - 1);

    ProtocolResult plain = run_protocol(cfg);
    CHECK(transcript_to_json(r.protocol.transcript).dump() ==
          transcript_to_json(plain.transcript).dump());
}

TEST_CASE("total erasure fails gracefully") {
    ScenarioConfig cfg = noisy_cfg();
    ChannelModel channel{1.0, false, 0, 5};
    NoisyRunResult r = simulate_noisy_run(cfg, channel);
    CHECK(r.recovered_terminals == 0);
    CHECK_FALSE(r.protocol.all_active_agree);
    for (const auto& o : r.protocol.outcomes) CHECK_FALSE(o.failure.empty());
    CHECK(r.ledger.adversary_count() == 0); // adversary erased too
}

TEST_CASE("redundancy improves recovery under erasures") {
    ScenarioConfig cfg = noisy_cfg();
    std::size_t base = 0, redundant = 0;
    const std::size_t trials = 400;
    ChannelModel ch0{0.3, false, 0, 0};
    ChannelModel ch2{0.3, false, 2, 0};
    auto rows0 = run_trials(cfg, ch0, trials, 1000);
    auto rows2 = run_trials(cfg, ch2, trials, 1000);
    for (std::size_t i = 0; i < trials; ++i) {
        base += rows0[i].recovered_terminals;
        redundant += rows2[i].recovered_terminals;
        // paired seeds: redundancy never hurts any single trial
        CHECK(rows2[i].recovered_terminals >= rows0[i].recovered_terminals);
    }
    CHECK(redundant > base);
}

TEST_CASE("adversary reaching k symbols flags unsafe") {
    // redundancy u on a lossless channel hands the adversary k-u+u = k symbols
    ScenarioConfig cfg = noisy_cfg();
    ChannelModel channel{0.0, true, 1, 3};
    NoisyRunResult r = simulate_noisy_run(cfg, channel);
    CHECK(r.ledger.adversary_count() == cfg.params.k);
    CHECK_FALSE(r.safety.safe);
    CHECK(r.safety.offending_positions.size() == cfg.params.k);
}

TEST_CASE("adversary_sees_erased keeps erased symbols in its ledger") {
    ScenarioConfig cfg = noisy_cfg();
    ChannelModel channel{1.0, true, 0, 5};
    NoisyRunResult r = simulate_noisy_run(cfg, channel);
    CHECK(r.recovered_terminals == 0);
    CHECK(r.ledger.adversary_count() == cfg.params.k - 1);
    CHECK(r.safety.safe);
}

TEST_CASE("deterministic ledgers for identical seeds") {
    ScenarioConfig cfg = noisy_cfg();
    ChannelModel channel{0.4, false, 1, 77};
    NoisyRunResult a = simulate_noisy_run(cfg, channel);
    NoisyRunResult b = simulate_noisy_run(cfg, channel);
    CHECK(a.ledger.adversary_positions == b.ledger.adversary_positions);
    CHECK(a.ledger.terminal_positions == b.ledger.terminal_positions);
    CHECK(a.recovered_terminals == b.recovered_terminals);
    CHECK(transcript_to_json(a.protocol.transcript).dump() ==
          transcript_to_json(b.protocol.transcript).dump());
}

TEST_CASE("redundancy beyond the spare pool is rejected") {
    ScenarioConfig cfg = noisy_cfg();
    ChannelModel channel{0.0, false, 10, 0};
    CHECK_THROWS_AS(simulate_noisy_run(cfg, channel), param_violation);
}

TEST_CASE("adversary view below k stays attack-uniform on small instances") {
    // ties the harness back to the secrecy oracle
    ScenarioConfig cfg{2, {1, 2}, RsParams::plain(5, 4, 2), ShareMode::unique_share, 1, 1, true};
    ChannelModel channel{0.0, false, 0, 21};
    NoisyRunResult r = simulate_noisy_run(cfg, channel);
    REQUIRE(r.safety.safe);
    AttackPosterior posterior = exhaustive_attack(r.protocol.transcript, 1);
    CHECK(posterior.uniform());
}
