#include <catch2/catch_amalgamated.hpp>

#include "ska/json_io.hpp"
#include "ska/rng.hpp"

using namespace ska;

TEST_CASE("integers cross JSON as decimal strings") {
    RsParams params = RsParams::plain(2305843009213693951ull, 4, 2); // 2^61 - 1 is prime
    json j = params_to_json(params);
    CHECK(j["q"].get<std::string>() == "2305843009213693951");
    RsParams back = params_from_json(j);
    CHECK(back.field.modulus() == params.field.modulus());
    CHECK(back.n == params.n);
    CHECK(back.alphas == params.alphas);
}

TEST_CASE("scenario roundtrip") {
    ScenarioConfig cfg{4, {1, 3}, RsParams::plain(13, 9, 3), ShareMode::unique_share, 2, 77, false};
    ScenarioConfig back = scenario_from_json(scenario_to_json(cfg));
    CHECK(back.num_terminals == cfg.num_terminals);
    CHECK(back.active_set == cfg.active_set);
    CHECK(back.mode == cfg.mode);
    CHECK(back.symbols_per_terminal == cfg.symbols_per_terminal);
    CHECK(back.seed == cfg.seed);
    CHECK(back.deliver_to_helpers == cfg.deliver_to_helpers);
    CHECK(scenario_to_json(back).dump() == scenario_to_json(cfg).dump());
}

TEST_CASE("scenario defaults") {
    json j;
    j["num_terminals"] = "2";
    j["params"] = {{"q", "5"}, {"n", "4"}, {"k", "2"}};
    j["mode"] = "unique_share";
    j["symbols_per_terminal"] = "1";
    ScenarioConfig cfg = scenario_from_json(j);
    CHECK(cfg.active_set == std::vector<std::size_t>{1, 2}); // defaults to all
    CHECK_FALSE(cfg.seed.has_value());
    CHECK(cfg.params.alphas[3].value() == 4); // plain defaults
}

TEST_CASE("transcript roundtrip property") {
    DetRng seed_src(31337);
    for (int trial = 0; trial < 25; ++trial) {
        ScenarioConfig cfg{3, {1, 2, 3}, RsParams::plain(13, 8, 3), ShareMode::unique_share, 2,
                           seed_src.next(), true};
        DealerState st = deal(cfg);
        public_discussion(st);
        json j = transcript_to_json(st.transcript);
        Transcript back = transcript_from_json(j);
        CHECK(transcript_to_json(back).dump() == j.dump());
        // the parsed transcript still reconstructs
        CHECK(reconstruct(1, st.randomness.masks[0], back) == st.key);
    }
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(parse_u64(json("12x"), "value"), invalid_params);
    CHECK_THROWS_AS(parse_u64(json(1.5), "value"), invalid_params);
    json j;
    j["num_terminals"] = "2";
    j["params"] = {{"q", "6"}, {"n", "4"}, {"k", "2"}}; // composite q
    j["mode"] = "unique_share";
    j["symbols_per_terminal"] = "1";
    CHECK_THROWS_AS(scenario_from_json(j), invalid_params);
}
