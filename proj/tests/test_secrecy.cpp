#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ska/secrecy.hpp"

using namespace ska;

namespace {

ScenarioConfig small_cfg() {
    return ScenarioConfig{2, {1, 2}, RsParams::plain(5, 4, 2), ShareMode::unique_share, 1, 1, true};
}

} // namespace

TEST_CASE("joint enumeration counts states") {
    DistributionTable joint = enumerate_joint(small_cfg());
    // 5^2 keyblocks x 5^2 masks
    CHECK(joint.total == 625);
}

TEST_CASE("budget enforcement on the joint enumeration") {
    ScenarioConfig big{3, {1, 2, 3}, RsParams::plain(101, 6, 3), ShareMode::unique_share, 1, 1, true};
    CHECK_THROWS_AS(enumerate_joint(big, 1u << 20), budget_exceeded);
}

TEST_CASE("honest transcript carries exactly zero information") {
    MiResult mi = mutual_information(enumerate_joint(small_cfg()));
    CHECK(mi.exact_zero);
    CHECK(mi.bits == 0.0);
}

TEST_CASE("leaky negative control reveals the whole secret") {
    MiResult mi = mutual_information(enumerate_joint(small_cfg(), kDefaultJointBudget, 1, true));
    CHECK_FALSE(mi.exact_zero);
    CHECK_THAT(mi.bits, Catch::Matchers::WithinAbs(std::log2(5.0), 1e-12));
}

TEST_CASE("product distribution has zero mutual information") {
    DistributionTable table;
    for (uint64_t s = 0; s < 5; ++s)
        for (uint64_t f = 0; f < 7; ++f) table.add({s, f});
    MiResult mi = mutual_information(table);
    CHECK(mi.exact_zero);
}

TEST_CASE("fully dependent pair is caught") {
    DistributionTable table;
    for (uint64_t s = 0; s < 5; ++s) table.add({s, s});
    MiResult mi = mutual_information(table);
    CHECK_FALSE(mi.exact_zero);
    CHECK_THAT(mi.bits, Catch::Matchers::WithinAbs(std::log2(5.0), 1e-12));
}

TEST_CASE("subset entropy follows min(|S|,k)") {
    RsParams params = RsParams::plain(5, 4, 2);
    SECTION("|S| = 1") {
        SubsetEntropyReport rep = subset_entropy(params, {1});
        CHECK(rep.exact);
        CHECK(rep.exact_logq == Rational(1));
        CHECK_THAT(rep.logq_units, Catch::Matchers::WithinAbs(1.0, 1e-12));
    }
    SECTION("|S| = 3 saturates at k") {
        SubsetEntropyReport rep = subset_entropy(params, {1, 2, 3});
        CHECK(rep.exact);
        CHECK(rep.exact_logq == Rational(2));
    }
    SECTION("empty set") {
        SubsetEntropyReport rep = subset_entropy(params, {});
        CHECK(rep.exact);
        CHECK(rep.exact_logq == Rational(0));
    }
    SECTION("every subset, q in {5,7}, all n, all k") {
        for (uint64_t q : {5ull, 7ull}) {
            for (std::size_t n = 1; n <= q - 1; ++n) {
                for (std::size_t k = 1; k <= n; ++k) {
                    RsParams p = RsParams::plain(q, n, k);
                    for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
                        std::vector<std::size_t> positions;
                        for (std::size_t j = 0; j < n; ++j)
                            if (mask & (1ull << j)) positions.push_back(j + 1);
                        SubsetEntropyReport rep = subset_entropy(p, positions);
                        REQUIRE(rep.exact);
                        REQUIRE(rep.exact_logq ==
                                Rational(static_cast<int64_t>(std::min(positions.size(), k))));
                    }
                }
            }
        }
    }
}

TEST_CASE("kl divergence: both routes, matroid values") {
    RsParams params = RsParams::plain(5, 4, 2);
    const double lq = std::log2(5.0);
    (void)lq;

    SECTION("singleton partition gives (n-k) in log-q units") {
        KlReport rep = kl_divergence(params, SetPartition::singletons(4));
        CHECK_THAT(rep.direct_logq, Catch::Matchers::WithinAbs(2.0, 1e-9));
        CHECK_THAT(rep.entropy_diff_logq, Catch::Matchers::WithinAbs(2.0, 1e-9));
    }
    SECTION("partition {{1,2},{3},{4}} also gives 2") {
        SetPartition p{{{1, 2}, {3}, {4}}};
        KlReport rep = kl_divergence(params, p);
        CHECK_THAT(rep.direct_logq, Catch::Matchers::WithinAbs(2.0, 1e-9));
    }
    SECTION("k = n is a product distribution: zero for every partition") {
        RsParams full = RsParams::plain(5, 4, 4);
        KlReport rep = kl_divergence(full, SetPartition::singletons(4));
        CHECK_THAT(rep.direct_logq, Catch::Matchers::WithinAbs(0.0, 1e-9));
        SetPartition p{{{1, 3}, {2, 4}}};
        KlReport rep2 = kl_divergence(full, p);
        CHECK_THAT(rep2.direct_logq, Catch::Matchers::WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("exhaustive attack") {
    SECTION("honest transcript, u = 1: uniform posterior") {
        ScenarioConfig cfg = small_cfg();
        DealerState st = deal(cfg);
        public_discussion(st);
        AttackPosterior posterior = exhaustive_attack(st.transcript, 1);
        CHECK(posterior.uniform());
        CHECK(posterior.counts.size() == 5);
        for (uint64_t c : posterior.counts) CHECK(c == 1);
    }
    SECTION("honest transcript, u = 2 (common mode): uniform posterior") {
        ScenarioConfig cfg{2, {1, 2}, RsParams::plain(5, 4, 3), ShareMode::common_share, 2, 9, true};
        DealerState st = deal(cfg);
        public_discussion(st);
        AttackPosterior posterior = exhaustive_attack(st.transcript, 2);
        CHECK(posterior.uniform());
        for (uint64_t c : posterior.counts) CHECK(c == 5);
    }
    SECTION("k public symbols: single spike at the true secret") {
        ScenarioConfig cfg = small_cfg();
        DealerState st = deal(cfg);
        leaky_public_discussion(st);
        AttackPosterior posterior = exhaustive_attack(st.transcript, 1);
        CHECK_FALSE(posterior.uniform());
        CHECK(posterior.spike_count() == 1);
        CHECK(posterior.counts[st.key.secret.value()] > 0);
    }
    SECTION("budget") {
        ScenarioConfig cfg = small_cfg();
        DealerState st = deal(cfg);
        public_discussion(st);
        CHECK_THROWS_AS(exhaustive_attack(st.transcript, 1, 3), budget_exceeded);
    }
}

TEST_CASE("threaded enumeration is deterministic") {
    ScenarioConfig cfg{2, {1, 2}, RsParams::plain(7, 6, 3), ShareMode::unique_share, 1, 1, true};
    DistributionTable one = enumerate_joint(cfg, kDefaultJointBudget, 1);
    DistributionTable four = enumerate_joint(cfg, kDefaultJointBudget, 4);
    CHECK(one.total == four.total);
    CHECK(one.counts == four.counts);
    CHECK(mutual_information(four).exact_zero);
}

TEST_CASE("refresh secrecy at q=5 k=2 u=1") {
    RefreshSecrecyReport rep = refresh_secrecy(RsParams::plain(5, 4, 2), 1);
    CHECK(rep.secret_vs_transcript.exact_zero);
    CHECK(rep.old_material_vs_transcript.exact_zero);
}
