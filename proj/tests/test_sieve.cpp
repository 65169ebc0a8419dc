#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>

#include "qrsieve/sieve.hpp"

using namespace qrsieve;

namespace {

SieveConfig range_config(std::uint64_t from, std::uint64_t to,
                         std::vector<TestId> tests = {}) {
    SieveConfig c;
    c.n_from = from;
    c.n_to = to;
    c.tests = std::move(tests);
    c.workers = 2;
    return c;
}

std::vector<TestId> default_tests() {
    return {TestId::Parity,      TestId::Primality, TestId::DivisorMod8,
            TestId::OrderParity, TestId::Gcd,       TestId::Cyclotomic};
}

std::set<std::uint64_t> survivor_ns(const SieveReport& r) {
    std::set<std::uint64_t> out;
    for (const SurvivorRow& row : r.survivors) out.insert(row.n);
    return out;
}

std::string canonical(const SieveReport& r) {
    return report_to_json(r, false).dump();
}

} // namespace

TEST_CASE("single-candidate range") {
    SieveReport r = run_sieve(range_config(2, 2, default_tests()));
    CHECK(r.scanned == 1);
    CHECK(r.non_prime == 0);
    CHECK(r.candidate_primes == 1);
    REQUIRE(r.survivors.size() == 1);
    CHECK(r.survivors[0].p == 5);
    CHECK(r.survivors[0].gp.g == 4);
    // p = 5 passes via skipped gcd and cyclotomic stages.
    bool gcd_skipped = false;
    for (const TestVerdict& v : r.survivors[0].verdicts)
        if (v.id == TestId::Gcd) gcd_skipped = v.outcome == Outcome::Skipped;
    CHECK(gcd_skipped);
}

TEST_CASE("accounting identity and default pipeline survivors") {
    SieveReport r = run_sieve(range_config(2, 5000, default_tests()));
    CHECK(r.scanned == 4999);
    CHECK(r.eliminated_total() + r.survivors.size() + r.non_prime == r.scanned);
    CHECK(survivor_ns(r) == std::set<std::uint64_t>{2, 3});
    CHECK(r.pipeline.front() == TestId::Parity);
    CHECK(r.pipeline[1] == TestId::Primality);
}

TEST_CASE("empty test list admits every candidate prime") {
    SieveReport r = run_sieve(range_config(2, 500));
    CHECK(r.survivors.size() == r.candidate_primes);
    CHECK(r.eliminated_total() == 0);
    CHECK(r.pipeline == std::vector<TestId>{TestId::Primality});
}

TEST_CASE("monotonicity: adding a test never adds survivors") {
    auto with_div = survivor_ns(run_sieve(range_config(2, 3000, {TestId::DivisorMod8})));
    auto with_both = survivor_ns(run_sieve(
        range_config(2, 3000, {TestId::DivisorMod8, TestId::Gcd})));
    for (std::uint64_t n : with_both) CHECK(with_div.count(n) == 1);
    CHECK(with_both.size() <= with_div.size());
}

TEST_CASE("pipeline validation") {
    CHECK_THROWS_AS(run_sieve(range_config(5, 2)), ConfigError);
    CHECK_THROWS_AS(run_sieve(range_config(1, 2)), ConfigError);
    CHECK_THROWS_AS(
        run_sieve(range_config(2, 10, {TestId::Gcd, TestId::Gcd})), ConfigError);
    CHECK_THROWS_AS(
        run_sieve(range_config(2, 10, {TestId::Gcd, TestId::Primality})),
        ConfigError);
    SieveConfig c = range_config(2, 10);
    c.chunk_size = 0;
    CHECK_THROWS_AS(run_sieve(c), ConfigError);
    c = range_config(2, 10);
    c.interrupt_after_chunks = 1;
    CHECK_THROWS_AS(run_sieve(c), ConfigError);
    // Parity may precede the implicit primality stage.
    SieveReport r = run_sieve(range_config(2, 10, {TestId::Parity, TestId::Gcd}));
    CHECK(r.pipeline ==
          std::vector<TestId>{TestId::Parity, TestId::Primality, TestId::Gcd});
}

TEST_CASE("per-test attribution goes to the first failing stage") {
    // n = 5 (p = 41): fails parity (5 = 1 mod 4) before anything else.
    SieveReport r = run_sieve(range_config(5, 5, default_tests()));
    CHECK(r.eliminated.front().first == TestId::Parity);
    CHECK(r.eliminated.front().second == 1);
    CHECK(r.candidate_primes == 1); // still counted as a candidate prime
}

TEST_CASE("reports are identical across worker counts and chunk sizes") {
    SieveConfig base = range_config(2, 20000, default_tests());
    SieveReport r1 = run_sieve(base);
    SieveConfig c4 = base;
    c4.workers = 4;
    SieveConfig c8 = base;
    c8.workers = 8;
    SieveConfig small_chunks = base;
    small_chunks.chunk_size = 137;
    CHECK(canonical(run_sieve(c4)) == canonical(r1));
    CHECK(canonical(run_sieve(c8)) == canonical(r1));
    CHECK(canonical(run_sieve(small_chunks)) == canonical(r1));
}

TEST_CASE("checkpoint roundtrip") {
    SieveConfig base = range_config(2, 20000, default_tests());
    base.chunk_size = 1000;
    SieveReport plain = run_sieve(base);

    SieveConfig ck = base;
    ck.checkpoint_path = "test_sieve_ck1.json";
    CHECK(canonical(checkpoint_roundtrip(ck, 0)) == canonical(plain));
    CHECK(canonical(checkpoint_roundtrip(ck, 7)) == canonical(plain));
    // Resume under a different worker count.
    SieveConfig ck2 = base;
    ck2.checkpoint_path = "test_sieve_ck2.json";
    ck2.interrupt_after_chunks = 5;
    try {
        run_sieve(ck2);
        CHECK(false);
    } catch (const SieveInterrupted&) {
    }
    ck2.interrupt_after_chunks.reset();
    ck2.workers = 1;
    CHECK(canonical(run_sieve(ck2)) == canonical(plain));
    std::remove("test_sieve_ck2.json");
}

TEST_CASE("checkpoint with mismatched config is rejected") {
    SieveConfig a = range_config(2, 9000, default_tests());
    a.chunk_size = 500;
    a.checkpoint_path = "test_sieve_ck3.json";
    a.interrupt_after_chunks = 3;
    try {
        run_sieve(a);
        CHECK(false);
    } catch (const SieveInterrupted&) {
    }
    SieveConfig b = a;
    b.interrupt_after_chunks.reset();
    b.n_to = 9500; // different range; the checkpoint must be refused
    CHECK_THROWS_AS(run_sieve(b), CheckpointRejectedError);
    std::remove("test_sieve_ck3.json");
}

TEST_CASE("config hash ignores execution knobs") {
    SieveConfig a = range_config(2, 100, default_tests());
    SieveConfig b = a;
    b.workers = 7;
    b.chunk_size = 999;
    b.checkpoint_path = "x.json";
    CHECK(config_hash(a) == config_hash(b));
    b.n_to = 101;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("gp statistics") {
    GpStats one = gp_statistics(range_config(51, 51));
    CHECK(one.candidate_primes == 1);
    CHECK(one.below_sqrt_p == 1); // 25^2 = 625 < 5101
    CHECK(one.fraction == 1.0);
    CHECK_FALSE(one.zero_denominator);

    GpStats none = gp_statistics(range_config(7, 7)); // 85 is composite
    CHECK(none.candidate_primes == 0);
    CHECK(none.zero_denominator);
    CHECK(none.fraction == 0.0);
}

TEST_CASE("survivor table up to 10^6") {
    std::vector<TableRow> rows = reproduce_table(1'000'000, range_config(2, 2));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 51);
    CHECK(rows[0].gp.delta == 1);
    CHECK(rows[0].gp.quotient == 2);
    CHECK(rows[0].fact_n_minus_1 == "2·5^2");
    CHECK(rows[0].fact_n == "3·17");
    REQUIRE(rows[0].witness.has_value());
    CHECK(rows[0].witness->base == 2);
    CHECK(rows[0].witness->k == 2);
    CHECK(rows[1].n == 650);
    CHECK(rows[1].gp.delta == 0);
    CHECK(rows[1].gp.quotient == 2);
    CHECK(rows[1].fact_n_minus_1 == "11·59");
    CHECK(rows[1].fact_n == "2·5^2·13");
    REQUIRE(rows[1].witness.has_value());
    CHECK(rows[1].witness->base == 2);
    CHECK(rows[1].witness->k == 2);
    std::string text = table_to_text(rows);
    CHECK(text.find("2·5^2, 3·17") != std::string::npos);
}

TEST_CASE("report renderings carry the survivors") {
    SieveReport r = run_sieve(range_config(51, 51, {TestId::Gcd}));
    REQUIRE(r.survivors.size() == 1);
    nlohmann::json j = report_to_json(r, true);
    CHECK(j["totals"]["candidate_primes"] == 1);
    CHECK(j["survivors"][0]["n"] == 51);
    CHECK(j["survivors"][0]["gp"]["g"] == 25);
    CHECK(j.contains("timing"));
    CHECK_FALSE(report_to_json(r, false).contains("timing"));
    std::string csv = report_to_csv(r);
    CHECK(csv.find("51,5101,25,1,2,") != std::string::npos);
    std::string text = report_to_text(r);
    CHECK(text.find("n=51 p=5101 G_p=25") != std::string::npos);
}
