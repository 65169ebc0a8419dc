#ifndef QRSIEVE_SIEVE_HPP
#define QRSIEVE_SIEVE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrsieve/criteria.hpp"

namespace qrsieve {

// Runs the test pipeline over a range of n, in parallel chunks, with
// optional checkpointing. The report is a pure function of the
// semantic configuration: worker count and chunk size never change it.

struct SieveConfig {
    std::uint64_t n_from = 2;
    std::uint64_t n_to = 2;
    // Structural tests in pipeline order. Primality is implicit: it is
    // inserted at the front (after a leading Parity entry, which is the
    // only test not needing p prime). Elimination is attributed to the
    // first failing stage.
    std::vector<TestId> tests;
    std::vector<std::uint64_t> cyclo_bases; // empty = default base set
    std::uint64_t cyclo_k_max = kDefaultCyclotomicKMax;

    // Execution knobs; deliberately excluded from the report and the
    // checkpoint identity.
    unsigned workers = 1;           // 0 = hardware concurrency
    std::uint64_t chunk_size = 4096;
    std::string checkpoint_path;    // empty = no checkpointing
    // Test hook: stop (after writing a checkpoint) once this many chunks
    // have been merged. Requires checkpoint_path.
    std::optional<std::uint64_t> interrupt_after_chunks;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CheckpointRejectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised by the interrupt_after_chunks test hook once the checkpoint
// has been written.
struct SieveInterrupted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurvivorRow {
    std::uint64_t n = 0;
    std::uint64_t p = 0;
    OrderGcdInfo gp;
    Factorization fact_n;
    Factorization fact_n_minus_1;
    std::vector<TestVerdict> verdicts; // one per pipeline stage reached
};

struct SieveReport {
    // Semantic config echo.
    std::uint64_t n_from = 0, n_to = 0;
    std::vector<TestId> pipeline; // effective stage order, Primality included
    std::vector<std::uint64_t> cyclo_bases;
    std::uint64_t cyclo_k_max = 0;

    std::uint64_t scanned = 0;
    std::uint64_t non_prime = 0;        // attributed to the Primality stage
    std::uint64_t candidate_primes = 0; // all prime p in range, any attribution
    std::vector<std::pair<TestId, std::uint64_t>> eliminated; // pipeline order
    std::vector<std::pair<TestId, std::uint64_t>> skipped;    // skipped verdict counts
    std::vector<SurvivorRow> survivors; // ascending n

    // G_p statistics over every candidate prime in range.
    std::uint64_t gp_below_sqrt_p = 0; // count with G_p^2 < p

    double elapsed_seconds = 0.0; // excluded from the canonical rendering

    std::uint64_t eliminated_total() const;
};

SieveReport run_sieve(const SieveConfig& config);

// Fraction of candidate primes in range with G_p < sqrt(p).
struct GpStats {
    std::uint64_t candidate_primes = 0;
    std::uint64_t below_sqrt_p = 0;
    bool zero_denominator = false;
    double fraction = 0.0;
};

GpStats gp_statistics(const SieveConfig& config);

// Survivor table for p <= limit_p under {Parity, Primality, DivisorMod8,
// OrderParity, Gcd}, each row annotated with the first cyclotomic
// witness that rules it out (if any).
struct TableRow {
    std::uint64_t n = 0;
    std::uint64_t p = 0;
    OrderGcdInfo gp;
    std::string fact_n_minus_1;
    std::string fact_n;
    std::optional<CyclotomicWitness> witness;
};

std::vector<TableRow> reproduce_table(std::uint64_t limit_p,
                                      const SieveConfig& base = {});

// Interrupts after interrupt_point merged chunks, then resumes from the
// written checkpoint and returns the completed report.
SieveReport checkpoint_roundtrip(SieveConfig config, std::uint64_t interrupt_point);

// Renderings. The JSON form without timing is the canonical report:
// byte-identical for identical semantic configs.
nlohmann::json report_to_json(const SieveReport& report, bool include_timing);
std::string report_to_csv(const SieveReport& report);
std::string report_to_text(const SieveReport& report);
std::string table_to_text(const std::vector<TableRow>& rows);
nlohmann::json table_to_json(const std::vector<TableRow>& rows);

nlohmann::json verdict_to_json(const TestVerdict& v);

// FNV-1a hash of the canonical semantic-config rendering; identifies
// which run a checkpoint belongs to.
std::uint64_t config_hash(const SieveConfig& config);

} // namespace qrsieve

#endif
