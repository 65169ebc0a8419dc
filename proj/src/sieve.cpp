#include "qrsieve/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "qrsieve/modmath.hpp"

namespace qrsieve {

using json = nlohmann::json;

std::uint64_t SieveReport::eliminated_total() const {
    std::uint64_t t = 0;
    for (const auto& [id, c] : eliminated) t += c;
    return t;
}

namespace {

bool needs_candidate(TestId id) {
    return id != TestId::Parity && id != TestId::Primality;
}

// Effective stage order: Primality is inserted right after a leading
// Parity entry (the only test that does not need p prime), otherwise at
// the front. An explicit Primality entry must already be there.
std::vector<TestId> build_pipeline(const SieveConfig& config) {
    std::vector<TestId> stages = config.tests;
    for (std::size_t i = 0; i < stages.size(); ++i)
        for (std::size_t j = i + 1; j < stages.size(); ++j)
            if (stages[i] == stages[j])
                throw ConfigError("duplicate test in pipeline");
    auto prim = std::find(stages.begin(), stages.end(), TestId::Primality);
    if (prim == stages.end()) {
        std::size_t pos = (!stages.empty() && stages[0] == TestId::Parity) ? 1 : 0;
        stages.insert(stages.begin() + pos, TestId::Primality);
    } else {
        for (auto it = stages.begin(); it != prim; ++it)
            if (needs_candidate(*it))
                throw ConfigError("tests needing a prime p must come after PRIMALITY");
    }
    return stages;
}

void validate(const SieveConfig& config) {
    if (config.n_from < 2 || config.n_from > config.n_to)
        throw ConfigError("need 2 <= n_from <= n_to");
    if (config.n_to > kMaxCandidateN)
        throw ConfigError("n_to exceeds the 10^18 candidate limit");
    if (config.chunk_size < 1) throw ConfigError("chunk_size must be positive");
    if (config.cyclo_k_max < 2) throw ConfigError("cyclotomic k_max must be >= 2");
    if (config.interrupt_after_chunks && config.checkpoint_path.empty())
        throw ConfigError("interrupt hook requires a checkpoint path");
}

std::vector<std::uint64_t> effective_bases(const SieveConfig& config) {
    if (!config.cyclo_bases.empty()) return config.cyclo_bases;
    auto d = default_cyclotomic_bases();
    return {d.begin(), d.end()};
}

struct ChunkResult {
    std::uint64_t scanned = 0;
    std::uint64_t non_prime = 0;
    std::uint64_t candidates = 0;
    std::uint64_t gp_below = 0;
    std::vector<std::uint64_t> eliminated; // per stage
    std::vector<std::uint64_t> skipped;    // per stage
    std::vector<SurvivorRow> survivors;
};

void evaluate_n(std::uint64_t n, const std::vector<TestId>& stages,
                const std::vector<std::uint64_t>& bases, std::uint64_t k_max,
                ChunkResult& out) {
    ++out.scanned;
    std::uint64_t p = candidate_p(n);
    std::optional<Candidate> cand = candidate_from_n(n);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> orders;
    OrderGcdInfo gp;
    if (cand) {
        ++out.candidates;
        orders = quarter_prime_orders(*cand);
        gp = compute_gp(*cand, orders);
        if (static_cast<unsigned __int128>(gp.g) * gp.g < p) ++out.gp_below;
    }

    std::vector<TestVerdict> verdicts;
    verdicts.reserve(stages.size());
    for (std::size_t i = 0; i < stages.size(); ++i) {
        TestId id = stages[i];
        TestVerdict v{id, Outcome::Pass, {}};
        switch (id) {
            case TestId::Parity:
                v = parity_test(n);
                break;
            case TestId::Primality:
                if (!cand) v = {id, Outcome::Fail, NotPrimeWitness{p}};
                break;
            case TestId::DivisorMod8:
                v = divisor_congruence_test(cand->fact_n, cand->fact_n_minus_1);
                break;
            case TestId::OrderParity:
                v = order_parity_test(*cand, orders);
                break;
            case TestId::Gcd:
                v = gcd_test(*cand, gp);
                break;
            case TestId::Cyclotomic:
                v = cyclotomic_test(*cand, gp, bases, k_max);
                break;
            case TestId::Hasse:
                v = hasse_alpha_exists(*cand);
                break;
            case TestId::LcmConjectural:
                v = lcm_conjectural_test(*cand, orders);
                break;
        }
        verdicts.push_back(v);
        if (v.outcome == Outcome::Skipped) ++out.skipped[i];
        if (v.outcome == Outcome::Fail) {
            if (id == TestId::Primality)
                ++out.non_prime;
            else
                ++out.eliminated[i];
            return;
        }
    }
    SurvivorRow row;
    row.n = n;
    row.p = p;
    row.gp = gp;
    row.fact_n = cand ? cand->fact_n : factorize(n);
    row.fact_n_minus_1 = cand ? cand->fact_n_minus_1 : factorize(n - 1);
    row.verdicts = std::move(verdicts);
    out.survivors.push_back(std::move(row));
}

json gp_to_json(const OrderGcdInfo& gp) {
    json j;
    j["g"] = gp.g;
    j["delta"] = gp.delta ? json(*gp.delta) : json(nullptr);
    j["quotient"] = gp.quotient ? json(*gp.quotient) : json(nullptr);
    return j;
}

json factorization_to_json(const Factorization& f) {
    json arr = json::array();
    for (const auto& [q, e] : f.factors) arr.push_back({q, e});
    return arr;
}

Factorization factorization_from_json(const json& arr) {
    Factorization f;
    unsigned __int128 v = 1;
    for (const auto& t : arr) {
        std::uint64_t q = t.at(0).get<std::uint64_t>();
        int e = t.at(1).get<int>();
        f.factors.emplace_back(q, e);
        for (int i = 0; i < e; ++i) v *= q;
    }
    f.value = static_cast<std::uint64_t>(v);
    return f;
}

json survivor_to_json(const SurvivorRow& row) {
    json j;
    j["n"] = row.n;
    j["p"] = row.p;
    j["gp"] = gp_to_json(row.gp);
    j["fact_n"] = format_factorization(row.fact_n);
    j["fact_n_factors"] = factorization_to_json(row.fact_n);
    j["fact_n_minus_1"] = format_factorization(row.fact_n_minus_1);
    j["fact_n_minus_1_factors"] = factorization_to_json(row.fact_n_minus_1);
    json verdicts = json::array();
    for (const TestVerdict& v : row.verdicts) verdicts.push_back(verdict_to_json(v));
    j["verdicts"] = verdicts;
    return j;
}

SurvivorRow survivor_from_json(const json& j) {
    SurvivorRow row;
    row.n = j.at("n").get<std::uint64_t>();
    row.p = j.at("p").get<std::uint64_t>();
    const json& g = j.at("gp");
    row.gp.g = g.at("g").get<std::uint64_t>();
    if (!g.at("delta").is_null()) row.gp.delta = g.at("delta").get<int>();
    if (!g.at("quotient").is_null())
        row.gp.quotient = g.at("quotient").get<std::uint64_t>();
    row.fact_n = factorization_from_json(j.at("fact_n_factors"));
    row.fact_n_minus_1 = factorization_from_json(j.at("fact_n_minus_1_factors"));
    for (const json& vj : j.at("verdicts")) {
        TestVerdict v;
        v.id = *test_from_name(vj.at("test").get<std::string>());
        std::string o = vj.at("outcome").get<std::string>();
        v.outcome = o == "pass"      ? Outcome::Pass
                    : o == "skipped" ? Outcome::Skipped
                                     : Outcome::Fail;
        row.verdicts.push_back(v); // survivors never carry fail witnesses
    }
    return row;
}

json semantic_config_json(const SieveReport& r) {
    json cfg;
    cfg["n_from"] = r.n_from;
    cfg["n_to"] = r.n_to;
    json pipeline = json::array();
    for (TestId id : r.pipeline) pipeline.push_back(std::string(test_name(id)));
    cfg["pipeline"] = pipeline;
    cfg["cyclotomic_bases"] = r.cyclo_bases;
    cfg["cyclotomic_k_max"] = r.cyclo_k_max;
    return cfg;
}

struct Totals {
    ChunkResult accum;
    void merge(const ChunkResult& c) {
        accum.scanned += c.scanned;
        accum.non_prime += c.non_prime;
        accum.candidates += c.candidates;
        accum.gp_below += c.gp_below;
        for (std::size_t i = 0; i < c.eliminated.size(); ++i) {
            accum.eliminated[i] += c.eliminated[i];
            accum.skipped[i] += c.skipped[i];
        }
        accum.survivors.insert(accum.survivors.end(), c.survivors.begin(),
                               c.survivors.end());
    }
};

json checkpoint_json(const SieveConfig& config, const Totals& totals,
                     std::uint64_t completed_chunks) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "sieve_checkpoint";
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    j["config_hash"] = hex;
    j["completed_chunks"] = completed_chunks;
    json partial;
    partial["scanned"] = totals.accum.scanned;
    partial["non_prime"] = totals.accum.non_prime;
    partial["candidate_primes"] = totals.accum.candidates;
    partial["gp_below_sqrt_p"] = totals.accum.gp_below;
    partial["eliminated"] = totals.accum.eliminated;
    partial["skipped"] = totals.accum.skipped;
    json survivors = json::array();
    for (const SurvivorRow& row : totals.accum.survivors)
        survivors.push_back(survivor_to_json(row));
    partial["survivors"] = survivors;
    j["partial"] = partial;
    return j;
}

void atomic_write(const std::string& path, const std::string& data) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open checkpoint file: " + tmp);
        out << data;
        if (!out) throw std::runtime_error("cannot write checkpoint file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename checkpoint file: " + path);
}

} // namespace

std::uint64_t config_hash(const SieveConfig& config) {
    SieveReport shell;
    shell.n_from = config.n_from;
    shell.n_to = config.n_to;
    shell.pipeline = build_pipeline(config);
    shell.cyclo_bases = effective_bases(config);
    shell.cyclo_k_max = config.cyclo_k_max;
    std::string canon = semantic_config_json(shell).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

SieveReport run_sieve(const SieveConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    validate(config);
    std::vector<TestId> stages = build_pipeline(config);
    std::vector<std::uint64_t> bases = effective_bases(config);

    SieveReport report;
    report.n_from = config.n_from;
    report.n_to = config.n_to;
    report.pipeline = stages;
    report.cyclo_bases = bases;
    report.cyclo_k_max = config.cyclo_k_max;

    std::uint64_t range = config.n_to - config.n_from + 1;
    std::uint64_t total_chunks = (range + config.chunk_size - 1) / config.chunk_size;

    Totals totals;
    totals.accum.eliminated.assign(stages.size(), 0);
    totals.accum.skipped.assign(stages.size(), 0);

    std::uint64_t completed = 0;
    if (!config.checkpoint_path.empty()) {
        std::ifstream in(config.checkpoint_path, std::ios::binary);
        if (in) {
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw CheckpointRejectedError(std::string("unreadable checkpoint: ") +
                                              e.what());
            }
            char hex[17];
            std::snprintf(hex, sizeof hex, "%016llx",
                          static_cast<unsigned long long>(config_hash(config)));
            if (j.value("kind", "") != "sieve_checkpoint" ||
                j.value("config_hash", "") != hex)
                throw CheckpointRejectedError(
                    "checkpoint does not match this configuration");
            completed = j.at("completed_chunks").get<std::uint64_t>();
            const json& partial = j.at("partial");
            totals.accum.scanned = partial.at("scanned").get<std::uint64_t>();
            totals.accum.non_prime = partial.at("non_prime").get<std::uint64_t>();
            totals.accum.candidates =
                partial.at("candidate_primes").get<std::uint64_t>();
            totals.accum.gp_below = partial.at("gp_below_sqrt_p").get<std::uint64_t>();
            totals.accum.eliminated =
                partial.at("eliminated").get<std::vector<std::uint64_t>>();
            totals.accum.skipped =
                partial.at("skipped").get<std::vector<std::uint64_t>>();
            if (totals.accum.eliminated.size() != stages.size())
                throw CheckpointRejectedError("checkpoint stage count mismatch");
            for (const json& sj : partial.at("survivors"))
                totals.accum.survivors.push_back(survivor_from_json(sj));
        }
    }

    if (completed < total_chunks) {
        small_primes(); // shared read-only table, built before workers start
        unsigned workers = config.workers != 0
                               ? config.workers
                               : std::max(1u, std::thread::hardware_concurrency());

        std::mutex mtx;
        std::condition_variable cv;
        std::vector<std::unique_ptr<ChunkResult>> results(total_chunks);
        std::atomic<std::uint64_t> next{completed};

        auto work = [&]() {
            for (;;) {
                std::uint64_t i = next.fetch_add(1);
                if (i >= total_chunks) return;
                auto r = std::make_unique<ChunkResult>();
                r->eliminated.assign(stages.size(), 0);
                r->skipped.assign(stages.size(), 0);
                std::uint64_t lo = config.n_from + i * config.chunk_size;
                std::uint64_t hi =
                    std::min(config.n_to, lo + config.chunk_size - 1);
                for (std::uint64_t n = lo; n <= hi; ++n)
                    evaluate_n(n, stages, bases, config.cyclo_k_max, *r);
                std::lock_guard<std::mutex> lock(mtx);
                results[i] = std::move(r);
                cv.notify_all();
            }
        };

        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

        bool interrupted = false;
        for (std::uint64_t i = completed; i < total_chunks; ++i) {
            if (config.interrupt_after_chunks &&
                i - completed >= *config.interrupt_after_chunks) {
                next.store(total_chunks); // drain remaining workers
                interrupted = true;
                break;
            }
            std::unique_ptr<ChunkResult> r;
            {
                std::unique_lock<std::mutex> lock(mtx);
                cv.wait(lock, [&] { return results[i] != nullptr; });
                r = std::move(results[i]);
            }
            totals.merge(*r);
            if (!config.checkpoint_path.empty())
                atomic_write(config.checkpoint_path,
                             checkpoint_json(config, totals, i + 1).dump());
        }
        for (auto& t : pool) t.join();
        if (interrupted)
            throw SieveInterrupted("sieve interrupted after checkpoint");
    }

    std::sort(totals.accum.survivors.begin(), totals.accum.survivors.end(),
              [](const SurvivorRow& a, const SurvivorRow& b) { return a.n < b.n; });

    report.scanned = totals.accum.scanned;
    report.non_prime = totals.accum.non_prime;
    report.candidate_primes = totals.accum.candidates;
    report.gp_below_sqrt_p = totals.accum.gp_below;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (stages[i] != TestId::Primality)
            report.eliminated.emplace_back(stages[i], totals.accum.eliminated[i]);
        if (totals.accum.skipped[i] > 0)
            report.skipped.emplace_back(stages[i], totals.accum.skipped[i]);
    }
    report.survivors = std::move(totals.accum.survivors);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

GpStats gp_statistics(const SieveConfig& config) {
    SieveReport report = run_sieve(config);
    GpStats stats;
    stats.candidate_primes = report.candidate_primes;
    stats.below_sqrt_p = report.gp_below_sqrt_p;
    stats.zero_denominator = report.candidate_primes == 0;
    stats.fraction = stats.zero_denominator
                         ? 0.0
                         : static_cast<double>(stats.below_sqrt_p) /
                               static_cast<double>(stats.candidate_primes);
    return stats;
}

std::vector<TableRow> reproduce_table(std::uint64_t limit_p, const SieveConfig& base) {
    if (limit_p > kFactorLimit)
        throw ConfigError("table limit exceeds 10^18");
    // Largest n with 2n(n-1)+1 <= limit_p.
    std::uint64_t n_max = static_cast<std::uint64_t>(
        (1.0 + std::sqrt(2.0 * static_cast<double>(limit_p) - 1.0)) / 2.0);
    while (n_max > 2 &&
           (n_max > kMaxCandidateN || candidate_p(n_max) > limit_p))
        --n_max;
    while (n_max + 1 <= kMaxCandidateN && candidate_p(n_max + 1) <= limit_p)
        ++n_max;

    SieveConfig config = base;
    config.n_from = 4; // p > 13
    config.n_to = n_max;
    config.tests = {TestId::Parity, TestId::Primality, TestId::DivisorMod8,
                    TestId::OrderParity, TestId::Gcd};
    SieveReport report = run_sieve(config);

    std::vector<std::uint64_t> bases = effective_bases(config);
    std::vector<TableRow> rows;
    for (const SurvivorRow& s : report.survivors) {
        TableRow row;
        row.n = s.n;
        row.p = s.p;
        row.gp = s.gp;
        row.fact_n = format_factorization(s.fact_n);
        row.fact_n_minus_1 = format_factorization(s.fact_n_minus_1);
        Candidate cand = *candidate_from_n(s.n);
        TestVerdict v = cyclotomic_test(cand, s.gp, bases, config.cyclo_k_max);
        if (v.outcome == Outcome::Fail)
            row.witness = std::get<CyclotomicWitness>(v.witness);
        rows.push_back(std::move(row));
    }
    return rows;
}

SieveReport checkpoint_roundtrip(SieveConfig config, std::uint64_t interrupt_point) {
    if (config.checkpoint_path.empty())
        throw ConfigError("checkpoint_roundtrip needs a checkpoint path");
    std::remove(config.checkpoint_path.c_str());
    config.interrupt_after_chunks = interrupt_point;
    try {
        SieveReport r = run_sieve(config);
        // Fewer chunks than the interrupt point: nothing was cut short.
        std::remove(config.checkpoint_path.c_str());
        return r;
    } catch (const SieveInterrupted&) {
    }
    config.interrupt_after_chunks.reset();
    SieveReport r = run_sieve(config); // resumes from the checkpoint
    std::remove(config.checkpoint_path.c_str());
    return r;
}

json verdict_to_json(const TestVerdict& v) {
    json j;
    j["test"] = std::string(test_name(v.id));
    j["outcome"] = std::string(outcome_name(v.outcome));
    j["witness"] = std::visit(
        [](const auto& w) -> json {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, NotPrimeWitness>) {
                return {{"type", "not_prime"}, {"p", w.p}};
            } else if constexpr (std::is_same_v<T, ParityWitness>) {
                return {{"type", "parity"}, {"n_mod_4", w.n_mod_4}};
            } else if constexpr (std::is_same_v<T, PrimeCongruenceWitness>) {
                return {{"type", "prime_congruence"},
                        {"q", w.q},
                        {"q_mod_8", w.q_mod_8},
                        {"side", w.on_even ? "even" : "odd"}};
            } else if constexpr (std::is_same_v<T, EvenOrderWitness>) {
                return {{"type", "even_order"},
                        {"q", w.q},
                        {"order", w.order},
                        {"valuation", w.valuation}};
            } else if constexpr (std::is_same_v<T, GcdImproperWitness>) {
                return {{"type", "gcd_improper"}, {"g", w.g}};
            } else if constexpr (std::is_same_v<T, CyclotomicWitness>) {
                return {{"type", "cyclotomic"},
                        {"base", w.base},
                        {"k", w.k},
                        {"z", w.z},
                        {"phi", w.phi}};
            } else if constexpr (std::is_same_v<T, LcmWitness>) {
                return {{"type", "lcm_not_divisor"}, {"lcm", w.lcm}};
            }
        },
        v.witness);
    return j;
}

json report_to_json(const SieveReport& report, bool include_timing) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "sieve_report";
    j["config"] = semantic_config_json(report);
    json totals;
    totals["scanned"] = report.scanned;
    totals["non_prime"] = report.non_prime;
    totals["candidate_primes"] = report.candidate_primes;
    json elim;
    for (const auto& [id, c] : report.eliminated)
        elim[std::string(test_name(id))] = c;
    totals["eliminated"] = elim;
    totals["eliminated_total"] = report.eliminated_total();
    json skip = json::object();
    for (const auto& [id, c] : report.skipped)
        skip[std::string(test_name(id))] = c;
    totals["skipped"] = skip;
    totals["survivors"] = report.survivors.size();
    j["totals"] = totals;
    json gp;
    gp["below_sqrt_p"] = report.gp_below_sqrt_p;
    gp["zero_denominator"] = report.candidate_primes == 0;
    gp["fraction"] = report.candidate_primes == 0
                         ? 0.0
                         : static_cast<double>(report.gp_below_sqrt_p) /
                               static_cast<double>(report.candidate_primes);
    j["gp_stats"] = gp;
    json survivors = json::array();
    for (const SurvivorRow& row : report.survivors)
        survivors.push_back(survivor_to_json(row));
    j["survivors"] = survivors;
    if (include_timing) j["timing"] = {{"elapsed_seconds", report.elapsed_seconds}};
    return j;
}

std::string report_to_csv(const SieveReport& report) {
    std::string s;
    s += "# scanned=" + std::to_string(report.scanned) +
         " non_prime=" + std::to_string(report.non_prime) +
         " candidate_primes=" + std::to_string(report.candidate_primes) +
         " survivors=" + std::to_string(report.survivors.size()) + "\n";
    for (const auto& [id, c] : report.eliminated)
        s += "# eliminated_" + std::string(test_name(id)) + "=" + std::to_string(c) +
             "\n";
    s += "n,p,g,delta,quotient,fact_n_minus_1,fact_n\n";
    for (const SurvivorRow& row : report.survivors) {
        s += std::to_string(row.n) + "," + std::to_string(row.p) + "," +
             std::to_string(row.gp.g) + ",";
        s += row.gp.delta ? std::to_string(*row.gp.delta) : std::string();
        s += ",";
        s += row.gp.quotient ? std::to_string(*row.gp.quotient) : std::string();
        s += "," + format_factorization(row.fact_n_minus_1) + "," +
             format_factorization(row.fact_n) + "\n";
    }
    return s;
}

std::string report_to_text(const SieveReport& report) {
    std::string s;
    s += "range: n in [" + std::to_string(report.n_from) + ", " +
         std::to_string(report.n_to) + "]\n";
    s += "pipeline:";
    for (TestId id : report.pipeline) s += " " + std::string(test_name(id));
    s += "\n";
    s += "scanned " + std::to_string(report.scanned) + ", non-prime " +
         std::to_string(report.non_prime) + ", candidate primes " +
         std::to_string(report.candidate_primes) + "\n";
    for (const auto& [id, c] : report.eliminated)
        s += "eliminated by " + std::string(test_name(id)) + ": " +
             std::to_string(c) + "\n";
    for (const auto& [id, c] : report.skipped)
        s += "skipped " + std::string(test_name(id)) + ": " + std::to_string(c) +
             "\n";
    s += "G_p < sqrt(p): " + std::to_string(report.gp_below_sqrt_p) + " of " +
         std::to_string(report.candidate_primes) + " candidate primes\n";
    s += "survivors: " + std::to_string(report.survivors.size()) + "\n";
    for (const SurvivorRow& row : report.survivors) {
        s += "  n=" + std::to_string(row.n) + " p=" + std::to_string(row.p) +
             " G_p=" + std::to_string(row.gp.g);
        if (row.gp.delta) s += " delta=" + std::to_string(*row.gp.delta);
        if (row.gp.quotient) s += " quotient=" + std::to_string(*row.gp.quotient);
        s += " n-1=" + format_factorization(row.fact_n_minus_1) +
             " n=" + format_factorization(row.fact_n) + "\n";
    }
    return s;
}

std::string table_to_text(const std::vector<TableRow>& rows) {
    std::string s = "         n  delta  (n-delta)/G_p  n-1, n\n";
    for (const TableRow& row : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%10llu  %5s  %13s  ",
                      static_cast<unsigned long long>(row.n),
                      row.gp.delta ? std::to_string(*row.gp.delta).c_str() : "-",
                      row.gp.quotient ? std::to_string(*row.gp.quotient).c_str()
                                      : "-");
        s += buf;
        s += row.fact_n_minus_1 + ", " + row.fact_n;
        if (row.witness)
            s += "   [ruled out: base " + std::to_string(row.witness->base) +
                 ", k=" + std::to_string(row.witness->k) + "]";
        s += "\n";
    }
    return s;
}

json table_to_json(const std::vector<TableRow>& rows) {
    json arr = json::array();
    for (const TableRow& row : rows) {
        json j;
        j["n"] = row.n;
        j["p"] = row.p;
        j["gp"] = gp_to_json(row.gp);
        j["fact_n_minus_1"] = row.fact_n_minus_1;
        j["fact_n"] = row.fact_n;
        if (row.witness)
            j["cyclotomic_witness"] = {{"base", row.witness->base},
                                       {"k", row.witness->k},
                                       {"z", row.witness->z},
                                       {"phi", row.witness->phi}};
        else
            j["cyclotomic_witness"] = nullptr;
        arr.push_back(j);
    }
    return arr;
}

} // namespace qrsieve
