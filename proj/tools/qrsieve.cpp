// Command-line front end: sieve runs over n-ranges, single-candidate
// diagnosis, exhaustive search at small scale, set verification, coset
// scans, order-gcd statistics, and the survivor table.
//
// Exit codes: 0 success, 2 configuration or input error, 3 I/O error,
// 4 check-n on a composite 2n(n-1)+1, 5 p not a candidate prime.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrsieve/criteria.hpp"
#include "qrsieve/factor.hpp"
#include "qrsieve/modmath.hpp"
#include "qrsieve/search.hpp"
#include "qrsieve/sieve.hpp"

using namespace qrsieve;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotPrime = 4;
constexpr int kExitNotCandidate = 5;

void print_error(const char* code, const std::string& message) {
    std::cerr << "error: " << code << ": " << message << "\n";
}

unsigned default_jobs() {
    if (const char* env = std::getenv("QRSIEVE_JOBS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0 && v < 1024)
            return static_cast<unsigned>(v);
        std::cerr << "warning: ignoring invalid QRSIEVE_JOBS value '" << env
                  << "'\n";
    }
    return 0; // 0 = hardware concurrency
}

std::vector<TestId> parse_tests(const std::string& csv) {
    std::vector<TestId> tests;
    std::string token;
    std::stringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        std::string t;
        for (char c : token)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) continue;
        auto id = test_from_name(t);
        if (!id) throw ConfigError("unknown test '" + t + "'");
        tests.push_back(*id);
    }
    return tests;
}

int write_output(const std::string& out_path, const std::string& data) {
    if (out_path.empty()) {
        std::cout << data;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        print_error("IO", "cannot open output file: " + out_path);
        return kExitIo;
    }
    out << data;
    if (!out) {
        print_error("IO", "cannot write output file: " + out_path);
        return kExitIo;
    }
    return kExitOk;
}

std::string render_report(const SieveReport& report, const std::string& format) {
    if (format == "json") return report_to_json(report, true).dump(2) + "\n";
    if (format == "csv") return report_to_csv(report);
    return report_to_text(report);
}

// -------------------------------------------------------------- sieve

struct SieveArgs {
    std::uint64_t n_from = 2, n_to = 2;
    std::string tests;
    std::string bases;
    std::uint64_t k_max = kDefaultCyclotomicKMax;
    unsigned jobs = 0;
    std::uint64_t chunk = 4096;
    std::string checkpoint, format = "json", out;
};

int cmd_sieve(const SieveArgs& args) {
    SieveConfig config;
    config.n_from = args.n_from;
    config.n_to = args.n_to;
    config.workers = args.jobs != 0 ? args.jobs : default_jobs();
    config.chunk_size = args.chunk;
    config.checkpoint_path = args.checkpoint;
    config.cyclo_k_max = args.k_max;
    if (args.tests.empty()) {
        config.tests = {TestId::Parity,      TestId::Primality,
                        TestId::DivisorMod8, TestId::OrderParity,
                        TestId::Gcd,         TestId::Cyclotomic};
    } else {
        config.tests = parse_tests(args.tests);
    }
    if (!args.bases.empty()) {
        std::stringstream ss(args.bases);
        std::string token;
        while (std::getline(ss, token, ','))
            if (!token.empty()) config.cyclo_bases.push_back(std::stoull(token));
    }
    SieveReport report = run_sieve(config);
    return write_output(args.out, render_report(report, args.format));
}

// ------------------------------------------------------------ check-n

int cmd_check_n(std::uint64_t n, bool as_json, bool conjectural) {
    std::uint64_t p = candidate_p(n);
    auto cand = candidate_from_n(n);
    if (!cand) {
        Factorization f = factorize(p);
        if (as_json) {
            json j;
            j["n"] = n;
            j["p"] = p;
            j["prime"] = false;
            j["fact_p"] = format_factorization(f);
            std::cout << j.dump(2) << "\n";
        } else {
            std::printf("n = %llu\np = %llu is not prime: %llu = %s\n",
                        (unsigned long long)n, (unsigned long long)p,
                        (unsigned long long)p, format_factorization(f).c_str());
        }
        print_error("NOT_PRIME", std::to_string(p) + " is composite");
        return kExitNotPrime;
    }

    auto orders = quarter_prime_orders(*cand);
    OrderGcdInfo gp = compute_gp(*cand, orders);
    std::vector<TestVerdict> verdicts;
    verdicts.push_back(parity_test(n));
    verdicts.push_back(divisor_congruence_test(cand->fact_n, cand->fact_n_minus_1));
    verdicts.push_back(order_parity_test(*cand, orders));
    verdicts.push_back(gcd_test(*cand, gp));
    verdicts.push_back(cyclotomic_test(*cand, gp, default_cyclotomic_bases(),
                                       kDefaultCyclotomicKMax));
    verdicts.push_back(hasse_alpha_exists(*cand));
    if (conjectural) verdicts.push_back(lcm_conjectural_test(*cand, orders));

    if (as_json) {
        json j;
        j["n"] = n;
        j["p"] = p;
        j["prime"] = true;
        j["fact_n"] = format_factorization(cand->fact_n);
        j["fact_n_minus_1"] = format_factorization(cand->fact_n_minus_1);
        j["fact_p_minus_1"] = format_factorization(cand->fact_p_minus_1);
        j["g"] = gp.g;
        j["delta"] = gp.delta ? json(*gp.delta) : json(nullptr);
        j["quotient"] = gp.quotient ? json(*gp.quotient) : json(nullptr);
        json orders_json = json::array();
        for (auto& [q, o] : orders) orders_json.push_back({q, o});
        j["quarter_prime_orders"] = orders_json;
        json vj = json::array();
        for (const TestVerdict& v : verdicts) vj.push_back(verdict_to_json(v));
        j["verdicts"] = vj;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }

    std::printf("n = %llu\n", (unsigned long long)n);
    std::printf("p = %llu (prime)\n", (unsigned long long)p);
    std::printf("n-1 = %llu = %s\n", (unsigned long long)(n - 1),
                format_factorization(cand->fact_n_minus_1).c_str());
    std::printf("n   = %llu = %s\n", (unsigned long long)n,
                format_factorization(cand->fact_n).c_str());
    std::printf("p-1 = %llu = %s\n", (unsigned long long)(p - 1),
                format_factorization(cand->fact_p_minus_1).c_str());
    std::printf("orders of primes dividing (p-1)/4:");
    for (auto& [q, o] : orders)
        std::printf(" ord(%llu)=%llu", (unsigned long long)q, (unsigned long long)o);
    std::printf("\n");
    std::printf("G_p = %llu", (unsigned long long)gp.g);
    if (gp.delta) std::printf("  delta = %d", *gp.delta);
    if (gp.quotient)
        std::printf("  (n-delta)/G_p = %llu", (unsigned long long)*gp.quotient);
    std::printf("\n");
    for (const TestVerdict& v : verdicts) {
        std::printf("%-15s %s", std::string(test_name(v.id)).c_str(),
                    std::string(outcome_name(v.outcome)).c_str());
        json w = verdict_to_json(v)["witness"];
        if (!w.is_null()) std::printf("  witness %s", w.dump().c_str());
        std::printf("\n");
    }
    return kExitOk;
}

// ----------------------------------------------------- search / verify

std::optional<std::uint64_t> parse_candidate_p(std::uint64_t p) {
    auto n = candidate_n_from_p(p);
    if (!n || !is_prime(p)) return std::nullopt;
    return n;
}

int cmd_search(std::uint64_t p, const std::string& mode_str, std::uint64_t bound,
               unsigned jobs, bool as_json) {
    auto n = parse_candidate_p(p);
    if (!n) {
        print_error("NOT_CANDIDATE",
                    std::to_string(p) + " is not a prime of the form 2n(n-1)+1");
        return kExitNotCandidate;
    }
    if (p > 100'000)
        std::cerr << "warning: search above p = 10^5 may take a very long time\n";
    SearchMode mode =
        mode_str == "all" ? SearchMode::All : SearchMode::Canonical;
    SearchLimits limits;
    limits.bound = bound;
    limits.workers = jobs != 0 ? jobs : default_jobs();
    std::vector<SubsetFp> sols = exhaustive_search(p, mode, limits);
    if (as_json) {
        json j;
        j["p"] = p;
        j["n"] = *n;
        j["mode"] = mode == SearchMode::All ? "all" : "canonical";
        json arr = json::array();
        for (const SubsetFp& s : sols) arr.push_back(s.elements);
        j["solutions"] = arr;
        j["count"] = sols.size();
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("p = %llu, n = %llu, mode = %s, solutions: %zu\n",
                    (unsigned long long)p, (unsigned long long)*n,
                    mode == SearchMode::All ? "all" : "canonical", sols.size());
        for (const SubsetFp& s : sols) {
            std::printf("{");
            for (std::size_t i = 0; i < s.elements.size(); ++i)
                std::printf("%s%llu", i ? "," : "",
                            (unsigned long long)s.elements[i]);
            std::printf("}\n");
        }
    }
    return kExitOk;
}

std::optional<SubsetFp> parse_set(std::uint64_t p, const std::string& csv) {
    SubsetFp a{p, {}};
    std::string token;
    std::stringstream ss(csv);
    bool any = false;
    while (std::getline(ss, token, ',')) {
        std::string t;
        for (char c : token)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty()) return std::nullopt;
        char* end = nullptr;
        unsigned long long v = std::strtoull(t.c_str(), &end, 10);
        if (!end || *end != '\0') return std::nullopt;
        if (v >= p) {
            std::cerr << "warning: reducing " << v << " mod " << p << " to "
                      << v % p << "\n";
            v %= p;
        }
        a.elements.push_back(v);
        any = true;
    }
    if (!any) return std::nullopt;
    std::sort(a.elements.begin(), a.elements.end());
    if (std::adjacent_find(a.elements.begin(), a.elements.end()) !=
        a.elements.end())
        return std::nullopt; // duplicate residues
    return a;
}

int cmd_verify(std::uint64_t p, const std::string& set_csv, bool as_json) {
    auto n = parse_candidate_p(p);
    if (!n) {
        print_error("NOT_CANDIDATE",
                    std::to_string(p) + " is not a prime of the form 2n(n-1)+1");
        return kExitNotCandidate;
    }
    auto a = parse_set(p, set_csv);
    if (!a) {
        print_error("BAD_SET", "malformed residue set '" + set_csv + "'");
        return kExitConfig;
    }
    bool ok = is_perfect_qr_difference(*a);
    json j;
    j["p"] = p;
    j["set"] = a->elements;
    j["perfect_difference"] = ok;
    if (ok) {
        MultiplierSubgroup m = multiplier_subgroup(*a);
        j["multiplier_subgroup"] = m.members;
        j["multiplier_subgroup_size"] = m.members.size();
        j["multiplier_subgroup_odd"] = m.members.size() % 2 == 1;
        std::uint64_t nu = 2;
        while (legendre(static_cast<std::int64_t>(nu), p) != -1) ++nu;
        SubsetFp d = build_claim_diff_set(*a, nu);
        std::uint64_t nn = a->elements.size();
        DiffSetCertificate cert =
            verify_difference_set(d, nn * nn, nn * (nn + 1) / 2);
        j["difference_set"] = {{"nu", nu},
                               {"v", cert.v},
                               {"k", cert.k},
                               {"lambda", cert.lambda},
                               {"verified", cert.verified},
                               {"set", d.elements}};
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("perfect difference property: %s\n", ok ? "true" : "false");
        if (ok) {
            std::printf("M_A = {");
            const auto& m = j["multiplier_subgroup"];
            for (std::size_t i = 0; i < m.size(); ++i)
                std::printf("%s%llu", i ? "," : "",
                            m[i].get<unsigned long long>());
            std::printf("}  |M_A| = %zu (%s)\n", m.size(),
                        m.size() % 2 == 1 ? "odd" : "even");
            const auto& ds = j["difference_set"];
            std::printf("difference set (v,k,lambda) = (%llu,%llu,%llu) with nu "
                        "= %llu: %s\n",
                        ds["v"].get<unsigned long long>(),
                        ds["k"].get<unsigned long long>(),
                        ds["lambda"].get<unsigned long long>(),
                        ds["nu"].get<unsigned long long>(),
                        ds["verified"].get<bool>() ? "verified" : "NOT verified");
        }
    }
    return kExitOk;
}

int cmd_coset_scan(std::uint64_t p, std::uint64_t bound, bool as_json) {
    auto n = parse_candidate_p(p);
    if (!n) {
        print_error("NOT_CANDIDATE",
                    std::to_string(p) + " is not a prime of the form 2n(n-1)+1");
        return kExitNotCandidate;
    }
    CosetScanReport report = coset_scan(p, bound);
    if (as_json) {
        json j;
        j["p"] = report.p;
        j["n"] = report.n;
        json hits = json::array();
        for (const CosetHit& h : report.hits)
            hits.push_back({{"subgroup_order", h.subgroup_order},
                            {"rep", h.rep},
                            {"with_zero", h.with_zero},
                            {"set", h.set.elements}});
        j["hits"] = hits;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("p = %llu, n = %llu, coset hits: %zu\n",
                    (unsigned long long)report.p, (unsigned long long)report.n,
                    report.hits.size());
        for (const CosetHit& h : report.hits) {
            std::printf("  |H|=%llu g=%llu%s {",
                        (unsigned long long)h.subgroup_order,
                        (unsigned long long)h.rep,
                        h.with_zero ? " u {0}" : "");
            for (std::size_t i = 0; i < h.set.elements.size(); ++i)
                std::printf("%s%llu", i ? "," : "",
                            (unsigned long long)h.set.elements[i]);
            std::printf("}\n");
        }
    }
    return kExitOk;
}

// ------------------------------------------------------- stats / table

int cmd_stats(std::uint64_t n_from, std::uint64_t n_to, unsigned jobs,
              bool as_json) {
    SieveConfig config;
    config.n_from = n_from;
    config.n_to = n_to;
    config.workers = jobs != 0 ? jobs : default_jobs();
    GpStats stats = gp_statistics(config);
    if (as_json) {
        json j;
        j["n_from"] = n_from;
        j["n_to"] = n_to;
        j["candidate_primes"] = stats.candidate_primes;
        j["g_below_sqrt_p"] = stats.below_sqrt_p;
        j["zero_denominator"] = stats.zero_denominator;
        j["fraction"] = stats.fraction;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("candidate primes: %llu\n",
                    (unsigned long long)stats.candidate_primes);
        std::printf("G_p < sqrt(p): %llu (fraction %.6f)%s\n",
                    (unsigned long long)stats.below_sqrt_p, stats.fraction,
                    stats.zero_denominator ? " [no candidates in range]" : "");
    }
    return kExitOk;
}

int cmd_table(std::uint64_t limit_p, unsigned jobs, const std::string& format,
              const std::string& out) {
    SieveConfig base;
    base.workers = jobs != 0 ? jobs : default_jobs();
    std::vector<TableRow> rows = reproduce_table(limit_p, base);
    std::string data = format == "json" ? table_to_json(rows).dump(2) + "\n"
                                        : table_to_text(rows);
    return write_output(out, data);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sieve for primes p = 2n(n-1)+1 admitting a perfect "
                 "quadratic-residue difference set"};
    app.require_subcommand(1);

    SieveArgs sieve_args;
    auto* sieve_cmd = app.add_subcommand(
        "sieve", "run the test pipeline over a range of n");
    sieve_cmd->add_option("--n-from", sieve_args.n_from, "first n")->required();
    sieve_cmd->add_option("--n-to", sieve_args.n_to, "last n")->required();
    sieve_cmd->add_option("--tests", sieve_args.tests,
                          "comma list: parity,primality,div,order,gcd,cyclo,"
                          "hasse,lcm (default: full pipeline)");
    sieve_cmd->add_option("--bases", sieve_args.bases,
                          "cyclotomic probe bases (comma list)");
    sieve_cmd->add_option("--k-max", sieve_args.k_max, "cyclotomic k bound");
    sieve_cmd->add_option("--jobs", sieve_args.jobs,
                          "worker threads (default: QRSIEVE_JOBS or all cores)");
    sieve_cmd->add_option("--chunk", sieve_args.chunk, "chunk size in n");
    sieve_cmd->add_option("--checkpoint", sieve_args.checkpoint,
                          "checkpoint file (resumes if present)");
    sieve_cmd->add_option("--format", sieve_args.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sieve_cmd->add_option("--out", sieve_args.out, "output file (default stdout)");

    std::uint64_t check_n_value = 0;
    bool check_json = false, check_conjectural = false;
    auto* check_cmd =
        app.add_subcommand("check-n", "diagnose a single candidate n");
    check_cmd->add_option("n", check_n_value, "the n to diagnose")->required();
    check_cmd->add_flag("--json", check_json, "JSON output");
    check_cmd->add_flag("--conjectural", check_conjectural,
                        "include the conjectural lcm diagnostic");

    std::uint64_t search_p = 0, search_bound = 10'000;
    std::string search_mode = "canonical";
    unsigned search_jobs = 0;
    bool search_json = false;
    auto* search_cmd = app.add_subcommand(
        "search", "exhaustive search for perfect difference sets");
    search_cmd->add_option("--p", search_p, "candidate prime")->required();
    search_cmd->add_option("--mode", search_mode, "all|canonical")
        ->check(CLI::IsMember({"all", "canonical"}));
    search_cmd->add_option("--bound", search_bound, "largest admitted p");
    search_cmd->add_option("--jobs", search_jobs, "worker threads");
    search_cmd->add_flag("--json", search_json, "JSON output");

    std::uint64_t verify_p = 0;
    std::string verify_set;
    bool verify_json = false;
    auto* verify_cmd =
        app.add_subcommand("verify", "verify a set and report its structure");
    verify_cmd->add_option("--p", verify_p, "candidate prime")->required();
    verify_cmd->add_option("--set", verify_set, "comma-separated residues")
        ->required();
    verify_cmd->add_flag("--json", verify_json, "JSON output");

    std::uint64_t coset_p = 0, coset_bound = 10'000;
    bool coset_json = false;
    auto* coset_cmd = app.add_subcommand(
        "coset-scan", "test all subgroup cosets for the difference property");
    coset_cmd->add_option("--p", coset_p, "candidate prime")->required();
    coset_cmd->add_option("--bound", coset_bound, "largest admitted p");
    coset_cmd->add_flag("--json", coset_json, "JSON output");

    std::uint64_t stats_from = 2, stats_to = 2;
    unsigned stats_jobs = 0;
    bool stats_json = false;
    auto* stats_cmd = app.add_subcommand(
        "stats", "fraction of candidate primes with G_p < sqrt(p)");
    stats_cmd->add_option("--n-from", stats_from, "first n")->required();
    stats_cmd->add_option("--n-to", stats_to, "last n")->required();
    stats_cmd->add_option("--jobs", stats_jobs, "worker threads");
    stats_cmd->add_flag("--json", stats_json, "JSON output");

    std::uint64_t table_limit = 1'000'000'000'000ULL;
    unsigned table_jobs = 0;
    std::string table_format = "text", table_out;
    auto* table_cmd = app.add_subcommand(
        "table", "survivor table with cyclotomic annotations");
    table_cmd->add_option("--limit-p", table_limit, "scan all p up to this");
    table_cmd->add_option("--jobs", table_jobs, "worker threads");
    table_cmd->add_option("--format", table_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    table_cmd->add_option("--out", table_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("CONFIG", e.what());
        return kExitConfig;
    }

    try {
        if (sieve_cmd->parsed()) return cmd_sieve(sieve_args);
        if (check_cmd->parsed())
            return cmd_check_n(check_n_value, check_json, check_conjectural);
        if (search_cmd->parsed())
            return cmd_search(search_p, search_mode, search_bound, search_jobs,
                              search_json);
        if (verify_cmd->parsed())
            return cmd_verify(verify_p, verify_set, verify_json);
        if (coset_cmd->parsed())
            return cmd_coset_scan(coset_p, coset_bound, coset_json);
        if (stats_cmd->parsed())
            return cmd_stats(stats_from, stats_to, stats_jobs, stats_json);
        if (table_cmd->parsed())
            return cmd_table(table_limit, table_jobs, table_format, table_out);
    } catch (const ConfigError& e) {
        print_error("CONFIG", e.what());
        return kExitConfig;
    } catch (const CheckpointRejectedError& e) {
        print_error("CHECKPOINT_REJECTED", e.what());
        return kExitConfig;
    } catch (const BoundExceededError& e) {
        print_error("BOUND_EXCEEDED", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        print_error("CONFIG", e.what());
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        print_error("CONFIG", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        print_error("IO", e.what());
        return kExitIo;
    }
    return kExitOk;
}
